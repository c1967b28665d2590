//! Windowed ages of `G_mu`: members, bounds, and embedding diagnostics.
//!
//! The *window graph* of a stream is `G_p` for the prefix `p` of the given
//! window length, on the labels `-1, .., window-1`. All negatives are
//! relative to that window.
//!
//! Members are enumerated by *block type* rather than by vertex subset. The
//! induced subgraph of `G_p` on a set `S` only depends on how `S` splits
//! into maximal runs of consecutive labels and on the letters at every
//! element of `S` except its minimum. A type is realisable iff greedily
//! placing each block at its leftmost admissible occurrence succeeds, so a
//! depth-first walk over types visits every isomorphism class with far
//! fewer steps than a subset scan.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{canonical_form, CanonicalForm};
use crate::embed::{self, Embedding};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphDoc};
use crate::words::{self, FiniteWord, WordStream};

/// Default cap on block types visited while building a catalog.
pub const DEFAULT_TYPE_BUDGET: u64 = 5_000_000;

/// `max(4 * period, 8 * max_order)` for periodic streams, the whole word for
/// finite ones, and `max(200, 20 * max_order)` otherwise.
pub fn default_window(stream: &WordStream, max_order: usize) -> usize {
    match stream {
        WordStream::Periodic(_) => (4 * stream.period().unwrap_or(1)).max(8 * max_order),
        WordStream::Finite(w) => w.len(),
        _ => 200usize.max(20 * max_order),
    }
}

pub fn window_graph(stream: &WordStream, window: usize) -> Result<Graph> {
    Ok(Graph::from_word(&stream.prefix(window)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Induced subgraph of the window graph, with window labels.
    pub graph: Graph,
    /// The window labels the representative was found on.
    pub witness: Vec<i64>,
}

/// Isomorphism classes of induced subgraphs of a window graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCatalog {
    pub stream: String,
    pub max_order: usize,
    pub window: usize,
    pub classes: BTreeMap<CanonicalForm, CatalogEntry>,
}

impl IsoCatalog {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, key: &CanonicalForm) -> bool {
        self.classes.contains_key(key)
    }

    pub fn contains_graph(&self, g: &Graph) -> Result<bool> {
        Ok(self.contains(&canonical_form(g)?))
    }

    /// Classes grouped by order.
    pub fn by_order(&self) -> BTreeMap<usize, Vec<&CanonicalForm>> {
        let mut out: BTreeMap<usize, Vec<&CanonicalForm>> = BTreeMap::new();
        for key in self.classes.keys() {
            out.entry(key.order()).or_default().push(key);
        }
        out
    }

    /// One line per class: `<order> <key hex> <edges of the canonical graph>`.
    pub fn dump_lines(&self) -> Vec<String> {
        let mut keys: Vec<&CanonicalForm> = self.classes.keys().collect();
        keys.sort_by_key(|k| (k.order(), k.hex()));
        keys.into_iter()
            .map(|k| {
                let edges: Vec<String> = k.to_graph().edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
                format!("{} {} {}", k.order(), k.hex(), edges.join(" ")).trim_end().to_string()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|(k, e)| {
                json!({
                    "order": k.order(),
                    "key": k.hex(),
                    "graph": k.to_graph().to_doc(),
                    "witness": e.witness,
                })
            })
            .collect();
        json!({
            "stream": self.stream,
            "max_order": self.max_order,
            "window": self.window,
            "class_count": self.len(),
            "classes": classes,
        })
    }
}

/// Iso-classes of induced subgraphs with `1..=max_order` vertices of the
/// window graph.
pub fn age_members(stream: &WordStream, max_order: usize, window: usize) -> Result<IsoCatalog> {
    age_members_with_budget(stream, max_order, window, DEFAULT_TYPE_BUDGET)
}

pub fn age_members_with_budget(
    stream: &WordStream,
    max_order: usize,
    window: usize,
    type_budget: u64,
) -> Result<IsoCatalog> {
    if window + 1 < max_order {
        return Err(Error::usage(format!(
            "window graph has {} vertices, fewer than max_order {max_order}",
            window + 1
        )));
    }
    let prefix = stream.prefix(window)?;
    let host = Graph::from_word(&prefix);
    let mut walker = TypeWalker {
        text: prefix.bits(),
        max_order,
        visited: 0,
        budget: type_budget,
        found: Vec::new(),
    };
    walker.walk(&mut vec![Block { start: -1, letters: Vec::new() }])?;
    let entries: Vec<Result<(CanonicalForm, CatalogEntry)>> = walker
        .found
        .into_par_iter()
        .map(|witness| {
            let graph = host.induced(&witness)?;
            Ok((canonical_form(&graph)?, CatalogEntry { graph, witness }))
        })
        .collect();
    let mut classes = BTreeMap::new();
    for e in entries {
        let (key, entry) = e?;
        classes.entry(key).or_insert(entry);
    }
    Ok(IsoCatalog {
        stream: stream.to_string(),
        max_order,
        window,
        classes,
    })
}

/// Brute-force catalog over all vertex subsets of the window graph. Only
/// for small windows; used to cross-check [`age_members`].
pub fn age_members_by_subsets(stream: &WordStream, max_order: usize, window: usize) -> Result<IsoCatalog> {
    let host = window_graph(stream, window)?;
    let n = host.order();
    if n > 30 {
        return Err(Error::Budget {
            what: "window vertices for subset enumeration",
            limit: 30,
        });
    }
    let mut classes = BTreeMap::new();
    for mask in 1u64..(1 << n) {
        let k = mask.count_ones() as usize;
        if k > max_order {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let graph = host.induced_indices(&idx);
        let witness = graph.labels().to_vec();
        classes
            .entry(canonical_form(&graph)?)
            .or_insert(CatalogEntry { graph, witness });
    }
    Ok(IsoCatalog {
        stream: stream.to_string(),
        max_order,
        window,
        classes,
    })
}

struct Block {
    /// Label of the first vertex of the block.
    start: i64,
    /// For the first block, the letters after its first vertex; for later
    /// blocks, the letters of all their vertices.
    letters: Vec<u8>,
}

struct TypeWalker<'a> {
    text: &'a [u8],
    max_order: usize,
    visited: u64,
    budget: u64,
    found: Vec<Vec<i64>>,
}

impl TypeWalker<'_> {
    fn order(blocks: &[Block]) -> usize {
        1 + blocks.iter().map(|b| b.letters.len()).sum::<usize>()
    }

    fn end(blocks: &[Block]) -> i64 {
        let last = blocks.last().expect("at least one block");
        if blocks.len() == 1 {
            last.start + last.letters.len() as i64
        } else {
            last.start + last.letters.len() as i64 - 1
        }
    }

    /// Leftmost `t >= from` with `text[t..t + pat.len()] == pat`.
    fn find(&self, pat: &[u8], from: i64) -> Option<i64> {
        let from = from.max(0) as usize;
        if pat.is_empty() {
            return (from <= self.text.len()).then_some(from as i64);
        }
        if from + pat.len() > self.text.len() {
            return None;
        }
        self.text[from..]
            .windows(pat.len())
            .position(|w| w == pat)
            .map(|p| (from + p) as i64)
    }

    fn witness(blocks: &[Block]) -> Vec<i64> {
        let mut out = Vec::new();
        for (j, b) in blocks.iter().enumerate() {
            let count = if j == 0 { b.letters.len() + 1 } else { b.letters.len() };
            out.extend((0..count as i64).map(|i| b.start + i));
        }
        out
    }

    fn walk(&mut self, blocks: &mut Vec<Block>) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::Budget {
                what: "block types visited for age enumeration",
                limit: self.budget,
            });
        }
        self.found.push(Self::witness(blocks));
        if Self::order(blocks) == self.max_order {
            return Ok(());
        }
        for letter in 0..2u8 {
            // Grow the last block by one letter.
            let j = blocks.len() - 1;
            let lower = if j == 0 { 0 } else { Self::end(&blocks[..j]) + 2 };
            let mut grown = blocks[j].letters.clone();
            grown.push(letter);
            if let Some(t) = self.find(&grown, lower) {
                let old = std::mem::replace(
                    &mut blocks[j],
                    Block {
                        start: if j == 0 { t - 1 } else { t },
                        letters: grown,
                    },
                );
                self.walk(blocks)?;
                blocks[j] = old;
            }
            // Open a new block.
            if let Some(t) = self.find(&[letter], Self::end(blocks) + 2) {
                blocks.push(Block {
                    start: t,
                    letters: vec![letter],
                });
                self.walk(blocks)?;
                blocks.pop();
            }
        }
        Ok(())
    }
}

/// Result of a windowed membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// An embedding into the window graph.
    Yes(Embedding),
    NoWithinWindow,
}

pub fn age_contains(stream: &WordStream, h: &Graph, window: usize) -> Result<(Membership, Graph)> {
    let host = window_graph(stream, window)?;
    let m = match embed::embeds(h, &host)? {
        Some(e) => Membership::Yes(e),
        None => Membership::NoWithinWindow,
    };
    Ok((m, host))
}

/// Graph bounds of a windowed age.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    /// Canonical representatives, labelled `0..order`, sorted by order and key.
    pub bounds: Vec<Graph>,
    pub search_order_max: usize,
    pub window: usize,
    /// `Some(k)` when the catalog was unchanged on doubling the window.
    pub complete_up_to: Option<usize>,
}

impl BoundReport {
    pub fn count_of_order(&self, k: usize) -> usize {
        self.bounds.iter().filter(|g| g.order() == k).count()
    }

    pub fn to_json(&self) -> Value {
        let bounds: Vec<GraphDoc> = self.bounds.iter().map(Graph::to_doc).collect();
        json!({
            "bounds": bounds,
            "search_order_max": self.search_order_max,
            "window": self.window,
            "complete_up_to": match self.complete_up_to {
                Some(k) => json!(k),
                None => json!("unknown"),
            },
        })
    }
}

/// Every graph on at most `max_order` vertices outside the windowed age all
/// of whose one-vertex deletions lie inside it.
pub fn age_bounds(stream: &WordStream, max_order: usize, window: usize) -> Result<BoundReport> {
    let catalog = age_members(stream, max_order, window)?;
    let saturated = saturation_check(stream, max_order, window, 2 * window).unwrap_or(false);
    bounds_of_catalog(&catalog, saturated)
}

/// Bound search against an existing catalog.
pub fn bounds_of_catalog(catalog: &IsoCatalog, saturated: bool) -> Result<BoundReport> {
    let mut bounds: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    if !catalog.contains_graph(&Graph::empty(1))? && catalog.max_order >= 1 {
        bounds.insert(canonical_form(&Graph::empty(1))?, Graph::empty(1));
    }
    let by_order = catalog.by_order();
    for k in 2..=catalog.max_order {
        let Some(smaller) = by_order.get(&(k - 1)) else {
            continue;
        };
        let found: Vec<Result<Vec<(CanonicalForm, Graph)>>> = smaller
            .par_iter()
            .map(|key| {
                let base = key.to_graph();
                let mut out = Vec::new();
                for nbhd in 0u64..(1 << (k - 1)) {
                    let cand = extend_by_vertex(&base, nbhd);
                    let ck = canonical_form(&cand)?;
                    if catalog.contains(&ck) {
                        continue;
                    }
                    let mut all_in = true;
                    for v in 0..k {
                        if !catalog.contains(&canonical_form(&cand.delete_index(v))?) {
                            all_in = false;
                            break;
                        }
                    }
                    if all_in {
                        out.push((ck.clone(), ck.to_graph()));
                    }
                }
                Ok(out)
            })
            .collect();
        for f in found {
            for (k, g) in f? {
                bounds.entry(k).or_insert(g);
            }
        }
    }
    let mut list: Vec<(CanonicalForm, Graph)> = bounds.into_iter().collect();
    list.sort_by(|a, b| a.0.order().cmp(&b.0.order()).then_with(|| a.0.cmp(&b.0)));
    Ok(BoundReport {
        bounds: list.into_iter().map(|(_, g)| g).collect(),
        search_order_max: catalog.max_order,
        window: catalog.window,
        complete_up_to: saturated.then_some(catalog.max_order),
    })
}

/// `base` plus a new last vertex adjacent to the indices set in `nbhd`.
fn extend_by_vertex(base: &Graph, nbhd: u64) -> Graph {
    let k = base.order();
    let mut g = Graph::empty(k + 1);
    for (a, b) in base.edges() {
        g.add_edge(a as usize, b as usize);
    }
    for v in 0..k {
        if nbhd >> v & 1 == 1 {
            g.add_edge(v, k);
        }
    }
    g
}

/// Whether the catalogs at windows `w1 < w2` have the same classes.
pub fn saturation_check(stream: &WordStream, max_order: usize, w1: usize, w2: usize) -> Result<bool> {
    if w1 >= w2 {
        return Err(Error::usage("saturation needs w1 < w2"));
    }
    let a = age_members(stream, max_order, w1)?;
    let b = age_members(stream, max_order, w2)?;
    Ok(a.classes.keys().eq(b.classes.keys()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RigidityVerdict {
    /// Every embedding has the required shape.
    Pass { embeddings: usize },
    /// An embedding breaking the shape; `map` pairs `G_w` labels with window
    /// labels.
    Fail { map: Vec<(i64, i64)>, reason: String },
    /// The hypothesis `|w| > l + 7` does not hold, or `l` is unbounded.
    Vacuous { reason: String },
}

/// Enumerates every embedding `f` of `G_w` into the window graph and checks
/// that `f(-1), f(0) < f(1) < .. < f(n-1)` with `f(1), .., f(n-1)`
/// consecutive, that one of `f(-1), f(0)` is `f(1) - 1`, and that the window
/// letters at `f(2), .., f(n-1)` spell `w_2 .. w_{n-1}`.
pub fn embedding_rigidity_check(
    stream: &WordStream,
    w: &FiniteWord,
    window: usize,
    node_limit: u64,
) -> Result<RigidityVerdict> {
    let Some(l) = stream.run_bound(window)? else {
        return Ok(RigidityVerdict::Vacuous {
            reason: "runs of one letter are unbounded".into(),
        });
    };
    let n = w.len();
    if n <= l + 7 {
        return Ok(RigidityVerdict::Vacuous {
            reason: format!("|w| = {n} <= l + 7 = {}", l + 7),
        });
    }
    let prefix = stream.prefix(window)?;
    let host = Graph::from_word(&prefix);
    let pattern = Graph::from_word(w);
    let all = embed::all_embeddings_parallel(&pattern, &host, node_limit)?;
    for e in &all {
        let f: Vec<i64> = e.image.iter().map(|&g| host.label(g)).collect();
        // Pattern index x holds label x - 1.
        let at = |label: i64| f[(label + 1) as usize];
        let mut reason = None;
        if at(-1) >= at(1) || at(0) >= at(1) {
            reason = Some("f(-1) or f(0) is not below f(1)".to_string());
        } else if (2..n as i64).any(|i| at(i) != at(i - 1) + 1) {
            reason = Some("f(1), .., f(n-1) is not an increasing interval".to_string());
        } else if at(-1) != at(1) - 1 && at(0) != at(1) - 1 {
            reason = Some("neither f(-1) nor f(0) is f(1) - 1".to_string());
        } else if let Some(i) = (2..n).find(|&i| prefix.letter(at(i as i64) as usize) != w.letter(i)) {
            reason = Some(format!("window letter at f({i}) differs from w_{i}"));
        }
        if let Some(reason) = reason {
            return Ok(RigidityVerdict::Fail {
                map: e.label_pairs(&pattern, &host),
                reason,
            });
        }
    }
    Ok(RigidityVerdict::Pass { embeddings: all.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessityCase {
    /// The padded word `b^4 w`.
    pub padded: FiniteWord,
    pub embeds: bool,
    /// The word `b w`.
    pub factor: FiniteWord,
    pub factor_in_window: bool,
    /// `!embeds || factor_in_window`.
    pub holds: bool,
}

/// For `b` in `{1, 0}`: if `G_{b^4 w}` embeds into the window graph then
/// `b w` is a factor of the window.
pub fn prefix_embedding_necessity_check(
    stream: &WordStream,
    w: &FiniteWord,
    window: usize,
) -> Result<Vec<NecessityCase>> {
    let prefix = stream.prefix(window)?;
    let host = Graph::from_word(&prefix);
    let mut out = Vec::new();
    for b in [1u8, 0] {
        let padded = FiniteWord::constant(b, 4).concat(w);
        let factor = FiniteWord::constant(b, 1).concat(w);
        let embeds = embed::embeds(&Graph::from_word(&padded), &host)?.is_some();
        let factor_in_window = factor.is_factor_of(&prefix);
        out.push(NecessityCase {
            padded,
            embeds,
            factor,
            factor_in_window,
            holds: !embeds || factor_in_window,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub bound: FiniteWord,
    /// `w_0 w`.
    pub extended: FiniteWord,
    pub graph: GraphDoc,
    pub embeds_in_window: bool,
    /// Per deleted label of `G_{w_0 w}`, whether the deletion embeds.
    pub deletions_embed: Vec<(i64, bool)>,
    pub verified: bool,
}

/// Builds `G_{w_0 w}` from a word bound `w` and checks it is a bound of the
/// windowed age: it does not embed, and every one-vertex deletion does.
pub fn bound_from_word_bound(stream: &WordStream, w: &FiniteWord, window: usize) -> Result<TransferReport> {
    let l = stream.run_bound(window)?.ok_or(Error::Precondition {
        clause: "l(mu) is finite",
        detail: format!("{stream} has unbounded runs"),
    })?;
    let n = w.len();
    if n <= l + 7 {
        return Err(Error::Precondition {
            clause: "|w| > l(mu) + 7",
            detail: format!("|w| = {n}, l(mu) = {l}"),
        });
    }
    let prefix = stream.prefix(window)?;
    let head = w.slice(0..n - 1);
    let tail = w.slice(1..n);
    if w.is_factor_of(&prefix) || !head.is_factor_of(&prefix) || !tail.is_factor_of(&prefix) {
        return Err(Error::Precondition {
            clause: "w is a word bound",
            detail: format!("{w} is not a bound of the factors of the window"),
        });
    }
    let w0 = (0..2u8)
        .find(|&b| FiniteWord::constant(b, 1).concat(&head).is_factor_of(&prefix))
        .ok_or(Error::Precondition {
            clause: "some w_0 makes w_0 w_1 .. w_{n-1} a factor",
            detail: format!("neither 0{head} nor 1{head} occurs in the window"),
        })?;
    let extended = FiniteWord::constant(w0, 1).concat(w);
    let graph = Graph::from_word(&extended);
    let host = Graph::from_word(&prefix);
    let embeds_in_window = embed::embeds(&graph, &host)?.is_some();
    let deletions: Vec<Result<(i64, bool)>> = (0..graph.order())
        .into_par_iter()
        .map(|v| Ok((graph.label(v), embed::embeds(&graph.delete_index(v), &host)?.is_some())))
        .collect();
    let deletions_embed = deletions.into_iter().collect::<Result<Vec<_>>>()?;
    let verified = !embeds_in_window && deletions_embed.iter().all(|&(_, e)| e);
    Ok(TransferReport {
        bound: w.clone(),
        extended,
        graph: graph.to_doc(),
        embeds_in_window,
        deletions_embed,
        verified,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JonssonReport {
    /// `(n, number of length-n factors)` for `n = 1..=max_height`.
    pub levels: Vec<(usize, usize)>,
    /// `(n, least m)` such that every length-m window holds every length-n
    /// factor; `None` when no `m` within the window works.
    pub witnesses: Vec<(usize, Option<usize>)>,
}

pub fn jonsson_levels(stream: &WordStream, max_height: usize, window: usize) -> Result<JonssonReport> {
    if window < max_height {
        return Err(Error::usage("window is shorter than max_height"));
    }
    let prefix = stream.prefix(window)?;
    let mut levels = Vec::new();
    let mut witnesses = Vec::new();
    for n in 1..=max_height {
        levels.push((n, words::factors(&prefix, n)?.len()));
        witnesses.push((n, words::recurrence_in_prefix(&prefix, n)));
    }
    Ok(JonssonReport { levels, witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum InclusionVerdict {
    /// Every factor of the first stream up to `max_len` is a factor of the
    /// second.
    Included,
    /// `G_{v u}` lies in the first windowed age but not in the second.
    Separated {
        missing_factor: FiniteWord,
        padding: FiniteWord,
        witness: GraphDoc,
        /// Window labels of the witness inside the first window graph.
        positions: Vec<i64>,
    },
    /// A missing factor exists but no prime separating witness was found.
    Unknown { missing_factor: FiniteWord },
}

/// Longest padding `v` tried by [`factor_inclusion_check`].
pub const MAX_PADDING: usize = 16;

/// If some factor `u` of `s1` is missing from `s2`, looks for a padding `v`
/// with `v u` a factor of `s1`, `G_{v u}` prime, and `G_{v u}` absent from
/// the windowed age of `G_{s2}`.
pub fn factor_inclusion_check(
    s1: &WordStream,
    s2: &WordStream,
    max_len: usize,
    window: usize,
) -> Result<InclusionVerdict> {
    let f1 = words::factor_set(s1, max_len, window)?;
    let f2 = words::factor_set(s2, max_len, window)?;
    let Some(u) = f1.iter().find(|x| !f2.contains(x)).cloned() else {
        return Ok(InclusionVerdict::Included);
    };
    let p1 = s1.prefix(window)?;
    let host2 = window_graph(s2, window)?;
    let occurrences = u.occurrences_in(&p1);
    for len in 4..=MAX_PADDING {
        for &t in &occurrences {
            if t < len {
                continue;
            }
            let v = p1.slice(t - len..t);
            let x = v.concat(&u);
            let g = Graph::from_word(&x);
            if !g.is_prime_by_closure() {
                continue;
            }
            if embed::embeds(&g, &host2)?.is_none() {
                let start = (t - len) as i64;
                return Ok(InclusionVerdict::Separated {
                    missing_factor: u,
                    padding: v,
                    witness: g.to_doc(),
                    positions: (start - 1..start + x.len() as i64).collect(),
                });
            }
        }
    }
    Ok(InclusionVerdict::Unknown { missing_factor: u })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> WordStream {
        x.parse().unwrap()
    }

    #[test]
    fn path_age_sizes() {
        assert_eq!(age_members(&s("periodic:1"), 4, 12).unwrap().len(), 11);
        let small = age_members(&s("periodic:1"), 2, 12).unwrap();
        assert_eq!(small.len(), 3);
        assert!(small.contains_graph(&Graph::complete(2)).unwrap());
        assert!(small.contains_graph(&Graph::empty(2)).unwrap());
    }

    #[test]
    fn fibonacci_age_has_triangle_and_independent_triple() {
        let c = age_members(&WordStream::Fibonacci, 3, 30).unwrap();
        assert!(c.contains_graph(&Graph::complete(3)).unwrap());
        assert!(c.contains_graph(&Graph::empty(3)).unwrap());
    }

    #[test]
    fn type_walk_matches_subset_scan() {
        for spec in ["periodic:1", "periodic:01", "periodic:0011", "fibonacci", "thue-morse", "finite:0110100"] {
            let stream = s(spec);
            let window = if spec.starts_with("finite") { 7 } else { 14 };
            let fast = age_members(&stream, 6, window).unwrap();
            let slow = age_members_by_subsets(&stream, 6, window).unwrap();
            assert!(fast.classes.keys().eq(slow.classes.keys()), "{spec}");
        }
    }

    #[test]
    fn representatives_embed_in_window() {
        let c = age_members(&WordStream::Fibonacci, 5, 60).unwrap();
        let host = window_graph(&WordStream::Fibonacci, 60).unwrap();
        for e in c.classes.values() {
            assert_eq!(host.induced(&e.witness).unwrap(), e.graph);
        }
    }

    #[test]
    fn contains_examples() {
        let (m, _) = age_contains(&s("periodic:1"), &Graph::path(5), 10).unwrap();
        assert!(matches!(m, Membership::Yes(_)));
        let (m, _) = age_contains(&s("periodic:1"), &Graph::complete(3), 20).unwrap();
        assert_eq!(m, Membership::NoWithinWindow);
        let g101 = Graph::from_word(&"101".parse().unwrap());
        let (m, _) = age_contains(&WordStream::Fibonacci, &g101, 40).unwrap();
        assert!(matches!(m, Membership::Yes(_)));
    }

    #[test]
    fn saturation_examples() {
        assert!(saturation_check(&s("periodic:01"), 4, 20, 40).unwrap());
        assert!(saturation_check(&WordStream::Fibonacci, 4, 30, 60).unwrap());
        assert!(!saturation_check(&s("finite:0101"), 4, 3, 4).unwrap());
        assert!(saturation_check(&s("periodic:01"), 4, 40, 20).is_err());
    }

    #[test]
    fn transfer_precondition_errors() {
        let err = bound_from_word_bound(&s("periodic:01"), &"00".parse().unwrap(), 40).unwrap_err();
        assert!(matches!(err, Error::Precondition { clause: "|w| > l(mu) + 7", .. }));
        let err = bound_from_word_bound(&s("periodic:1"), &"0".parse().unwrap(), 40).unwrap_err();
        assert!(matches!(err, Error::Precondition { clause: "l(mu) is finite", .. }));
    }

    #[test]
    fn rigidity_vacuous_for_constant_stream() {
        let v = embedding_rigidity_check(&s("periodic:1"), &FiniteWord::constant(1, 10), 15, 1000).unwrap();
        assert!(matches!(v, RigidityVerdict::Vacuous { .. }));
    }

    #[test]
    fn jonsson_examples() {
        let r = jonsson_levels(&s("periodic:01"), 4, 100).unwrap();
        assert_eq!(r.levels, [(1, 2), (2, 2), (3, 2), (4, 2)]);
        assert_eq!(r.witnesses, [(1, Some(2)), (2, Some(3)), (3, Some(4)), (4, Some(5))]);
        let r = jonsson_levels(&s("periodic:1"), 3, 100).unwrap();
        assert_eq!(r.levels, [(1, 1), (2, 1), (3, 1)]);
        assert_eq!(r.witnesses, [(1, Some(1)), (2, Some(2)), (3, Some(3))]);
        let r = jonsson_levels(&WordStream::Fibonacci, 6, 1000).unwrap();
        assert_eq!(r.levels.iter().map(|x| x.1).collect::<Vec<_>>(), [2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn necessity_examples() {
        let cases = prefix_embedding_necessity_check(&s("periodic:1"), &"11".parse().unwrap(), 30).unwrap();
        assert!(cases[0].embeds && cases[0].factor_in_window);
        assert!(cases.iter().all(|c| c.holds));
        let cases = prefix_embedding_necessity_check(&s("periodic:01"), &"1".parse().unwrap(), 40).unwrap();
        assert!(!cases[0].factor_in_window);
        assert!(!cases[0].embeds);
        let cases = prefix_embedding_necessity_check(&WordStream::Fibonacci, &"010".parse().unwrap(), 200).unwrap();
        assert!(cases.iter().all(|c| c.holds));
    }

    #[test]
    fn inclusion_examples() {
        let v = factor_inclusion_check(&s("periodic:01"), &s("periodic:0011"), 4, 60).unwrap();
        assert!(matches!(v, InclusionVerdict::Separated { .. }), "{v:?}");
        let v = factor_inclusion_check(&s("periodic:01"), &s("periodic:10"), 4, 60).unwrap();
        assert_eq!(v, InclusionVerdict::Included);
        let v = factor_inclusion_check(&WordStream::Fibonacci, &s("periodic:01"), 4, 200).unwrap();
        match v {
            InclusionVerdict::Separated { missing_factor, .. } => assert_eq!(missing_factor.to_string(), "00"),
            other => panic!("{other:?}"),
        }
    }
}

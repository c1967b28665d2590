//! Canonical forms for small graphs.
//!
//! Colour refinement to an equitable partition, then a search tree that
//! individualises vertices of the first non-singleton cell. Each leaf is a
//! discrete partition, i.e. a labelling; its key is the upper triangle of
//! the relabelled adjacency matrix and the canonical form is the smallest
//! key. Two leaves with equal keys differ by an automorphism, which lets
//! the search skip the remaining subtree below their divergence point.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANON_ORDER: usize = 64;

/// Total-order key; equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    order: usize,
    bits: Vec<u64>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    /// The canonical representative, labelled `0..order`.
    pub fn to_graph(&self) -> Graph {
        let n = self.order;
        let mut g = Graph::empty(n);
        let mut pos = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.bits[pos / 64] >> (63 - pos % 64) & 1 == 1 {
                    g.add_edge(i, j);
                }
                pos += 1;
            }
        }
        g
    }

    /// Upper-triangle bits packed big-endian into hex digits.
    pub fn hex(&self) -> String {
        let total = self.order * self.order.saturating_sub(1) / 2;
        let digits = total.div_ceil(4);
        let mut out = String::with_capacity(digits.max(1));
        for d in 0..digits {
            let word = self.bits[d / 16];
            let nibble = (word >> (60 - 4 * (d % 16))) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).expect("nibble is a hex digit"));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.order, self.hex())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.order();
    if n > MAX_CANON_ORDER {
        return Err(Error::Budget {
            what: "vertices for canonical labelling",
            limit: MAX_CANON_ORDER as u64,
        });
    }
    let mut search = Search {
        n,
        adj: if n == 0 { Vec::new() } else { g.masks() },
        first: None,
        best: None,
    };
    let colors = search.refine(vec![0; n]);
    search.descend(colors, &mut Vec::new());
    Ok(search.best.map(|(key, _)| key).unwrap_or(CanonicalForm {
        order: 0,
        bits: Vec::new(),
    }))
}

/// Canonical form together with one labelling achieving it:
/// `perm[v]` is the canonical position of vertex index `v`.
pub fn canonical_labelling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    let key = canonical_form(g)?;
    let target = key.to_graph();
    let perm = crate::embed::find_isomorphism(g, &target).expect("a graph is isomorphic to its canonical form");
    Ok((key, perm))
}

pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct Search {
    n: usize,
    adj: Vec<u64>,
    first: Option<(CanonicalForm, Vec<usize>)>,
    best: Option<(CanonicalForm, Vec<usize>)>,
}

impl Search {
    /// Refines `colors` to the coarsest equitable partition below it.
    /// Colours are renumbered `0..k` in an isomorphism-invariant way.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let n = self.n;
        let mut classes = count_distinct(&colors);
        colors = renumber(&colors);
        loop {
            let mut cells = vec![0u64; classes];
            for (v, &c) in colors.iter().enumerate() {
                cells[c as usize] |= 1 << v;
            }
            let sigs: Vec<(u32, Vec<u32>)> = (0..n)
                .map(|v| {
                    let counts = cells.iter().map(|&cell| (self.adj[v] & cell).count_ones()).collect();
                    (colors[v], counts)
                })
                .collect();
            let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| sorted.binary_search(&s).expect("signature present") as u32)
                .collect();
            let next_classes = sorted.len();
            colors = next;
            if next_classes == classes {
                return colors;
            }
            classes = next_classes;
        }
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn descend(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) -> Option<usize> {
        let n = self.n;
        let classes = count_distinct(&colors);
        if classes == n {
            return self.leaf(&colors, path);
        }
        // First non-singleton cell, by colour.
        let mut sizes = vec![0usize; classes];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("partition is not discrete") as u32;
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let level = path.len();
        for v in members {
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c == target && u != v))
                .collect();
            let refined = self.refine(split);
            path.push(v);
            let jump = self.descend(refined, path);
            path.pop();
            if let Some(to) = jump {
                if to < level {
                    return Some(to);
                }
            }
        }
        None
    }

    fn leaf(&mut self, colors: &[u32], path: &[usize]) -> Option<usize> {
        let n = self.n;
        let mut at = vec![0usize; n];
        for (v, &c) in colors.iter().enumerate() {
            at[c as usize] = v;
        }
        let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64)];
        let mut pos = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[at[i]] >> at[j] & 1 == 1 {
                    bits[pos / 64] |= 1 << (63 - pos % 64);
                }
                pos += 1;
            }
        }
        let key = CanonicalForm { order: n, bits };
        let path = path.to_vec();
        let Some((first_key, first_path)) = &self.first else {
            self.first = Some((key.clone(), path.clone()));
            self.best = Some((key, path));
            return None;
        };
        if &key == first_key {
            return Some(common_prefix(first_path, &path));
        }
        let (best_key, best_path) = self.best.as_ref().expect("best is set with first");
        match key.cmp(best_key) {
            std::cmp::Ordering::Equal => Some(common_prefix(best_path, &path)),
            std::cmp::Ordering::Less => {
                self.best = Some((key, path));
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn renumber(colors: &[u32]) -> Vec<u32> {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    colors
        .iter()
        .map(|x| c.binary_search(x).expect("colour present") as u32)
        .collect()
}

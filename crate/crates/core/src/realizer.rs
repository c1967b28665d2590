//! Two-dimensional realizers of `G_w`, permutations, and comparability
//! certification by orientation search.
//!
//! [`build_realizer`] grows a pair of linear orders `(L, M)` one vertex at a
//! time so that the comparability graph of `L ∩ M` is `G_w` and the newest
//! vertex is extremal in `L` or `M`. Each step first normalises the pair
//! (reverse both orders if the previous vertex is a minimum, swap `L` and
//! `M` if it is not the top of `L`), inserts the new vertex, then undoes
//! the normalisation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::words::FiniteWord;

/// Default vertex cap for orientation search.
pub const DEFAULT_ORIENTATION_BUDGET: usize = 64;
/// Default branch limit for orientation search.
pub const DEFAULT_ORIENTATION_NODE_LIMIT: u64 = 1_000_000;

/// A linear order, listed from bottom to top.
pub type LinearOrder = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realizer {
    pub l: LinearOrder,
    pub m: LinearOrder,
}

impl fmt::Display for Realizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |o: &[i64]| o.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "L: {}", join(&self.l))?;
        writeln!(f, "M: {}", join(&self.m))
    }
}

impl FromStr for Realizer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut l = None;
        let mut m = None;
        for line in s.lines().map(str::trim).filter(|x| !x.is_empty()) {
            let (tag, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(format!("realizer line {line:?}")))?;
            let order = rest
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| Error::parse(format!("bad label {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            match tag.trim() {
                "L" => l = Some(order),
                "M" => m = Some(order),
                other => return Err(Error::parse(format!("unknown realizer line {other:?}"))),
            }
        }
        match (l, m) {
            (Some(l), Some(m)) => Ok(Realizer { l, m }),
            _ => Err(Error::parse("realizer needs `L:` and `M:` lines")),
        }
    }
}

impl Realizer {
    fn positions(order: &[i64]) -> std::collections::HashMap<i64, usize> {
        order.iter().enumerate().map(|(i, &x)| (x, i)).collect()
    }

    /// Whether the last vertex `v` is the top or bottom of `L` or of `M`.
    pub fn is_extremal(&self, v: i64) -> bool {
        [&self.l, &self.m]
            .iter()
            .any(|o| o.first() == Some(&v) || o.last() == Some(&v))
    }
}

/// Builds `(L_w, M_w)` by adding the vertices `1, .., |w|-1` in turn.
pub fn build_realizer(w: &FiniteWord) -> Result<Realizer> {
    if w.is_empty() {
        return Err(Error::usage("realizer construction needs a nonempty word"));
    }
    let mut l: Vec<i64> = vec![-1, 0];
    let mut m: Vec<i64> = if w.letter(0) == 1 { vec![-1, 0] } else { vec![0, -1] };
    for k in 1..w.len() {
        let v = k as i64;
        let p = v - 1;
        let dual = l.last() != Some(&p) && m.last() != Some(&p);
        if dual {
            l.reverse();
            m.reverse();
        }
        let swapped = l.last() != Some(&p);
        if swapped {
            std::mem::swap(&mut l, &mut m);
        }
        debug_assert_eq!(l.last(), Some(&p));
        l.insert(l.len() - 1, v);
        if w.letter(k) == 1 {
            m.insert(0, v);
        } else {
            m.push(v);
        }
        if swapped {
            std::mem::swap(&mut l, &mut m);
        }
        if dual {
            l.reverse();
            m.reverse();
        }
    }
    Ok(Realizer { l, m })
}

fn check_orders(g: &Graph, r: &Realizer) -> bool {
    let labels: BTreeSet<i64> = g.labels().iter().copied().collect();
    let as_set = |o: &[i64]| o.iter().copied().collect::<BTreeSet<i64>>();
    r.l.len() == g.order() && r.m.len() == g.order() && as_set(&r.l) == labels && as_set(&r.m) == labels
}

/// True iff the comparability graph of `L ∩ M` is `g`.
pub fn verify_realizer(g: &Graph, r: &Realizer) -> bool {
    if !check_orders(g, r) {
        return false;
    }
    let pl = Realizer::positions(&r.l);
    let pm = Realizer::positions(&r.m);
    let n = g.order();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            let (x, y) = (g.label(a), g.label(b));
            let comparable = (pl[&x] < pl[&y]) == (pm[&x] < pm[&y]);
            comparable == g.has_edge(a, b)
        })
    })
}

/// One-line notation of the permutation read from a realizer: list the
/// vertices in `L` order; entry `i` is the 1-based position of the `i`-th
/// vertex in the reverse of `M`.
pub fn permutation_from_realizer(g: &Graph, r: &Realizer) -> Result<Vec<usize>> {
    if !verify_realizer(g, r) {
        return Err(Error::usage("the realizer does not realize the graph"));
    }
    let n = r.m.len();
    let pm = Realizer::positions(&r.m);
    Ok(r.l.iter().map(|x| n - pm[x]).collect())
}

/// Inversion graph of a permutation in one-line notation (values `1..=n`),
/// labelled by position `0..n`.
pub fn inversion_graph(perm: &[usize]) -> Graph {
    let n = perm.len();
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if perm[i] > perm[j] {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConfinementVerdict {
    Pass,
    /// `vertex` lies inside the span of `{-1, .., k}` in the named order.
    Fail { k: i64, vertex: i64, order: char },
}

/// For each `0 <= k <= |w|-3`, the vertices `k+2, .., |w|-1` lie outside
/// the smallest interval of `L` and of `M` containing `{-1, .., k}`.
pub fn interval_confinement_check(w: &FiniteWord, r: &Realizer) -> Result<ConfinementVerdict> {
    let n = w.len();
    if n < 3 {
        return Err(Error::usage("interval confinement needs |w| >= 3"));
    }
    if !check_orders(&Graph::from_word(w), r) {
        return Err(Error::usage("realizer labels do not match G_w"));
    }
    for (name, order) in [('L', &r.l), ('M', &r.m)] {
        let pos = Realizer::positions(order);
        for k in 0..=(n as i64 - 3) {
            let span: Vec<usize> = (-1..=k).map(|x| pos[&x]).collect();
            let lo = *span.iter().min().expect("nonempty span");
            let hi = *span.iter().max().expect("nonempty span");
            for v in k + 2..n as i64 {
                if (lo..=hi).contains(&pos[&v]) {
                    return Ok(ConfinementVerdict::Fail { k, vertex: v, order: name });
                }
            }
        }
    }
    Ok(ConfinementVerdict::Pass)
}

/// A strict partial order over the labels of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub labels: Vec<i64>,
    /// `less[a]` holds the indices strictly above `a`.
    pub less: Vec<BitSet>,
}

impl Poset {
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a].contains(b)
    }

    /// Irreflexive, antisymmetric and transitive.
    pub fn is_valid(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|a| {
            !self.lt(a, a)
                && (0..n).all(|b| {
                    !(self.lt(a, b) && self.lt(b, a)) && (!self.lt(a, b) || self.less[b].iter().all(|c| self.lt(a, c)))
                })
        })
    }

    pub fn dual(&self) -> Poset {
        let n = self.labels.len();
        let mut less = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in self.less[a].iter() {
                less[b].insert(a);
            }
        }
        Poset {
            labels: self.labels.clone(),
            less,
        }
    }

    pub fn comparability_graph(&self) -> Graph {
        let n = self.labels.len();
        let mut g = Graph::with_labels(self.labels.clone()).expect("poset labels are distinct");
        for a in 0..n {
            for b in self.less[a].iter() {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// The pairs `(a, b)` with `a < b`, as labels, sorted.
    pub fn relations(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = (0..self.labels.len())
            .flat_map(|a| self.less[a].iter().map(move |b| (a, b)))
            .map(|(a, b)| (self.labels[a], self.labels[b]))
            .collect();
        out.sort_unstable();
        out
    }
}

/// A transitive orientation of `g` if one exists.
pub fn is_comparability(g: &Graph, budget: usize) -> Result<Option<Poset>> {
    is_comparability_with_limit(g, budget, DEFAULT_ORIENTATION_NODE_LIMIT)
}

pub fn is_comparability_with_limit(g: &Graph, budget: usize, node_limit: u64) -> Result<Option<Poset>> {
    let n = g.order();
    if n > budget {
        return Err(Error::Budget {
            what: "vertices for orientation search",
            limit: budget as u64,
        });
    }
    let mut search = Orienter { g, nodes: 0, node_limit };
    let dir = vec![vec![0i8; n]; n];
    let Some(dir) = search.solve(dir)? else {
        return Ok(None);
    };
    let mut less = vec![BitSet::new(n); n];
    for a in 0..n {
        for b in 0..n {
            if dir[a][b] == 1 {
                less[a].insert(b);
            }
        }
    }
    Ok(Some(Poset {
        labels: g.labels().to_vec(),
        less,
    }))
}

/// Both `g` and its complement are comparability graphs.
pub fn is_permutation_graph(g: &Graph, budget: usize) -> Result<bool> {
    Ok(is_comparability(g, budget)?.is_some() && is_comparability(&g.complement(), budget)?.is_some())
}

struct Orienter<'a> {
    g: &'a Graph,
    nodes: u64,
    node_limit: u64,
}

impl Orienter<'_> {
    /// `dir[a][b] == 1` means `a < b`; `-1` means `b < a`; 0 is open.
    fn solve(&mut self, mut dir: Vec<Vec<i8>>) -> Result<Option<Vec<Vec<i8>>>> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Budget {
                what: "orientation search branches",
                limit: self.node_limit,
            });
        }
        let n = self.g.order();
        let open = (0..n).find_map(|a| (a + 1..n).find(|&b| self.g.has_edge(a, b) && dir[a][b] == 0).map(|b| (a, b)));
        let Some((a, b)) = open else {
            return Ok(Some(dir));
        };
        for (x, y) in [(a, b), (b, a)] {
            let mut trial = dir.clone();
            if self.orient(&mut trial, x, y) {
                if let Some(done) = self.solve(trial)? {
                    return Ok(Some(done));
                }
            }
        }
        dir.clear();
        Ok(None)
    }

    /// Sets `x < y` and closes under the forcing rules; false on conflict.
    fn orient(&self, dir: &mut [Vec<i8>], x: usize, y: usize) -> bool {
        let g = self.g;
        let n = g.order();
        let mut queue = vec![(x, y)];
        while let Some((a, b)) = queue.pop() {
            match dir[a][b] {
                1 => continue,
                -1 => return false,
                _ => {}
            }
            if !g.has_edge(a, b) {
                return false;
            }
            dir[a][b] = 1;
            dir[b][a] = -1;
            for c in 0..n {
                if c == a || c == b {
                    continue;
                }
                // a < b, c ~ a, c !~ b: c < a would give c < b.
                if g.has_edge(a, c) && !g.has_edge(b, c) {
                    queue.push((a, c));
                }
                // a < b, c ~ b, c !~ a: b < c would give a < c.
                if g.has_edge(b, c) && !g.has_edge(a, c) {
                    queue.push((c, b));
                }
                // Transitivity through already oriented edges.
                if dir[b][c] == 1 {
                    queue.push((a, c));
                }
                if dir[c][a] == 1 {
                    queue.push((c, b));
                }
            }
        }
        true
    }
}

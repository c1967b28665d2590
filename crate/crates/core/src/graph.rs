//! Finite simple graphs with stable integer labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::words::FiniteWord;

/// Default vertex cap for exhaustive subset scans.
pub const DEFAULT_MODULE_BUDGET: usize = 20;

/// A finite simple undirected graph. Vertices are addressed internally by
/// index `0..order`; every vertex carries a distinct external label.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<i64>,
    adj: Vec<BitSet>,
}

impl Graph {
    /// Edgeless graph on the given labels.
    pub fn with_labels(labels: Vec<i64>) -> Result<Self> {
        let distinct: BTreeSet<i64> = labels.iter().copied().collect();
        if distinct.len() != labels.len() {
            return Err(Error::usage("vertex labels must be distinct"));
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            adj: vec![BitSet::new(n); n],
        })
    }

    /// Edgeless graph labelled `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            labels: (0..n as i64).collect(),
            adj: vec![BitSet::new(n); n],
        }
    }

    /// Graph labelled `0..n` with the given index pairs as edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::empty(n).complement()
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// `K_{1,n}` with centre 0.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        Graph::from_edges(n + 1, &edges)
    }

    /// `G_w` on labels `-1, 0, ..., |w|-1`: for `i < j` there is an edge iff
    /// `w_j = 1` and `j = i + 1`, or `w_j = 0` and `j != i + 1`.
    pub fn from_word(w: &FiniteWord) -> Self {
        let n = w.len() + 1;
        let mut g = Graph {
            labels: (-1..w.len() as i64).collect(),
            adj: vec![BitSet::new(n); n],
        };
        // Index x holds label x - 1.
        for j in 1..n {
            let one = w.letter(j - 1) == 1;
            for i in 0..j {
                if one == (j == i + 1) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> i64 {
        self.labels[index]
    }

    pub fn index_of(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn indices_of(&self, labels: &[i64]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|&l| self.index_of(l).ok_or_else(|| Error::usage(format!("unknown vertex label {l}"))))
            .collect()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "loops are not allowed");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].remove(b);
        self.adj[b].remove(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges as label pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for a in 0..self.order() {
            for b in self.adj[a].iter().filter(|&b| b > a) {
                let (x, y) = (self.labels[a], self.labels[b]);
                out.push((x.min(y), x.max(y)));
            }
        }
        out.sort_unstable();
        out
    }

    /// Adjacency rows as bit masks; only for graphs of order at most 64.
    pub fn masks(&self) -> Vec<u64> {
        assert!(self.order() <= 64, "mask view needs at most 64 vertices");
        self.adj
            .iter()
            .map(|row| row.iter().fold(0u64, |m, v| m | 1 << v))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let adj = (0..n)
            .map(|v| {
                let mut row = self.adj[v].complement();
                row.remove(v);
                row
            })
            .collect();
        Graph {
            labels: self.labels.clone(),
            adj,
        }
    }

    /// Induced subgraph on the given vertex labels, in the given order.
    pub fn induced(&self, labels: &[i64]) -> Result<Graph> {
        let idx = self.indices_of(labels)?;
        let distinct: BTreeSet<usize> = idx.iter().copied().collect();
        if distinct.len() != idx.len() {
            return Err(Error::usage("repeated vertex in induced subgraph"));
        }
        Ok(self.induced_indices(&idx))
    }

    /// Induced subgraph on the given (distinct) indices, in the given order.
    pub fn induced_indices(&self, idx: &[usize]) -> Graph {
        let k = idx.len();
        let mut g = Graph {
            labels: idx.iter().map(|&i| self.labels[i]).collect(),
            adj: vec![BitSet::new(k); k],
        };
        for a in 0..k {
            for b in a + 1..k {
                if self.has_edge(idx[a], idx[b]) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// The graph with the vertex of the given index removed.
    pub fn delete_index(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.order()).filter(|&i| i != v).collect();
        self.induced_indices(&keep)
    }

    /// Same graph with labels replaced by `0..order`.
    pub fn relabel_sequential(&self) -> Graph {
        Graph {
            labels: (0..self.order() as i64).collect(),
            adj: self.adj.clone(),
        }
    }

    /// Same graph with new labels in index order.
    pub fn with_new_labels(&self, labels: Vec<i64>) -> Result<Graph> {
        if labels.len() != self.order() {
            return Err(Error::usage("label count does not match the order"));
        }
        let mut g = Graph::with_labels(labels)?;
        g.adj = self.adj.clone();
        Ok(g)
    }

    /// True iff no vertex outside `set` distinguishes two members of it.
    pub fn is_module(&self, set: &[i64]) -> Result<bool> {
        let idx = self.indices_of(set)?;
        let mut s = BitSet::new(self.order());
        for &i in &idx {
            s.insert(i);
        }
        Ok(self.is_module_set(&s))
    }

    pub(crate) fn is_module_set(&self, s: &BitSet) -> bool {
        let size = s.count();
        (0..self.order()).filter(|&v| !s.contains(v)).all(|v| {
            let hits = self.adj[v].intersection_count(s);
            hits == 0 || hits == size
        })
    }

    /// All modules `S` with `2 <= |S| < order`, by exhaustive subset scan,
    /// sorted by size and then by sorted labels.
    pub fn nontrivial_modules(&self, budget: usize) -> Result<Vec<Vec<i64>>> {
        let n = self.order();
        if n > budget || n > 63 {
            return Err(Error::Budget {
                what: "vertices for exhaustive module search",
                limit: budget as u64,
            });
        }
        let masks = self.masks();
        let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let mut found: Vec<Vec<i64>> = Vec::new();
        for s in 1u64..full {
            if s.count_ones() < 2 {
                continue;
            }
            let module = (0..n).filter(|&v| s >> v & 1 == 0).all(|v| {
                let hit = masks[v] & s;
                hit == 0 || hit == s
            });
            if module {
                let mut labels: Vec<i64> = (0..n).filter(|&v| s >> v & 1 == 1).map(|v| self.labels[v]).collect();
                labels.sort_unstable();
                found.push(labels);
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(found)
    }

    /// Primality by exhaustive module search; graphs on at most two
    /// vertices are prime.
    pub fn is_prime(&self, budget: usize) -> Result<bool> {
        if self.order() <= 2 {
            return Ok(true);
        }
        Ok(self.nontrivial_modules(budget)?.is_empty())
    }

    /// Primality via module closures of vertex pairs: the graph is prime iff
    /// the smallest module containing any two vertices is the whole set.
    /// Polynomial, so usable beyond the exhaustive budget.
    pub fn is_prime_by_closure(&self) -> bool {
        let n = self.order();
        if n <= 2 {
            return true;
        }
        (0..n).all(|a| (a + 1..n).all(|b| self.module_closure(a, b).count() == n))
    }

    /// Smallest module containing vertices `a` and `b`.
    pub fn module_closure(&self, a: usize, b: usize) -> BitSet {
        let n = self.order();
        let mut s = BitSet::new(n);
        s.insert(a);
        s.insert(b);
        loop {
            let size = s.count();
            let splitter = (0..n).find(|&v| {
                if s.contains(v) {
                    return false;
                }
                let hits = self.adj[v].intersection_count(&s);
                hits != 0 && hits != size
            });
            match splitter {
                Some(v) => {
                    s.insert(v);
                }
                None => return s,
            }
        }
    }

    /// Renders the line format: `n <order>`, `labels ...`, then `e a b` per
    /// edge with `a < b`, sorted.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\nlabels", self.order());
        for l in &self.labels {
            out.push_str(&format!(" {l}"));
        }
        out.push('\n');
        for (a, b) in self.edges() {
            out.push_str(&format!("e {a} {b}\n"));
        }
        out
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            order: self.order(),
            labels: self.labels.clone(),
            edges: self.edges(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Graph> {
        if doc.labels.len() != doc.order {
            return Err(Error::parse(format!(
                "order {} but {} labels",
                doc.order,
                doc.labels.len()
            )));
        }
        let mut g = Graph::with_labels(doc.labels.clone())?;
        for &(a, b) in &doc.edges {
            let ia = g.index_of(a).ok_or_else(|| Error::parse(format!("edge uses unknown label {a}")))?;
            let ib = g.index_of(b).ok_or_else(|| Error::parse(format!("edge uses unknown label {b}")))?;
            if ia == ib {
                return Err(Error::parse(format!("loop at {a}")));
            }
            g.add_edge(ia, ib);
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let doc: GraphDoc = serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))?;
        Graph::from_doc(&doc)
    }

    /// Parses either the line format or a JSON document.
    pub fn parse_any(s: &str) -> Result<Graph> {
        if s.trim_start().starts_with('{') {
            Graph::from_json(s)
        } else {
            s.parse()
        }
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |what: &str| Error::parse(format!("graph text: {what}"));
        let order: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("n "))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad("expected `n <order>`"))?;
        let labels: Vec<i64> = match lines.next() {
            Some(l) if l == "labels" || l.starts_with("labels ") => l["labels".len()..]
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("bad label")))
                .collect::<Result<_>>()?,
            _ if order == 0 => Vec::new(),
            _ => return Err(bad("expected `labels ...`")),
        };
        let mut edges = Vec::new();
        for l in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            match parts.as_slice() {
                ["e", a, b] => edges.push((
                    a.parse().map_err(|_| bad("bad edge endpoint"))?,
                    b.parse().map_err(|_| bad("bad edge endpoint"))?,
                )),
                _ => return Err(bad(&format!("unexpected line {l:?}"))),
            }
        }
        Graph::from_doc(&GraphDoc { order, labels, edges })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ labels: {:?}, edges: {:?} }}", self.labels, self.edges())
    }
}

/// Structured graph document: `{"order", "labels", "edges"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub order: usize,
    pub labels: Vec<i64>,
    pub edges: Vec<(i64, i64)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gw(s: &str) -> Graph {
        Graph::from_word(&s.parse().unwrap())
    }

    #[test]
    fn word_graph_examples() {
        assert_eq!(gw("1").edges(), [(-1, 0)]);
        assert_eq!(gw("11").edges(), [(-1, 0), (0, 1)]);
        assert_eq!(gw("00").edges(), [(-1, 1)]);
        assert_eq!(gw("101").edges(), [(-1, 0), (-1, 1), (1, 2)]);
        assert_eq!(gw("").order(), 1);
    }

    #[test]
    fn complement_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(k2.complement().edge_count(), 0);
        assert_eq!(k2.complement().complement(), k2);
    }

    #[test]
    fn induced_examples() {
        let p4 = Graph::path(4);
        let p3 = p4.induced(&[0, 1, 2]).unwrap();
        assert_eq!(p3.edges(), [(0, 1), (1, 2)]);
        let split = p4.induced(&[0, 1, 3]).unwrap();
        assert_eq!(split.edges(), [(0, 1)]);
        assert_eq!(p4.induced(&[0, 1, 2, 3]).unwrap(), p4);
        assert_eq!(p4.induced(&[]).unwrap().order(), 0);
        assert!(p4.induced(&[7]).is_err());
    }

    #[test]
    fn module_examples() {
        let g = gw("11");
        assert!(g.is_module(&[-1, 1]).unwrap());
        assert!(!g.is_module(&[0, 1]).unwrap());
        assert!(g.is_module(&[0]).unwrap());
        assert_eq!(gw("11").nontrivial_modules(20).unwrap(), [vec![-1, 1]]);
        assert_eq!(gw("10").nontrivial_modules(20).unwrap(), [vec![0, 1]]);
        assert!(gw("101").nontrivial_modules(20).unwrap().is_empty());
    }

    #[test]
    fn prime_examples() {
        assert!(gw("101").is_prime(20).unwrap());
        assert!(!gw("00").is_prime(20).unwrap());
        assert!(Graph::empty(1).is_prime(20).unwrap());
        assert!(matches!(Graph::empty(21).is_prime(20), Err(Error::Budget { .. })));
    }

    #[test]
    fn closure_primality_agrees_on_small_words() {
        for len in 0..=8 {
            for w in FiniteWord::all_of_length(len) {
                let g = Graph::from_word(&w);
                assert_eq!(g.is_prime(20).unwrap(), g.is_prime_by_closure(), "{w}");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = gw("10110");
        let text = g.to_text();
        assert!(text.starts_with("n 6\nlabels -1 0 1 2 3 4\n"));
        assert_eq!(text.parse::<Graph>().unwrap(), g);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(Graph::parse_any(&g.to_json()).unwrap().to_text(), text);
        assert_eq!("n 0\nlabels\n".parse::<Graph>().unwrap().order(), 0);
    }

    #[test]
    fn rejects_malformed_text() {
        assert!("n 2\nlabels 0 0\n".parse::<Graph>().is_err());
        assert!("n 2\nlabels 0 1\ne 0 5\n".parse::<Graph>().is_err());
        assert!("n 2\nlabels 0 1\ne 1 1\n".parse::<Graph>().is_err());
        assert!("n 3\nlabels 0 1\n".parse::<Graph>().is_err());
        assert!("order 2".parse::<Graph>().is_err());
    }
}

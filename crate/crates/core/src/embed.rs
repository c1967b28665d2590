//! Induced-subgraph embeddings by forward-checking backtracking.
//!
//! Every pattern vertex keeps a bitset domain of host candidates. Assigning
//! `h -> g` intersects each open domain with the neighbourhood or the
//! non-neighbourhood of `g`. The next variable is the one with the smallest
//! domain (ties to the smallest index) and candidates are tried in
//! ascending order, so results are reproducible.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default node limit for a single search.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

/// An induced embedding: `image[i]` is the host index of pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    pub image: Vec<usize>,
}

impl Embedding {
    /// `(pattern label, host label)` pairs in pattern index order.
    pub fn label_pairs(&self, pattern: &Graph, host: &Graph) -> Vec<(i64, i64)> {
        self.image
            .iter()
            .enumerate()
            .map(|(i, &g)| (pattern.label(i), host.label(g)))
            .collect()
    }

    pub fn to_doc(&self, pattern: &Graph, host: &Graph) -> EmbeddingDoc {
        EmbeddingDoc {
            map: self.label_pairs(pattern, host),
        }
    }

    /// Checks injectivity and preservation of edges and non-edges.
    pub fn is_valid(&self, pattern: &Graph, host: &Graph) -> bool {
        let k = pattern.order();
        if self.image.len() != k || self.image.iter().any(|&g| g >= host.order()) {
            return false;
        }
        (0..k).all(|a| {
            (a + 1..k).all(|b| {
                self.image[a] != self.image[b] && pattern.has_edge(a, b) == host.has_edge(self.image[a], self.image[b])
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingDoc {
    pub map: Vec<(i64, i64)>,
}

/// Some embedding of `pattern` into `host`, or `None`.
pub fn embeds(pattern: &Graph, host: &Graph) -> Result<Option<Embedding>> {
    embeds_with_limit(pattern, host, DEFAULT_NODE_LIMIT)
}

pub fn embeds_with_limit(pattern: &Graph, host: &Graph, node_limit: u64) -> Result<Option<Embedding>> {
    let mut found = None;
    let mut s = Searcher::new(pattern, host, node_limit);
    if let Some(domains) = s.initial_domains() {
        s.run(domains, &mut |image| {
            found = Some(Embedding { image: image.to_vec() });
            false
        })?;
    }
    Ok(found)
}

/// Every embedding, sorted lexicographically by image tuple.
pub fn all_embeddings(pattern: &Graph, host: &Graph, node_limit: u64) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    let mut s = Searcher::new(pattern, host, node_limit);
    if let Some(domains) = s.initial_domains() {
        s.run(domains, &mut |image| {
            out.push(Embedding { image: image.to_vec() });
            true
        })?;
    }
    out.sort();
    Ok(out)
}

/// Like [`all_embeddings`], splitting the host candidates of pattern vertex
/// 0 across threads. The node limit applies to each branch.
pub fn all_embeddings_parallel(pattern: &Graph, host: &Graph, node_limit: u64) -> Result<Vec<Embedding>> {
    if pattern.order() == 0 {
        return all_embeddings(pattern, host, node_limit);
    }
    let base = Searcher::new(pattern, host, node_limit);
    let Some(domains) = base.initial_domains() else {
        return Ok(Vec::new());
    };
    let roots: Vec<usize> = domains[0].iter().collect();
    let parts: Vec<Result<Vec<Embedding>>> = roots
        .par_iter()
        .map(|&g| {
            let mut s = Searcher::new(pattern, host, node_limit);
            let mut out = Vec::new();
            let mut d = domains.clone();
            if s.assign(&mut d, 0, g) {
                s.run(d, &mut |image| {
                    out.push(Embedding { image: image.to_vec() });
                    true
                })?;
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    out.sort();
    Ok(out)
}

/// Bijection `perm` with `perm[v]` the index in `b` of vertex `v` of `a`.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    embeds_with_limit(a, b, u64::MAX).ok().flatten().map(|e| e.image)
}

struct Searcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    host_non_adj: Vec<BitSet>,
    image: Vec<Option<usize>>,
    nodes: u64,
    node_limit: u64,
}

impl<'a> Searcher<'a> {
    fn new(pattern: &'a Graph, host: &'a Graph, node_limit: u64) -> Self {
        let n = host.order();
        let host_non_adj = (0..n)
            .map(|g| {
                let mut row = host.neighbors(g).complement();
                row.remove(g);
                row
            })
            .collect();
        Searcher {
            pattern,
            host,
            host_non_adj,
            image: vec![None; pattern.order()],
            nodes: 0,
            node_limit,
        }
    }

    /// Degree-filtered domains, or `None` if some domain is empty.
    fn initial_domains(&self) -> Option<Vec<BitSet>> {
        let k = self.pattern.order();
        let n = self.host.order();
        if k > n {
            return None;
        }
        let host_deg: Vec<usize> = (0..n).map(|g| self.host.degree(g)).collect();
        let mut domains = Vec::with_capacity(k);
        for h in 0..k {
            let d = self.pattern.degree(h);
            let nd = k - 1 - d;
            let mut dom = BitSet::new(n);
            for g in (0..n).filter(|&g| host_deg[g] >= d && n - 1 - host_deg[g] >= nd) {
                dom.insert(g);
            }
            if dom.is_empty() {
                return None;
            }
            domains.push(dom);
        }
        Some(domains)
    }

    /// Assigns `h -> g` and prunes open domains; false on a wipe-out.
    fn assign(&mut self, domains: &mut [BitSet], h: usize, g: usize) -> bool {
        self.image[h] = Some(g);
        for other in 0..self.pattern.order() {
            if self.image[other].is_some() {
                continue;
            }
            if self.pattern.has_edge(h, other) {
                domains[other].intersect_with(self.host.neighbors(g));
            } else {
                domains[other].intersect_with(&self.host_non_adj[g]);
            }
            if domains[other].is_empty() {
                return false;
            }
        }
        true
    }

    /// Visits complete assignments; the visitor returns false to stop.
    /// Returns Ok(false) if the search was stopped by the visitor.
    fn run(&mut self, domains: Vec<BitSet>, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::Budget {
                what: "embedding search nodes",
                limit: self.node_limit,
            });
        }
        let next = (0..self.pattern.order())
            .filter(|&h| self.image[h].is_none())
            .min_by_key(|&h| (domains[h].count(), h));
        let Some(h) = next else {
            let image: Vec<usize> = self.image.iter().map(|g| g.expect("complete assignment")).collect();
            return Ok(visit(&image));
        };
        for g in domains[h].iter().collect::<Vec<_>>() {
            let mut d = domains.clone();
            if self.assign(&mut d, h, g) && !self.run(d, visit)? {
                self.image[h] = None;
                return Ok(false);
            }
            self.image[h] = None;
        }
        Ok(true)
    }
}

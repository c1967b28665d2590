//! Generators for the unavoidable prime families.
//!
//! Vertices `a_1 .. a_n` get labels `0 .. n-1`, `b_1 .. b_n` get labels
//! `n .. 2n-1`, and the extra vertex of the one-point extensions gets `2n`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` accepted by [`generate`].
pub const MAX_FAMILY_N: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `a_i ~ b_j` iff `i <= j`; both sides independent.
    HalfGraph,
    /// As the half-graph with the `b` side a clique.
    HalfSplit,
    /// Half split graph plus a vertex adjacent to every `a_i`.
    HalfSplitI,
    /// Half split graph plus a vertex adjacent to `a_1` only.
    HalfSplitStar,
    /// `b` clique, `a` independent, `a_i ~ b_j` iff `i = j`.
    ThinSpider,
    /// `b` clique, `a` independent, `a_i ~ b_j` iff `i != j`.
    ThickSpider,
    /// `K_{1,n}` with every edge subdivided: centre `2n`, subdivision
    /// vertices `a_i`, leaves `b_i`.
    StarSubdivision,
    /// Line graph of `K_{2,n}`: cliques `a` and `b` with `a_i ~ b_i`.
    LineK2n,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::HalfGraph,
        Family::HalfSplit,
        Family::HalfSplitI,
        Family::HalfSplitStar,
        Family::ThinSpider,
        Family::ThickSpider,
        Family::StarSubdivision,
        Family::LineK2n,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::HalfGraph => "half_graph",
            Family::HalfSplit => "half_split",
            Family::HalfSplitI => "half_split_I",
            Family::HalfSplitStar => "half_split_star",
            Family::ThinSpider => "thin_spider",
            Family::ThickSpider => "thick_spider",
            Family::StarSubdivision => "star_subdivision",
            Family::LineK2n => "line_K2n",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::usage(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
}

pub fn generate(spec: FamilySpec) -> Result<Graph> {
    let n = spec.n;
    if n == 0 || n > MAX_FAMILY_N {
        return Err(Error::usage(format!("family size must be in 1..={MAX_FAMILY_N}")));
    }
    let a = |i: usize| i - 1;
    let b = |j: usize| n + j - 1;
    let extra = 2 * n;
    let with_extra = matches!(
        spec.family,
        Family::HalfSplitI | Family::HalfSplitStar | Family::StarSubdivision
    );
    let mut g = Graph::empty(if with_extra { 2 * n + 1 } else { 2 * n });
    let b_clique = matches!(
        spec.family,
        Family::HalfSplit
            | Family::HalfSplitI
            | Family::HalfSplitStar
            | Family::ThinSpider
            | Family::ThickSpider
            | Family::LineK2n
    );
    if b_clique {
        for i in 1..=n {
            for j in i + 1..=n {
                g.add_edge(b(i), b(j));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let joined = match spec.family {
                Family::HalfGraph | Family::HalfSplit | Family::HalfSplitI | Family::HalfSplitStar => i <= j,
                Family::ThinSpider | Family::StarSubdivision | Family::LineK2n => i == j,
                Family::ThickSpider => i != j,
            };
            if joined {
                g.add_edge(a(i), b(j));
            }
        }
    }
    match spec.family {
        Family::HalfSplitI => {
            for i in 1..=n {
                g.add_edge(extra, a(i));
            }
        }
        Family::HalfSplitStar => g.add_edge(extra, a(1)),
        Family::StarSubdivision => {
            for i in 1..=n {
                g.add_edge(extra, a(i));
            }
        }
        Family::LineK2n => {
            for i in 1..=n {
                for j in i + 1..=n {
                    g.add_edge(a(i), a(j));
                }
            }
        }
        _ => {}
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub family: Family,
    pub n: usize,
    pub order: usize,
    pub prime: bool,
    /// First nontrivial module when not prime.
    pub module: Option<Vec<i64>>,
}

/// Brute-force primality of every family member with `3 <= n <= n_max`.
pub fn family_primality_sweep(n_max: usize, budget: usize) -> Result<Vec<SweepEntry>> {
    let jobs: Vec<(Family, usize)> = Family::ALL
        .into_iter()
        .flat_map(|f| (3..=n_max).map(move |n| (f, n)))
        .collect();
    jobs.into_par_iter()
        .map(|(family, n)| {
            let g = generate(FamilySpec { family, n })?;
            let module = g.nontrivial_modules(budget)?.into_iter().next();
            Ok(SweepEntry {
                family,
                n,
                order: g.order(),
                prime: module.is_none(),
                module,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;

    fn gen(family: Family, n: usize) -> Graph {
        generate(FamilySpec { family, n }).unwrap()
    }

    #[test]
    fn half_graph_three() {
        let g = gen(Family::HalfGraph, 3);
        assert_eq!(g.order(), 6);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn thin_spider_three() {
        let g = gen(Family::ThinSpider, 3);
        assert_eq!(g.edges(), [(0, 3), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)]);
    }

    #[test]
    fn thick_spider_is_thin_complement() {
        for n in 1..=8 {
            assert!(isomorphic(&gen(Family::ThinSpider, n).complement(), &gen(Family::ThickSpider, n)).unwrap());
        }
    }

    #[test]
    fn sides() {
        for n in 1..=6 {
            let h = gen(Family::HalfGraph, n);
            let s = gen(Family::HalfSplit, n);
            for x in 0..n {
                for y in 0..n {
                    if x != y {
                        assert!(!h.has_edge(x, y) && !h.has_edge(n + x, n + y));
                        assert!(!s.has_edge(x, y) && s.has_edge(n + x, n + y));
                    }
                }
            }
        }
    }

    #[test]
    fn star_subdivision_shape() {
        let g = gen(Family::StarSubdivision, 4);
        assert_eq!(g.order(), 9);
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.degree(8), 4);
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("spider".parse::<Family>().is_err());
        assert!(generate(FamilySpec { family: Family::HalfGraph, n: 0 }).is_err());
    }
}

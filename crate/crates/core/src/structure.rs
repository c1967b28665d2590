//! Closed-form description of the nontrivial modules of `G_w`.
//!
//! For `n = |w| >= 3`, with `I = {0, .., n-1}`, a nontrivial module of
//! `G_w` is one of `I`, `{-1} ∪ I \ {0}`, `{-1, n-1}` or `{0, n-1}`, and
//! each occurs for exactly two complementary word patterns. Reports use the
//! graph labels directly, so `-1, 0, n-1` are the first, second and last
//! vertices of `G_w`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_MODULE_BUDGET};
use crate::words::{run_stats, FiniteWord, RunStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleShape {
    /// `{0, .., n-1}`.
    WholeI,
    /// `{-1, 1, .., n-1}`.
    I0PlusTail,
    /// `{-1, n-1}`.
    PairI0In,
    /// `{0, n-1}`.
    PairI1In,
}

impl ModuleShape {
    pub fn name(self) -> &'static str {
        match self {
            ModuleShape::WholeI => "whole_I",
            ModuleShape::I0PlusTail => "i0_plus_tail",
            ModuleShape::PairI0In => "pair_i0_in",
            ModuleShape::PairI1In => "pair_i1_in",
        }
    }

    /// The vertex set of this shape in `G_w` for `|w| = n`.
    pub fn vertices(self, n: usize) -> Vec<i64> {
        let last = n as i64 - 1;
        match self {
            ModuleShape::WholeI => (0..=last).collect(),
            ModuleShape::I0PlusTail => std::iter::once(-1).chain(1..=last).collect(),
            ModuleShape::PairI0In => vec![-1, last],
            ModuleShape::PairI1In => vec![0, last],
        }
    }

    const ALL: [ModuleShape; 4] = [
        ModuleShape::WholeI,
        ModuleShape::I0PlusTail,
        ModuleShape::PairI0In,
        ModuleShape::PairI1In,
    ];
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleClassification {
    pub shape: ModuleShape,
    /// Sorted labels of the module.
    pub witness: Vec<i64>,
    /// The word pattern that produced the module, e.g. `10^{n-3}10`.
    pub word_pattern: String,
}

impl fmt::Display for ModuleClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.shape, self.word_pattern)?;
        for l in &self.witness {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Pattern label used for words short enough to be settled by brute force.
pub const SHORT_WORD_PATTERN: &str = "n<=2";

struct Pattern {
    shape: ModuleShape,
    name: &'static str,
    /// Builds the matching word of length `n`, if the pattern has one.
    build: fn(usize) -> Option<Vec<u8>>,
}

fn runs(parts: &[(u8, usize)]) -> Vec<u8> {
    parts.iter().flat_map(|&(b, k)| std::iter::repeat_n(b, k)).collect()
}

const PATTERNS: &[Pattern] = &[
    Pattern {
        shape: ModuleShape::WholeI,
        name: "10^{n-1}",
        build: |n| Some(runs(&[(1, 1), (0, n - 1)])),
    },
    Pattern {
        shape: ModuleShape::WholeI,
        name: "01^{n-1}",
        build: |n| Some(runs(&[(0, 1), (1, n - 1)])),
    },
    Pattern {
        shape: ModuleShape::I0PlusTail,
        name: "110^{n-2}",
        build: |n| Some(runs(&[(1, 2), (0, n - 2)])),
    },
    Pattern {
        shape: ModuleShape::I0PlusTail,
        name: "001^{n-2}",
        build: |n| Some(runs(&[(0, 2), (1, n - 2)])),
    },
    Pattern {
        shape: ModuleShape::PairI0In,
        name: "10^{n-3}10",
        build: |n| Some(runs(&[(1, 1), (0, n - 3), (1, 1), (0, 1)])),
    },
    Pattern {
        shape: ModuleShape::PairI0In,
        name: "01^{n-3}01",
        build: |n| Some(runs(&[(0, 1), (1, n - 3), (0, 1), (1, 1)])),
    },
    Pattern {
        shape: ModuleShape::PairI1In,
        name: "100",
        build: |n| (n == 3).then(|| vec![1, 0, 0]),
    },
    Pattern {
        shape: ModuleShape::PairI1In,
        name: "011",
        build: |n| (n == 3).then(|| vec![0, 1, 1]),
    },
    Pattern {
        shape: ModuleShape::PairI1In,
        name: "110^{n-4}10",
        build: |n| (n >= 4).then(|| runs(&[(1, 2), (0, n - 4), (1, 1), (0, 1)])),
    },
    Pattern {
        shape: ModuleShape::PairI1In,
        name: "001^{n-4}01",
        build: |n| (n >= 4).then(|| runs(&[(0, 2), (1, n - 4), (0, 1), (1, 1)])),
    },
];

/// Nontrivial modules of `G_w` read off from the word, sorted by size and
/// then by labels. Words with `|w| <= 2` are settled by brute force.
pub fn classify_modules_gw(w: &FiniteWord) -> Result<Vec<ModuleClassification>> {
    let n = w.len();
    if n == 0 {
        return Err(Error::usage("classification needs a nonempty word"));
    }
    let mut out = Vec::new();
    if n <= 2 {
        let modules = Graph::from_word(w).nontrivial_modules(DEFAULT_MODULE_BUDGET)?;
        for m in modules {
            let shape = ModuleShape::ALL
                .into_iter()
                .find(|s| s.vertices(n) == m)
                .ok_or_else(|| Error::Precondition {
                    clause: "module has a known shape",
                    detail: format!("module {m:?} of G_{w}"),
                })?;
            out.push(ModuleClassification {
                shape,
                witness: m,
                word_pattern: SHORT_WORD_PATTERN.to_string(),
            });
        }
        return Ok(out);
    }
    for p in PATTERNS {
        if (p.build)(n).as_deref() == Some(w.bits()) {
            out.push(ModuleClassification {
                shape: p.shape,
                witness: p.shape.vertices(n),
                word_pattern: p.name.to_string(),
            });
        }
    }
    out.sort_by(|a, b| {
        a.witness
            .len()
            .cmp(&b.witness.len())
            .then_with(|| a.witness.cmp(&b.witness))
    });
    Ok(out)
}

/// Primality of `G_w` from the word patterns alone.
pub fn prime_gw_predicate(w: &FiniteWord) -> Result<bool> {
    if w.len() <= 1 {
        return Ok(true);
    }
    Ok(classify_modules_gw(w)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ThresholdVerdict {
    /// `|w| > l + 4` and `G_w` is prime.
    Pass,
    /// `|w| > l + 4` but `G_w` has a nontrivial module.
    Fail { module: Vec<i64> },
    /// `|w| <= l + 4`: nothing is claimed.
    NotApplicable,
}

/// Checks that `G_w` is prime whenever `|w| > l + 4`, where `l` comes from
/// the run statistics of the factor set `w` was drawn from.
pub fn check_length_threshold(stats: &RunStats, w: &FiniteWord) -> Result<ThresholdVerdict> {
    let own = run_stats(w);
    if own.l_value > stats.l_value {
        return Err(Error::Precondition {
            clause: "w is drawn from a factor set with the given run bound",
            detail: format!("{w} has a run of length {} > l = {}", own.l_value, stats.l_value),
        });
    }
    if w.len() <= stats.l_value + 4 {
        return Ok(ThresholdVerdict::NotApplicable);
    }
    let modules = Graph::from_word(w).nontrivial_modules(DEFAULT_MODULE_BUDGET.max(w.len() + 1))?;
    Ok(match modules.into_iter().next() {
        None => ThresholdVerdict::Pass,
        Some(module) => ThresholdVerdict::Fail { module },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionReport {
    /// Vertex label to primality of `G_w` minus that vertex.
    pub prime_after_deletion: BTreeMap<i64, bool>,
    /// Whether every primality-preserving deletion is at `-1`, `0` or `|w|-1`.
    pub confined: bool,
}

/// For prime `G_w` with `|w| >= 3`, which single-vertex deletions keep it
/// prime. Only `-1`, `0` and `|w|-1` may do so.
pub fn deletion_primality(w: &FiniteWord) -> Result<DeletionReport> {
    if w.len() < 3 {
        return Err(Error::usage("deletion analysis needs |w| >= 3"));
    }
    let g = Graph::from_word(w);
    let budget = DEFAULT_MODULE_BUDGET.max(g.order());
    if !g.is_prime(budget)? {
        return Err(Error::usage(format!("G_{w} is not prime")));
    }
    let last = w.len() as i64 - 1;
    let mut map = BTreeMap::new();
    for v in 0..g.order() {
        map.insert(g.label(v), g.delete_index(v).is_prime(budget)?);
    }
    let confined = map.iter().all(|(&l, &p)| !p || l == -1 || l == 0 || l == last);
    Ok(DeletionReport {
        prime_after_deletion: map,
        confined,
    })
}

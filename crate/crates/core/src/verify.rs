//! Property sweeps run by the `verify` command and the acceptance suite.
//!
//! Every suite returns one [`Check`] per property, with a short detail line
//! naming the scope swept and, on failure, the first counterexample.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::ages::{self, default_window, InclusionVerdict, RigidityVerdict};
use crate::canon::{canonical_form, CanonicalForm};
use crate::embed::DEFAULT_NODE_LIMIT;
use crate::error::{Error, Result};
use crate::families::{self, Family};
use crate::graph::{Graph, DEFAULT_MODULE_BUDGET};
use crate::realizer::{self, ConfinementVerdict, DEFAULT_ORIENTATION_BUDGET};
use crate::structure;
use crate::words::{self, FiniteWord, WordStream};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Sweep sizes for every suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub module_max_len: usize,
    pub realizer_max_len: usize,
    pub max_period: usize,
    pub family_max_n: usize,
    pub path_bound_order: usize,
    pub path_bound_window: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            module_max_len: 12,
            realizer_max_len: 10,
            max_period: 6,
            family_max_n: 8,
            path_bound_order: 7,
            path_bound_window: 30,
        }
    }
}

pub const SUITES: [&str; 7] = [
    "modules",
    "realizers",
    "bounds-periodic",
    "bounds-aperiodic",
    "families",
    "rigidity",
    "jonsson",
];

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    let one = |r: Result<SuiteReport>| r.map(|x| vec![x]);
    match name {
        "modules" => one(modules_suite(opts.module_max_len)),
        "realizers" => one(realizers_suite(opts.realizer_max_len)),
        "bounds-periodic" => one(bounds_periodic_suite(opts)),
        "bounds-aperiodic" => one(bounds_aperiodic_suite()),
        "families" => one(families_suite(opts.family_max_n)),
        "rigidity" => one(rigidity_suite()),
        "jonsson" => one(jonsson_suite()),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, opts)?);
            }
            Ok(out)
        }
        other => Err(Error::usage(format!("unknown suite {other:?}"))),
    }
}

fn words_up_to(min_len: usize, max_len: usize) -> Vec<FiniteWord> {
    (min_len..=max_len).flat_map(FiniteWord::all_of_length).collect()
}

fn first_failure<T, F>(items: &[T], check: F) -> Result<Option<String>>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync + Send,
{
    let results: Vec<Result<Option<String>>> = items.par_iter().map(check).collect();
    for r in results {
        if let Some(msg) = r? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

fn outcome(name: &str, scope: String, failure: Option<String>) -> Check {
    match failure {
        None => Check::new(name, true, scope),
        Some(msg) => Check::new(name, false, format!("{scope}; first counterexample: {msg}")),
    }
}

/// Closed-form module classification against brute force.
pub fn modules_suite(max_len: usize) -> Result<SuiteReport> {
    let ws = words_up_to(2, max_len);
    let scope = format!("{} words, 2 <= |w| <= {max_len}", ws.len());
    let budget = DEFAULT_MODULE_BUDGET.max(max_len + 1);
    let classification = first_failure(&ws, |w| {
        let fast: Vec<Vec<i64>> = structure::classify_modules_gw(w)?.into_iter().map(|m| m.witness).collect();
        let brute = Graph::from_word(w).nontrivial_modules(budget)?;
        Ok((fast != brute).then(|| format!("{w}: classified {fast:?}, brute force {brute:?}")))
    })?;
    let primality = first_failure(&ws, |w| {
        let fast = structure::prime_gw_predicate(w)?;
        let brute = Graph::from_word(w).is_prime(budget)?;
        Ok((fast != brute).then(|| format!("{w}: predicate {fast}, brute force {brute}")))
    })?;
    let long_run = first_failure(&ws, |w| {
        if Graph::from_word(w).is_prime(budget)? {
            return Ok(None);
        }
        let k = w.len().saturating_sub(4);
        let has_run = FiniteWord::constant(0, k).is_factor_of(w) || FiniteWord::constant(1, k).is_factor_of(w);
        Ok((!has_run).then(|| format!("{w} is not prime and has no run of length {k}")))
    })?;
    let shapes = first_failure(&ws, |w| {
        let n = w.len() as i64;
        let allowed: [Vec<i64>; 4] = [
            (0..n).collect(),
            std::iter::once(-1).chain(1..n).collect(),
            vec![-1, n - 1],
            vec![0, n - 1],
        ];
        let modules = Graph::from_word(w).nontrivial_modules(budget)?;
        Ok(modules
            .into_iter()
            .find(|m| !allowed.contains(m))
            .map(|m| format!("{w}: module {m:?}")))
    })?;
    let exceptional: Vec<String> = ["011", "100", "001", "110"]
        .iter()
        .map(|s| {
            let w: FiniteWord = s.parse().expect("literal word");
            let count = Graph::from_word(&w).nontrivial_modules(budget).map_or(0, |m| m.len());
            format!("{s}:{count}")
        })
        .collect();
    Ok(SuiteReport {
        suite: "modules".into(),
        checks: vec![
            outcome("classification equals brute-force modules", scope.clone(), classification),
            outcome("pattern predicate equals brute-force primality", scope.clone(), primality),
            outcome("non-prime G_w has a run of length |w|-4", scope.clone(), long_run),
            outcome(
                "every module has one of the four shapes",
                format!("{scope}; module counts {}", exceptional.join(" ")),
                shapes,
            ),
        ],
    })
}

/// Realizer construction, interval confinement, permutation round trip, and
/// the independent orientation-search certification.
pub fn realizers_suite(max_len: usize) -> Result<SuiteReport> {
    let ws = words_up_to(1, max_len);
    let scope = format!("{} words, 1 <= |w| <= {max_len}", ws.len());
    let built = first_failure(&ws, |w| {
        let r = realizer::build_realizer(w)?;
        let g = Graph::from_word(w);
        if !realizer::verify_realizer(&g, &r) {
            return Ok(Some(format!("{w}: comparability graph differs")));
        }
        let last = w.len() as i64 - 1;
        Ok((!r.is_extremal(last)).then(|| format!("{w}: vertex {last} is not extremal")))
    })?;
    let confined = first_failure(&ws, |w| {
        if w.len() < 3 {
            return Ok(None);
        }
        let r = realizer::build_realizer(w)?;
        Ok(match realizer::interval_confinement_check(w, &r)? {
            ConfinementVerdict::Pass => None,
            ConfinementVerdict::Fail { k, vertex, order } => Some(format!("{w}: k={k} vertex {vertex} in {order}")),
        })
    })?;
    let round_trip = first_failure(&ws, |w| {
        let g = Graph::from_word(w);
        let r = realizer::build_realizer(w)?;
        let perm = realizer::permutation_from_realizer(&g, &r)?;
        let inv = realizer::inversion_graph(&perm).with_new_labels(r.l.clone())?;
        Ok((inv.edges() != g.edges()).then(|| format!("{w}: inversion graph differs")))
    })?;
    let orientation = first_failure(&ws, |w| {
        let g = Graph::from_word(w);
        let ok = realizer::is_permutation_graph(&g, DEFAULT_ORIENTATION_BUDGET)?;
        Ok((!ok).then(|| format!("{w}: no transitive orientation of G_w or its complement")))
    })?;
    Ok(SuiteReport {
        suite: "realizers".into(),
        checks: vec![
            outcome("realizer verifies and the last vertex is extremal", scope.clone(), built),
            outcome("interval confinement", scope.clone(), confined),
            outcome("permutation inversion graph equals G_w", scope.clone(), round_trip),
            outcome("G_w and its complement are comparability graphs", scope, orientation),
        ],
    })
}

/// Seeds of smallest period exactly `p`.
pub fn primitive_seeds(p: usize) -> Vec<FiniteWord> {
    FiniteWord::all_of_length(p)
        .filter(|s| WordStream::Periodic(s.clone()).period() == Some(p))
        .collect()
}

/// Word bounds of every periodic stream with period `p <= max_period`, up to
/// length `p + 3`, have length at most `p`.
pub fn periodic_word_bounds_check(max_period: usize) -> Result<Check> {
    let mut seeds = 0;
    let mut failure = None;
    for p in 1..=max_period {
        for seed in primitive_seeds(p) {
            seeds += 1;
            let stream = WordStream::Periodic(seed.clone());
            let max_len = p + 3;
            let window = 2 * (p + max_len);
            let bounds = words::word_bounds(&stream, max_len, window)?;
            if let Some(long) = bounds.iter().find(|b| b.len() > p) {
                failure.get_or_insert(format!("seed {seed}: bound {long} of length {}", long.len()));
            }
        }
    }
    Ok(outcome(
        "periodic word bounds have length at most the period",
        format!("{seeds} primitive seeds, period <= {max_period}, bounds up to length p+3"),
        failure,
    ))
}

/// Linear forests: maximum degree at most 2 and no cycle.
pub fn is_linear_forest(g: &Graph) -> bool {
    let n = g.order();
    if (0..n).any(|v| g.degree(v) > 2) {
        return false;
    }
    // With max degree 2 a component is a path iff it has one edge fewer than
    // vertices.
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let (mut verts, mut degs) = (0, 0);
        while let Some(v) = stack.pop() {
            verts += 1;
            degs += g.degree(v);
            for u in g.neighbors(v).iter() {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if degs / 2 != verts - 1 {
            return false;
        }
    }
    true
}

/// Bounds of the class of linear forests on at most `max_order` vertices,
/// by scanning every labelled graph.
pub fn linear_forest_bounds(max_order: usize) -> Result<BTreeSet<CanonicalForm>> {
    if max_order > 8 {
        return Err(Error::Budget {
            what: "order for the labelled-graph scan",
            limit: 8,
        });
    }
    let mut out = BTreeSet::new();
    for k in 1..=max_order {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        let found: Vec<Result<Option<CanonicalForm>>> = (0u64..1 << pairs.len())
            .into_par_iter()
            .map(|code| {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| code >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(k, &edges);
                if is_linear_forest(&g) || !(0..k).all(|v| is_linear_forest(&g.delete_index(v))) {
                    return Ok(None);
                }
                canonical_form(&g).map(Some)
            })
            .collect();
        for f in found {
            if let Some(key) = f? {
                out.insert(key);
            }
        }
    }
    Ok(out)
}

/// Short names for the small graphs that occur as bounds of the path age.
pub fn describe_small_graph(g: &Graph) -> String {
    let n = g.order();
    let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let connected = {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        if n > 0 {
            seen[0] = true;
        }
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v).iter() {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    if n >= 3 && connected && degs.iter().all(|&d| d == 2) {
        return if n == 3 { "K3".into() } else { format!("C{n}") };
    }
    if n >= 2 && g.edge_count() == n - 1 && degs.iter().filter(|&&d| d == n - 1).count() == 1 {
        return format!("K1,{}", n - 1);
    }
    format!("graph(order {n}, edges {:?})", g.edges())
}

/// Bound search on the path age against the labelled-graph oracle.
pub fn path_age_bounds_check(max_order: usize, window: usize) -> Result<Check> {
    let stream: WordStream = "periodic:1".parse()?;
    let report = ages::age_bounds(&stream, max_order, window)?;
    let found: BTreeSet<CanonicalForm> = report
        .bounds
        .iter()
        .map(canonical_form)
        .collect::<Result<_>>()?;
    let oracle = linear_forest_bounds(max_order)?;
    let names: Vec<String> = report.bounds.iter().map(describe_small_graph).collect();
    let has_c4 = names.iter().any(|n| n == "C4");
    Ok(Check::new(
        "path age bounds match the linear-forest oracle",
        found == oracle,
        format!(
            "periodic:1, max_order {max_order}, window {window}: {{{}}}{}",
            names.join(", "),
            if has_c4 {
                "; C4 is a bound although the usual list starts at C5 and C6"
            } else {
                ""
            }
        ),
    ))
}

/// Bound counts of a stream at several orders, using default windows sized
/// for the largest order.
pub fn bound_counts(stream: &WordStream, orders: &[usize]) -> Result<Vec<(usize, usize, Option<usize>)>> {
    let top = *orders.iter().max().expect("at least one order");
    let window = default_window(stream, top);
    let catalog = ages::age_members(stream, top, window)?;
    let saturated = ages::saturation_check(stream, top, window, 2 * window)?;
    let all = ages::bounds_of_catalog(&catalog, saturated)?;
    Ok(orders
        .iter()
        .map(|&k| {
            let count = all.bounds.iter().filter(|g| g.order() <= k).count();
            (k, count, all.complete_up_to)
        })
        .collect())
}

fn counts_text(counts: &[(usize, usize, Option<usize>)]) -> String {
    let parts: Vec<String> = counts.iter().map(|(k, c, _)| format!("order<={k}: {c}")).collect();
    let sat = match counts.first().and_then(|c| c.2) {
        Some(k) => format!("saturated to {k}"),
        None => "saturation unknown".into(),
    };
    format!("{} ({sat})", parts.join(", "))
}

/// Periodic bound sets gain nothing between orders 6 and 7.
pub fn periodic_stability_check() -> Result<Check> {
    let mut pass = true;
    let mut details = Vec::new();
    for spec in ["periodic:01", "periodic:011"] {
        let stream: WordStream = spec.parse()?;
        let counts = bound_counts(&stream, &[5, 6, 7])?;
        pass &= counts[1].1 == counts[2].1 && counts[0].2.is_some();
        details.push(format!("{spec} {}", counts_text(&counts)));
    }
    Ok(Check::new("periodic bound sets stable from order 6 to 7", pass, details.join("; ")))
}

/// Fibonacci bound counts strictly increase over orders 5, 6, 7.
pub fn aperiodic_growth_check() -> Result<Check> {
    let counts = bound_counts(&WordStream::Fibonacci, &[5, 6, 7])?;
    let pass = counts[0].1 < counts[1].1 && counts[1].1 < counts[2].1 && counts[0].2.is_some();
    Ok(Check::new(
        "fibonacci bound count strictly increasing over orders 5, 6, 7",
        pass,
        format!("fibonacci {}", counts_text(&counts)),
    ))
}

/// First word bound of length at least `min_len`, shortlex order.
pub fn first_long_word_bound(stream: &WordStream, min_len: usize, max_len: usize, window: usize) -> Result<Option<FiniteWord>> {
    Ok(words::word_bounds(stream, max_len, window)?
        .into_iter()
        .find(|b| b.len() >= min_len))
}

/// Transfers the first word bound of length >= 10 to a graph bound.
pub fn transfer_check(spec: &str, window: usize) -> Result<Check> {
    let stream: WordStream = spec.parse()?;
    let name = format!("word bound transfer for {spec}");
    let Some(w) = first_long_word_bound(&stream, 10, 24, window)? else {
        return Ok(Check::new(&name, false, format!("no word bound of length 10..=24 in window {window}")));
    };
    let r = ages::bound_from_word_bound(&stream, &w, window)?;
    let failing: Vec<i64> = r.deletions_embed.iter().filter(|d| !d.1).map(|d| d.0).collect();
    Ok(Check::new(
        &name,
        r.verified,
        format!(
            "bound {w} (length {}), G_{{{}}} on {} vertices, embeds: {}, non-embedding deletions: {:?}, window {window}",
            w.len(),
            r.extended,
            r.graph.order,
            r.embeds_in_window,
            failing
        ),
    ))
}

pub fn bounds_periodic_suite(opts: &VerifyOptions) -> Result<SuiteReport> {
    Ok(SuiteReport {
        suite: "bounds-periodic".into(),
        checks: vec![
            periodic_word_bounds_check(opts.max_period)?,
            path_age_bounds_check(opts.path_bound_order, opts.path_bound_window)?,
            periodic_stability_check()?,
        ],
    })
}

pub fn bounds_aperiodic_suite() -> Result<SuiteReport> {
    Ok(SuiteReport {
        suite: "bounds-aperiodic".into(),
        checks: vec![
            aperiodic_growth_check()?,
            transfer_check("fibonacci", 400)?,
            transfer_check("thue-morse", 600)?,
        ],
    })
}

pub fn families_suite(n_max: usize) -> Result<SuiteReport> {
    let sweep = families::family_primality_sweep(n_max, DEFAULT_MODULE_BUDGET.max(2 * n_max + 1))?;
    let checks = Family::ALL
        .into_iter()
        .map(|f| {
            let rows: Vec<_> = sweep.iter().filter(|e| e.family == f).collect();
            let bad: Vec<String> = rows
                .iter()
                .filter(|e| !e.prime)
                .map(|e| format!("n={} module {:?}", e.n, e.module.as_deref().unwrap_or(&[])))
                .collect();
            let detail = if bad.is_empty() {
                format!("prime for 3 <= n <= {n_max}")
            } else {
                format!("not prime: {}", bad.join("; "))
            };
            Check::new(&format!("{f} is prime"), bad.is_empty(), detail)
        })
        .collect();
    Ok(SuiteReport {
        suite: "families".into(),
        checks,
    })
}

/// Every factor of length 10 of the stream, checked against the window.
pub fn rigidity_check(spec: &str, window: usize) -> Result<Check> {
    let stream: WordStream = spec.parse()?;
    let prefix = stream.prefix(window)?;
    let facs: Vec<FiniteWord> = words::factors(&prefix, 10)?.into_iter().collect();
    let mut total = 0;
    let mut failure = None;
    for w in &facs {
        match ages::embedding_rigidity_check(&stream, w, window, DEFAULT_NODE_LIMIT)? {
            RigidityVerdict::Pass { embeddings } => total += embeddings,
            RigidityVerdict::Fail { map, reason } => {
                failure.get_or_insert(format!("{w}: {reason} {map:?}"));
            }
            RigidityVerdict::Vacuous { reason } => {
                failure.get_or_insert(format!("{w}: hypothesis not met ({reason})"));
            }
        }
    }
    Ok(outcome(
        &format!("embeddings of G_w are rigid for {spec}"),
        format!("{} factors of length 10, {total} embeddings, window {window}", facs.len()),
        failure,
    ))
}

pub fn rigidity_suite() -> Result<SuiteReport> {
    Ok(SuiteReport {
        suite: "rigidity".into(),
        checks: vec![rigidity_check("periodic:011", 24)?, rigidity_check("periodic:0011", 28)?],
    })
}

pub fn jonsson_suite() -> Result<SuiteReport> {
    let fib = ages::jonsson_levels(&WordStream::Fibonacci, 12, 10_000)?;
    let levels_ok = fib.levels.iter().all(|&(n, c)| c == n + 1);
    let witnesses_ok = fib.witnesses.iter().all(|w| w.1.is_some());
    let per: Vec<String> = fib
        .witnesses
        .iter()
        .map(|(n, m)| format!("m({n})={}", m.map_or("-".into(), |m| m.to_string())))
        .collect();
    let p01 = ages::jonsson_levels(&"periodic:01".parse()?, 12, 1000)?;
    let flat = p01.levels.iter().all(|&(_, c)| c == 2);
    let shifts = words::distinct_shift_prefixes(&"periodic:011".parse()?, 12, 200)?;
    let fib_shifts: Vec<usize> = [4, 8, 12]
        .iter()
        .map(|&n| words::distinct_shift_prefixes(&WordStream::Fibonacci, n, 2000))
        .collect::<Result<_>>()?;
    Ok(SuiteReport {
        suite: "jonsson".into(),
        checks: vec![
            Check::new(
                "fibonacci level sizes are n+1 for n <= 12",
                levels_ok,
                format!("window 10000, sizes {:?}", fib.levels.iter().map(|l| l.1).collect::<Vec<_>>()),
            ),
            Check::new("fibonacci recurrence witnesses exist", witnesses_ok, per.join(" ")),
            Check::new(
                "periodic:01 has constant level size 2",
                flat,
                format!("sizes {:?}", p01.levels.iter().map(|l| l.1).collect::<Vec<_>>()),
            ),
            Check::new(
                "shifted prefixes: bounded for periodic, growing for fibonacci",
                shifts == 3 && fib_shifts.windows(2).all(|w| w[0] < w[1]),
                format!("periodic:011 {shifts} classes at n=12; fibonacci {fib_shifts:?} at n=4,8,12"),
            ),
        ],
    })
}

/// Factor separation transferred to age separation for a pair of streams.
pub fn inclusion_check(s1: &str, s2: &str, max_len: usize, window: usize) -> Result<Check> {
    let a: WordStream = s1.parse()?;
    let b: WordStream = s2.parse()?;
    let v = ages::factor_inclusion_check(&a, &b, max_len, window)?;
    let (pass, detail) = match v {
        InclusionVerdict::Included => (true, "factors included, nothing to separate".to_string()),
        InclusionVerdict::Separated {
            missing_factor, padding, ..
        } => (true, format!("{missing_factor} missing; G_{{{padding}{missing_factor}}} separates")),
        InclusionVerdict::Unknown { missing_factor } => (false, format!("{missing_factor} missing; no witness found")),
    };
    Ok(Check::new(&format!("age separation {s1} vs {s2}"), pass, detail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forest_predicate() {
        assert!(is_linear_forest(&Graph::path(5)));
        assert!(is_linear_forest(&Graph::empty(3)));
        assert!(!is_linear_forest(&Graph::cycle(4)));
        assert!(!is_linear_forest(&Graph::star(3)));
    }

    #[test]
    fn names_of_small_graphs() {
        assert_eq!(describe_small_graph(&Graph::complete(3)), "K3");
        assert_eq!(describe_small_graph(&Graph::cycle(5)), "C5");
        assert_eq!(describe_small_graph(&Graph::star(3)), "K1,3");
    }

    #[test]
    fn primitive_seed_counts() {
        // Necklace-free count of primitive words: 2, 2, 6, 12 for p = 1..4.
        let counts: Vec<usize> = (1..=4).map(|p| primitive_seeds(p).len()).collect();
        assert_eq!(counts, [2, 2, 6, 12]);
    }

    #[test]
    fn unknown_suite_is_usage_error() {
        assert!(matches!(run_suite("nope", &VerifyOptions::default()), Err(Error::Usage(_))));
    }
}

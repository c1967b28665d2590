//! `gmu`: command-line front end for words, chain graphs, realizers, ages and
//! the unavoidable families.
//!
//! Exit codes: 0 success, 1 property violation, 2 usage error, 3 budget
//! exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gmu_core::ages::{self, Membership};
use gmu_core::canon;
use gmu_core::embed::{self, DEFAULT_NODE_LIMIT};
use gmu_core::families::{self, Family, FamilySpec};
use gmu_core::graph::DEFAULT_MODULE_BUDGET;
use gmu_core::realizer::{self, Realizer, DEFAULT_ORIENTATION_BUDGET};
use gmu_core::structure;
use gmu_core::verify::{self, VerifyOptions};
use gmu_core::words::{self, Inexhaustibility};
use gmu_core::{Error, FiniteWord, Graph, Result, WordStream};

#[derive(Parser, Debug)]
#[command(name = "gmu", version, about = "0-1 words, chain graphs G_w, realizers and windowed ages")]
struct Cli {
    /// Emit one JSON document per result instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Finite words and word streams.
    #[command(subcommand)]
    Word(WordCmd),
    /// Graphs: construction, modules, primality, embeddings, canonical forms.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Two-dimensional realizers and comparability certification.
    #[command(subcommand)]
    Realizer(RealizerCmd),
    /// Windowed ages of G_mu.
    #[command(subcommand)]
    Age(AgeCmd),
    /// The unavoidable prime families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Property sweeps: modules, realizers, bounds-periodic,
    /// bounds-aperiodic, families, rigidity, jonsson, all.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    /// Distinct factors of length N of a finite word.
    Factors { word: FiniteWord, n: usize },
    /// All factors up to a length found in a stream prefix.
    FactorSet {
        stream: WordStream,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Minimal non-factors of a stream prefix.
    Bounds {
        stream: WordStream,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Smallest period of a finite word repeated at least twice.
    Period { word: FiniteWord },
    /// Recurrence function value R(n).
    Recur {
        stream: WordStream,
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        horizon: usize,
    },
    /// Whether every short factor v recurs as v..v in the window.
    Inexhaustible {
        stream: WordStream,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Longest runs of each letter.
    Runs { word: FiniteWord },
    /// Letter-wise complement.
    Complement { word: FiniteWord },
}

/// A graph given as a file (`-` for stdin), `word:<bits>` or
/// `family:<name>:<n>`, or via `--word`.
#[derive(Args, Debug)]
struct GraphInput {
    /// Graph source: path, `-`, `word:<bits>` or `family:<name>:<n>`.
    source: Option<String>,
    /// Shorthand for the graph G_w of a word.
    #[arg(long, conflicts_with = "source")]
    word: Option<FiniteWord>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        match (&self.word, &self.source) {
            (Some(w), _) => Ok(Graph::from_word(w)),
            (None, Some(s)) => load_graph(s),
            (None, None) => Err(Error::Usage("a graph source or --word is required".into())),
        }
    }

    fn word(&self) -> Result<FiniteWord> {
        if let Some(w) = &self.word {
            return Ok(w.clone());
        }
        match self.source.as_deref().and_then(|s| s.strip_prefix("word:")) {
            Some(bits) => bits.parse(),
            None => Err(Error::Usage("this command needs a word (--word or word:<bits>)".into())),
        }
    }
}

fn load_graph(source: &str) -> Result<Graph> {
    if let Some(bits) = source.strip_prefix("word:") {
        return Ok(Graph::from_word(&bits.parse()?));
    }
    if let Some(rest) = source.strip_prefix("family:") {
        let (name, n) = rest
            .rsplit_once(':')
            .ok_or_else(|| Error::Usage(format!("expected family:<name>:<n>, got {source:?}")))?;
        let n = n.parse().map_err(|_| Error::Usage(format!("bad family size {n:?}")))?;
        return families::generate(FamilySpec { family: name.parse()?, n });
    }
    Graph::parse_any(&read_source(source)?)
}

fn read_source(source: &str) -> Result<String> {
    let mut text = String::new();
    if source == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Usage(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(source).map_err(|e| Error::Usage(format!("reading {source}: {e}")))?;
    }
    Ok(text)
}

fn parse_labels(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Usage(format!("bad label {t:?}"))))
        .collect()
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Print a graph in text or JSON form.
    Build(GraphInput),
    Complement(GraphInput),
    /// Subgraph induced by a label set.
    Induced {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        set: String,
    },
    /// Nontrivial modules by exhaustive search, the closed-form
    /// classification for G_w (--classify), or a module test (--set).
    Modules {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, conflicts_with = "set")]
        classify: bool,
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MODULE_BUDGET)]
        budget: usize,
    },
    /// Primality by exhaustive search, or from the word patterns (--pattern).
    Prime {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        pattern: bool,
        #[arg(long, default_value_t = DEFAULT_MODULE_BUDGET)]
        budget: usize,
    },
    /// Primality of G_w when |w| exceeds the run bound of a stream by 4.
    Threshold {
        #[arg(long)]
        word: FiniteWord,
        /// Stream whose prefix supplies the run statistics.
        #[arg(long)]
        from: WordStream,
        #[arg(long, default_value_t = 200)]
        window: usize,
    },
    /// Which one-vertex deletions of a prime G_w stay prime.
    Deletions {
        #[arg(long)]
        word: FiniteWord,
    },
    /// Induced embedding of PATTERN into HOST.
    Embed {
        pattern: String,
        host: String,
        /// List every embedding.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Canonical form `order:hex` and the canonical graph.
    Canon(GraphInput),
}

#[derive(Args, Debug)]
struct RealizerInput {
    #[arg(long)]
    word: FiniteWord,
    /// Realizer file with `L:` and `M:` lines; built from the word if absent.
    #[arg(long)]
    realizer: Option<String>,
}

impl RealizerInput {
    fn load(&self) -> Result<Realizer> {
        match &self.realizer {
            Some(path) => read_source(path)?.parse(),
            None => realizer::build_realizer(&self.word),
        }
    }
}

#[derive(Subcommand, Debug)]
enum RealizerCmd {
    /// The realizer (L_w, M_w) of G_w.
    Build {
        #[arg(long)]
        word: FiniteWord,
    },
    /// Whether L and M realize G_w.
    Verify(RealizerInput),
    /// The permutation whose inversion graph is G_w.
    Perm(RealizerInput),
    /// Interval confinement of later vertices in L and M.
    Intervals(RealizerInput),
    /// Transitive orientation of a graph, if any.
    Comparability {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = DEFAULT_ORIENTATION_BUDGET)]
        budget: usize,
    },
    /// Whether a graph and its complement are comparability graphs.
    PermutationGraph {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = DEFAULT_ORIENTATION_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum AgeCmd {
    /// Iso-classes of induced subgraphs of the window graph.
    Members {
        stream: WordStream,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = ages::DEFAULT_TYPE_BUDGET)]
        budget: u64,
    },
    /// Whether a graph embeds into the window graph.
    Contains {
        stream: WordStream,
        graph: String,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Bounds of the windowed age up to an order.
    Bounds {
        stream: WordStream,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Graph bound built from a word bound.
    Transfer {
        stream: WordStream,
        #[arg(long)]
        word: FiniteWord,
        #[arg(long, default_value_t = 400)]
        window: usize,
    },
    /// Whether two windows give the same catalog.
    Saturate {
        stream: WordStream,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        w1: usize,
        #[arg(long)]
        w2: usize,
    },
    /// Shape of every embedding of G_w into the window graph.
    Rigidity {
        stream: WordStream,
        #[arg(long)]
        word: FiniteWord,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// If G_{b^4 w} embeds then b w is a factor, for b = 1, 0.
    Necessity {
        stream: WordStream,
        #[arg(long)]
        word: FiniteWord,
        #[arg(long, default_value_t = 400)]
        window: usize,
    },
    /// Factor counts per length and recurrence witnesses.
    Jonsson {
        stream: WordStream,
        #[arg(long, default_value_t = 12)]
        max_height: usize,
        #[arg(long, default_value_t = 10_000)]
        window: usize,
    },
    /// Separates two ages through a missing factor.
    Inclusion {
        first: WordStream,
        second: WordStream,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = 400)]
        window: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    /// One family member in graph text format.
    Gen { name: Family, n: usize },
    /// Primality of every family for 3 <= n <= N_MAX.
    Sweep {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// `family <name> <n>` is shorthand for `family gen <name> <n>`.
    #[command(external_subcommand)]
    Named(Vec<String>),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: String,
    /// Longest word in the module sweep.
    #[arg(long)]
    max_len: Option<usize>,
    /// Longest word in the realizer sweep.
    #[arg(long)]
    realizer_max_len: Option<usize>,
    #[arg(long)]
    max_period: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
}

/// Collects the results of one invocation.
struct Report {
    json: bool,
    text: Vec<String>,
    docs: Vec<Value>,
    ok: bool,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn doc(&mut self, v: Value) {
        self.docs.push(v);
    }

    fn fail(&mut self) {
        self.ok = false;
    }

    fn emit(&self) {
        if self.json {
            for d in &self.docs {
                println!("{d}");
            }
        } else {
            for l in &self.text {
                println!("{}", l.trim_end_matches('\n'));
            }
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports always serialize")
}

fn graph_out(r: &mut Report, g: &Graph) {
    r.line(g.to_text());
    r.doc(to_value(&g.to_doc()));
}

fn words_out(r: &mut Report, ws: impl IntoIterator<Item = FiniteWord>) {
    let ws: Vec<FiniteWord> = ws.into_iter().collect();
    for w in &ws {
        r.line(w.to_string());
    }
    r.doc(to_value(&ws));
}

fn finite_default(stream: &WordStream, fallback: usize) -> usize {
    stream.finite_len().unwrap_or(fallback)
}

fn run_word(cmd: WordCmd, r: &mut Report) -> Result<()> {
    match cmd {
        WordCmd::Factors { word, n } => words_out(r, words::factors(&word, n)?),
        WordCmd::FactorSet { stream, max_len, window } => {
            let window = window.unwrap_or_else(|| ages::default_window(&stream, max_len));
            words_out(r, words::factor_set(&stream, max_len, window)?);
        }
        WordCmd::Bounds { stream, max_len, window } => {
            let window = window.unwrap_or_else(|| ages::default_window(&stream, max_len));
            words_out(r, words::word_bounds(&stream, max_len, window)?);
        }
        WordCmd::Period { word } => {
            let p = words::detect_period(&word)?;
            r.line(p.map_or("none".to_string(), |p| p.to_string()));
            r.doc(json!({ "word": word, "period": p }));
        }
        WordCmd::Recur { stream, n, horizon } => {
            let v = words::recurrence_function(&stream, n, horizon)?;
            r.line(v.map_or("unknown".to_string(), |m| m.to_string()));
            r.doc(json!({ "stream": stream.to_string(), "n": n, "horizon": horizon, "recurrence": v }));
        }
        WordCmd::Inexhaustible { stream, max_len, window } => {
            let window = window.unwrap_or_else(|| finite_default(&stream, (3 * max_len).max(1000)));
            let v = words::is_inexhaustible_window(&stream, max_len, window)?;
            match &v {
                Inexhaustibility::Holds => r.line("holds"),
                Inexhaustibility::Fails { witness } => {
                    r.line(format!("fails {witness}"));
                    r.fail();
                }
                Inexhaustibility::Unknown { witness } => r.line(format!("unknown {witness}")),
            }
            r.doc(to_value(&v));
        }
        WordCmd::Runs { word } => {
            let s = words::run_stats(&word);
            r.line(format!("zeros {} ones {} l {}", s.max_zero_run, s.max_one_run, s.l_value));
            r.doc(to_value(&s));
        }
        WordCmd::Complement { word } => words_out(r, [words::complement_word(&word)]),
    }
    Ok(())
}

fn run_graph(cmd: GraphCmd, r: &mut Report) -> Result<()> {
    match cmd {
        GraphCmd::Build(input) => graph_out(r, &input.load()?),
        GraphCmd::Complement(input) => graph_out(r, &input.load()?.complement()),
        GraphCmd::Induced { input, set } => graph_out(r, &input.load()?.induced(&parse_labels(&set)?)?),
        GraphCmd::Modules {
            input,
            classify,
            set,
            budget,
        } => {
            if let Some(set) = set {
                let labels = parse_labels(&set)?;
                let m = input.load()?.is_module(&labels)?;
                r.line(if m { "module" } else { "not a module" });
                r.doc(json!({ "set": labels, "module": m }));
                if !m {
                    r.fail();
                }
            } else if classify {
                let ms = structure::classify_modules_gw(&input.word()?)?;
                for m in &ms {
                    r.line(m.to_string());
                }
                r.doc(to_value(&ms));
            } else {
                let ms = input.load()?.nontrivial_modules(budget)?;
                for m in &ms {
                    r.line(m.iter().map(i64::to_string).collect::<Vec<_>>().join(" "));
                }
                r.doc(json!({ "modules": ms }));
            }
        }
        GraphCmd::Prime { input, pattern, budget } => {
            let (prime, module) = if pattern {
                (structure::prime_gw_predicate(&input.word()?)?, None)
            } else {
                let m = input.load()?.nontrivial_modules(budget)?.into_iter().next();
                (m.is_none(), m)
            };
            match &module {
                Some(m) => r.line(format!(
                    "not prime: module {}",
                    m.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
                )),
                None => r.line(if prime { "prime" } else { "not prime" }),
            }
            r.doc(json!({ "prime": prime, "module": module }));
            if !prime {
                r.fail();
            }
        }
        GraphCmd::Threshold { word, from, window } => {
            let window = window.min(from.finite_len().unwrap_or(usize::MAX));
            let stats = words::run_stats(&from.prefix(window)?);
            let v = structure::check_length_threshold(&stats, &word)?;
            match &v {
                structure::ThresholdVerdict::Pass => r.line("pass"),
                structure::ThresholdVerdict::NotApplicable => r.line("not applicable"),
                structure::ThresholdVerdict::Fail { module } => {
                    r.line(format!("fail: module {module:?}"));
                    r.fail();
                }
            }
            r.doc(to_value(&v));
        }
        GraphCmd::Deletions { word } => {
            let d = structure::deletion_primality(&word)?;
            for (v, p) in &d.prime_after_deletion {
                r.line(format!("{v} {}", if *p { "prime" } else { "not prime" }));
            }
            r.line(format!("confined {}", d.confined));
            r.doc(to_value(&d));
            if !d.confined {
                r.fail();
            }
        }
        GraphCmd::Embed {
            pattern,
            host,
            all,
            node_limit,
        } => {
            let p = load_graph(&pattern)?;
            let h = load_graph(&host)?;
            let found = if all {
                embed::all_embeddings_parallel(&p, &h, node_limit)?
            } else {
                embed::embeds_with_limit(&p, &h, node_limit)?.into_iter().collect()
            };
            if found.is_empty() {
                r.line("no embedding");
                r.fail();
            }
            let docs: Vec<_> = found.iter().map(|e| e.to_doc(&p, &h)).collect();
            for d in &docs {
                let pairs: Vec<String> = d.map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                r.line(pairs.join(" "));
            }
            r.doc(json!({ "count": docs.len(), "embeddings": docs }));
        }
        GraphCmd::Canon(input) => {
            let key = canon::canonical_form(&input.load()?)?;
            r.line(key.to_string());
            let g = key.to_graph();
            r.line(g.to_text());
            r.doc(json!({ "order": key.order(), "key": key.hex(), "graph": g.to_doc() }));
        }
    }
    Ok(())
}

fn run_realizer(cmd: RealizerCmd, r: &mut Report) -> Result<()> {
    match cmd {
        RealizerCmd::Build { word } => {
            let rz = realizer::build_realizer(&word)?;
            r.line(rz.to_string());
            r.doc(to_value(&rz));
        }
        RealizerCmd::Verify(input) => {
            let rz = input.load()?;
            let ok = realizer::verify_realizer(&Graph::from_word(&input.word), &rz);
            r.line(if ok { "valid" } else { "invalid" });
            r.doc(json!({ "valid": ok }));
            if !ok {
                r.fail();
            }
        }
        RealizerCmd::Perm(input) => {
            let perm = realizer::permutation_from_realizer(&Graph::from_word(&input.word), &input.load()?)?;
            r.line(perm.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
            r.doc(json!({ "permutation": perm }));
        }
        RealizerCmd::Intervals(input) => {
            let v = realizer::interval_confinement_check(&input.word, &input.load()?)?;
            match &v {
                realizer::ConfinementVerdict::Pass => r.line("pass"),
                realizer::ConfinementVerdict::Fail { k, vertex, order } => {
                    r.line(format!("fail: k={k} vertex {vertex} inside the span in {order}"));
                    r.fail();
                }
            }
            r.doc(to_value(&v));
        }
        RealizerCmd::Comparability { input, budget } => match realizer::is_comparability(&input.load()?, budget)? {
            Some(p) => {
                let rel = p.relations();
                for (a, b) in &rel {
                    r.line(format!("{a} < {b}"));
                }
                r.doc(json!({ "comparability": true, "relations": rel }));
            }
            None => {
                r.line("not a comparability graph");
                r.doc(json!({ "comparability": false }));
                r.fail();
            }
        },
        RealizerCmd::PermutationGraph { input, budget } => {
            let ok = realizer::is_permutation_graph(&input.load()?, budget)?;
            r.line(if ok { "permutation graph" } else { "not a permutation graph" });
            r.doc(json!({ "permutation_graph": ok }));
            if !ok {
                r.fail();
            }
        }
    }
    Ok(())
}

fn run_age(cmd: AgeCmd, r: &mut Report) -> Result<()> {
    match cmd {
        AgeCmd::Members {
            stream,
            max_order,
            window,
            budget,
        } => {
            let window = window.unwrap_or_else(|| ages::default_window(&stream, max_order));
            let c = ages::age_members_with_budget(&stream, max_order, window, budget)?;
            for l in c.dump_lines() {
                r.line(l);
            }
            r.doc(c.to_json());
        }
        AgeCmd::Contains { stream, graph, window } => {
            let h = load_graph(&graph)?;
            let window = window.unwrap_or_else(|| ages::default_window(&stream, h.order()));
            let (m, host) = ages::age_contains(&stream, &h, window)?;
            match m {
                Membership::Yes(e) => {
                    let d = e.to_doc(&h, &host);
                    let pairs: Vec<String> = d.map.iter().map(|(a, b)| format!("{a}->{b}")).collect();
                    r.line(format!("yes {}", pairs.join(" ")));
                    r.doc(json!({ "verdict": "yes", "window": window, "witness": d }));
                }
                Membership::NoWithinWindow => {
                    r.line(format!("no_within_window {window}"));
                    r.doc(json!({ "verdict": "no_within_window", "window": window }));
                    r.fail();
                }
            }
        }
        AgeCmd::Bounds {
            stream,
            max_order,
            window,
        } => {
            let window = window.unwrap_or_else(|| ages::default_window(&stream, max_order));
            let b = ages::age_bounds(&stream, max_order, window)?;
            for g in &b.bounds {
                let edges: Vec<String> = g.edges().iter().map(|(x, y)| format!("{x}-{y}")).collect();
                r.line(format!("{} {}", g.order(), edges.join(" ")).trim_end().to_string());
            }
            r.line(format!(
                "complete_up_to {}",
                b.complete_up_to.map_or("unknown".to_string(), |k| k.to_string())
            ));
            r.doc(b.to_json());
        }
        AgeCmd::Transfer { stream, word, window } => {
            let t = ages::bound_from_word_bound(&stream, &word, window)?;
            r.line(format!("extended {}", t.extended));
            r.line(Graph::from_doc(&t.graph)?.to_text());
            r.line(format!("embeds_in_window {}", t.embeds_in_window));
            let bad: Vec<i64> = t.deletions_embed.iter().filter(|d| !d.1).map(|d| d.0).collect();
            r.line(format!("non_embedding_deletions {bad:?}"));
            r.line(if t.verified { "verified bound" } else { "not a bound" });
            r.doc(to_value(&t));
            if !t.verified {
                r.fail();
            }
        }
        AgeCmd::Saturate {
            stream,
            max_order,
            w1,
            w2,
        } => {
            let same = ages::saturation_check(&stream, max_order, w1, w2)?;
            r.line(if same { "saturated" } else { "not saturated" });
            r.doc(json!({ "saturated": same }));
            if !same {
                r.fail();
            }
        }
        AgeCmd::Rigidity {
            stream,
            word,
            window,
            node_limit,
        } => {
            let window = window.unwrap_or_else(|| ages::default_window(&stream, word.len() + 1));
            let v = ages::embedding_rigidity_check(&stream, &word, window, node_limit)?;
            match &v {
                ages::RigidityVerdict::Pass { embeddings } => r.line(format!("pass {embeddings} embeddings")),
                ages::RigidityVerdict::Fail { map, reason } => {
                    r.line(format!("fail: {reason} {map:?}"));
                    r.fail();
                }
                ages::RigidityVerdict::Vacuous { reason } => r.line(format!("vacuous: {reason}")),
            }
            r.doc(to_value(&v));
        }
        AgeCmd::Necessity { stream, word, window } => {
            let cases = ages::prefix_embedding_necessity_check(&stream, &word, window)?;
            for c in &cases {
                r.line(format!(
                    "{} embeds {} {} factor {} holds {}",
                    c.padded, c.embeds, c.factor, c.factor_in_window, c.holds
                ));
                if !c.holds {
                    r.fail();
                }
            }
            r.doc(to_value(&cases));
        }
        AgeCmd::Jonsson {
            stream,
            max_height,
            window,
        } => {
            let window = window.min(stream.finite_len().unwrap_or(usize::MAX));
            let j = ages::jonsson_levels(&stream, max_height, window)?;
            for ((n, c), (_, m)) in j.levels.iter().zip(&j.witnesses) {
                r.line(format!("{n} {c} {}", m.map_or("-".to_string(), |m| m.to_string())));
            }
            r.doc(to_value(&j));
        }
        AgeCmd::Inclusion {
            first,
            second,
            max_len,
            window,
        } => {
            let v = ages::factor_inclusion_check(&first, &second, max_len, window)?;
            match &v {
                ages::InclusionVerdict::Included => r.line("included"),
                ages::InclusionVerdict::Separated {
                    missing_factor, padding, ..
                } => r.line(format!("separated {missing_factor} padding {padding}")),
                ages::InclusionVerdict::Unknown { missing_factor } => r.line(format!("unknown {missing_factor}")),
            }
            r.doc(to_value(&v));
        }
    }
    Ok(())
}

fn run_family(cmd: FamilyCmd, r: &mut Report) -> Result<()> {
    let (family, n) = match cmd {
        FamilyCmd::Gen { name, n } => (name, n),
        FamilyCmd::Named(args) => match args.as_slice() {
            [name, n] => (
                name.parse()?,
                n.parse().map_err(|_| Error::Usage(format!("bad family size {n:?}")))?,
            ),
            _ => return Err(Error::Usage("expected `family <name> <n>`".into())),
        },
        FamilyCmd::Sweep { n_max } => {
            let budget = DEFAULT_MODULE_BUDGET.max(2 * n_max + 1);
            let rows = families::family_primality_sweep(n_max, budget)?;
            for e in &rows {
                let module = e
                    .module
                    .as_ref()
                    .map(|m| format!(" module {m:?}"))
                    .unwrap_or_default();
                r.line(format!(
                    "{} {} {}{module}",
                    e.family,
                    e.n,
                    if e.prime { "prime" } else { "not prime" }
                ));
                if !e.prime {
                    r.fail();
                }
            }
            r.doc(to_value(&rows));
            return Ok(());
        }
    };
    graph_out(r, &families::generate(FamilySpec { family, n })?);
    Ok(())
}

fn run_verify(args: VerifyArgs, r: &mut Report) -> Result<()> {
    let mut opts = VerifyOptions::default();
    if let Some(v) = args.max_len {
        opts.module_max_len = v;
    }
    if let Some(v) = args.realizer_max_len {
        opts.realizer_max_len = v;
    }
    if let Some(v) = args.max_period {
        opts.max_period = v;
    }
    if let Some(v) = args.n_max {
        opts.family_max_n = v;
    }
    for report in verify::run_suite(&args.suite, &opts)? {
        r.line(format!("suite {}", report.suite));
        for c in &report.checks {
            r.line(c.to_string());
        }
        if !report.passed() {
            r.fail();
        }
        r.doc(to_value(&report));
    }
    Ok(())
}

fn dispatch(cli: Cli, r: &mut Report) -> Result<()> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    }
    match cli.verb {
        Verb::Word(c) => run_word(c, r),
        Verb::Graph(c) => run_graph(c, r),
        Verb::Realizer(c) => run_realizer(c, r),
        Verb::Age(c) => run_age(c, r),
        Verb::Family(c) => run_family(c, r),
        Verb::Verify(a) => run_verify(a, r),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report {
        json: cli.json,
        text: Vec::new(),
        docs: Vec::new(),
        ok: true,
    };
    match dispatch(cli, &mut report) {
        Ok(()) => {
            report.emit();
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } => 3,
                _ => 2,
            })
        }
    }
}

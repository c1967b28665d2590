//! Finite 0-1 words, infinite word generators and windowed diagnostics.
//!
//! Infinite words are never materialised: every diagnostic works on a
//! prefix of explicit length (the *window*). Word sets are reported in
//! shortlex order (by length, then lexicographically), which is also the
//! [`Ord`] of [`FiniteWord`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`. The empty word is valid.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    bits: Vec<u8>,
}

impl FiniteWord {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::usage(format!("letter {b} is not 0 or 1")));
        }
        Ok(FiniteWord { bits })
    }

    pub fn empty() -> Self {
        FiniteWord { bits: Vec::new() }
    }

    pub fn constant(letter: u8, len: usize) -> Self {
        FiniteWord {
            bits: vec![letter & 1; len],
        }
    }

    /// All words of length `len`, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = FiniteWord> {
        assert!(len < 64, "word length {len} too large to enumerate");
        (0u64..1 << len).map(move |code| FiniteWord {
            bits: (0..len).map(|i| (code >> (len - 1 - i) & 1) as u8).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn letter(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> FiniteWord {
        FiniteWord {
            bits: self.bits[range].to_vec(),
        }
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        FiniteWord { bits }
    }

    pub fn push(&mut self, letter: u8) {
        self.bits.push(letter & 1);
    }

    pub fn is_factor_of(&self, other: &FiniteWord) -> bool {
        self.is_empty() || other.bits.windows(self.len()).any(|w| w == self.bits.as_slice())
    }

    /// Start positions of every occurrence of `self` in `text`.
    pub fn occurrences_in(&self, text: &FiniteWord) -> Vec<usize> {
        if self.is_empty() {
            return (0..=text.len()).collect();
        }
        text.bits
            .windows(self.len())
            .enumerate()
            .filter(|(_, w)| *w == self.bits.as_slice())
            .map(|(i, _)| i)
            .collect()
    }
}

impl Ord for FiniteWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for FiniteWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits.is_empty() {
            return f.write_str("-");
        }
        for &b in &self.bits {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for FiniteWord {
    type Err = Error;

    /// Accepts a bit string; `-` or the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(FiniteWord::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::parse(format!("invalid letter {other:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|bits| FiniteWord { bits })
    }
}

impl Serialize for FiniteWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Deterministic description of a (possibly infinite) 0-1 word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordStream {
    /// `seed` repeated forever; the seed is nonempty.
    Periodic(FiniteWord),
    /// A finite word; prefixes longer than the word are rejected.
    Finite(FiniteWord),
    Fibonacci,
    ThueMorse,
    /// Characteristic Sturmian word built by `s_{k+1} = s_k^{a_{k+1}} s_{k-1}`
    /// from `s_{-1} = 1`, `s_0 = 0`. The directive is repeated cyclically.
    Sturmian(Vec<u32>),
}

impl WordStream {
    pub fn periodic(seed: FiniteWord) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::usage("periodic seed must be nonempty"));
        }
        Ok(WordStream::Periodic(seed))
    }

    pub fn sturmian(directive: Vec<u32>) -> Result<Self> {
        if directive.is_empty() || directive.contains(&0) {
            return Err(Error::usage("sturmian directive must be a nonempty list of positive integers"));
        }
        Ok(WordStream::Sturmian(directive))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, WordStream::Finite(_))
    }

    /// Length of a finite stream, `None` for infinite ones.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            WordStream::Finite(w) => Some(w.len()),
            _ => None,
        }
    }

    /// Smallest period for periodic streams.
    pub fn period(&self) -> Option<usize> {
        match self {
            WordStream::Periodic(seed) => {
                let doubled = seed.concat(seed);
                (1..=seed.len()).find(|&p| {
                    seed.len() % p == 0 && (0..doubled.len() - p).all(|i| doubled.letter(i) == doubled.letter(i + p))
                })
            }
            _ => None,
        }
    }

    /// The letter at position `i`, or `None` past the end of a finite word.
    pub fn letter(&self, i: usize) -> Option<u8> {
        match self {
            WordStream::Periodic(seed) => Some(seed.letter(i % seed.len())),
            WordStream::Finite(w) => w.bits().get(i).copied(),
            WordStream::ThueMorse => Some((i.count_ones() & 1) as u8),
            WordStream::Fibonacci | WordStream::Sturmian(_) => Some(self.prefix(i + 1).ok()?.letter(i)),
        }
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> Result<FiniteWord> {
        match self {
            WordStream::Periodic(seed) => Ok(FiniteWord {
                bits: (0..len).map(|i| seed.letter(i % seed.len())).collect(),
            }),
            WordStream::Finite(w) => {
                if len > w.len() {
                    return Err(Error::usage(format!(
                        "window {len} exceeds the length {} of finite word {w}",
                        w.len()
                    )));
                }
                Ok(w.slice(0..len))
            }
            WordStream::ThueMorse => Ok(FiniteWord {
                bits: (0..len).map(|i| (i.count_ones() & 1) as u8).collect(),
            }),
            WordStream::Fibonacci => Ok(standard_word_prefix(&[1], len)),
            WordStream::Sturmian(directive) => Ok(standard_word_prefix(directive, len)),
        }
    }

    /// `l(mu)`: the longest run of a single letter among the factors.
    ///
    /// Exact for periodic and finite streams, `None` when unbounded (constant
    /// periodic streams). For the other generators the value is read off the
    /// `window` prefix.
    pub fn run_bound(&self, window: usize) -> Result<Option<usize>> {
        match self {
            WordStream::Periodic(seed) => {
                if seed.bits().iter().all(|&b| b == seed.letter(0)) {
                    return Ok(None);
                }
                Ok(Some(run_stats(&seed.concat(seed).concat(seed)).l_value))
            }
            WordStream::Finite(w) => Ok(Some(run_stats(w).l_value)),
            _ => Ok(Some(run_stats(&self.prefix(window)?).l_value)),
        }
    }
}

impl fmt::Display for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordStream::Periodic(w) => write!(f, "periodic:{w}"),
            WordStream::Finite(w) => write!(f, "finite:{w}"),
            WordStream::Fibonacci => f.write_str("fibonacci"),
            WordStream::ThueMorse => f.write_str("thue-morse"),
            WordStream::Sturmian(d) => {
                let parts: Vec<String> = d.iter().map(u32::to_string).collect();
                write!(f, "sturmian:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for WordStream {
    type Err = Error;

    /// Grammar: `finite:<bits>`, `periodic:<bits>`, `fibonacci`,
    /// `thue-morse`, `sturmian:<a1,a2,...>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "fibonacci" => return Ok(WordStream::Fibonacci),
            "thue-morse" => return Ok(WordStream::ThueMorse),
            _ => {}
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("unknown word spec {s:?}")))?;
        match kind {
            "finite" => Ok(WordStream::Finite(arg.parse()?)),
            "periodic" => WordStream::periodic(arg.parse()?),
            "sturmian" => {
                let directive = arg
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(format!("bad directive entry {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                WordStream::sturmian(directive)
            }
            other => Err(Error::parse(format!("unknown word kind {other:?}"))),
        }
    }
}

fn standard_word_prefix(directive: &[u32], len: usize) -> FiniteWord {
    let mut prev: Vec<u8> = vec![1];
    let mut cur: Vec<u8> = vec![0];
    let mut k = 0;
    while cur.len() < len {
        let a = directive[k % directive.len()] as usize;
        let mut next = Vec::with_capacity(cur.len() * a + prev.len());
        for _ in 0..a {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
        k += 1;
    }
    cur.truncate(len);
    FiniteWord { bits: cur }
}

/// Convergent `p/q` of the slope `[0; 1 + a_1, a_2, ...]` of the Sturmian
/// word with the given directive, using `depth` partial quotients.
pub fn sturmian_convergent(directive: &[u32], depth: usize) -> Result<(u128, u128)> {
    if directive.is_empty() || directive.contains(&0) || depth == 0 {
        return Err(Error::usage("need a positive directive and depth >= 1"));
    }
    // h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1, with a_0 = 0.
    let (mut h_prev, mut h) = (1u128, 0u128);
    let (mut k_prev, mut k) = (0u128, 1u128);
    for i in 0..depth {
        let a = directive[i % directive.len()] as u128 + u128::from(i == 0);
        let overflow = || Error::Budget {
            what: "convergent exceeds 128-bit arithmetic",
            limit: depth as u64,
        };
        let h_next = a.checked_mul(h).and_then(|x| x.checked_add(h_prev)).ok_or_else(overflow)?;
        let k_next = a.checked_mul(k).and_then(|x| x.checked_add(k_prev)).ok_or_else(overflow)?;
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
    Ok((h, k))
}

/// Prefix of the characteristic mechanical word
/// `c(n) = floor((n+2) p/q) - floor((n+1) p/q)` for the `depth`-th
/// convergent `p/q` of the directive's slope. Exact integer arithmetic.
pub fn sturmian_mechanical_prefix(directive: &[u32], len: usize, depth: usize) -> Result<FiniteWord> {
    let (p, q) = sturmian_convergent(directive, depth)?;
    let bits = (0..len as u128)
        .map(|n| ((n + 2) * p / q - (n + 1) * p / q) as u8)
        .collect();
    FiniteWord::new(bits)
}

/// Maximal runs of each letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunStats {
    pub max_zero_run: usize,
    pub max_one_run: usize,
    pub l_value: usize,
}

pub fn run_stats(w: &FiniteWord) -> RunStats {
    let mut best = [0usize; 2];
    let mut run = 0;
    for (i, &b) in w.bits().iter().enumerate() {
        run = if i > 0 && w.letter(i - 1) == b { run + 1 } else { 1 };
        best[b as usize] = best[b as usize].max(run);
    }
    RunStats {
        max_zero_run: best[0],
        max_one_run: best[1],
        l_value: best[0].max(best[1]),
    }
}

pub fn complement_word(w: &FiniteWord) -> FiniteWord {
    FiniteWord {
        bits: w.bits().iter().map(|b| b ^ 1).collect(),
    }
}

/// Distinct factors of `w` of length exactly `n`.
pub fn factors(w: &FiniteWord, n: usize) -> Result<BTreeSet<FiniteWord>> {
    if n > w.len() {
        return Err(Error::usage(format!("factor length {n} exceeds word length {}", w.len())));
    }
    if n == 0 {
        return Ok(BTreeSet::from([FiniteWord::empty()]));
    }
    Ok(w.bits().windows(n).map(|s| FiniteWord { bits: s.to_vec() }).collect())
}

/// All factors of length `<= max_len` of the length-`window` prefix,
/// the empty word included.
pub fn factor_set(stream: &WordStream, max_len: usize, window: usize) -> Result<BTreeSet<FiniteWord>> {
    if window < max_len {
        return Err(Error::usage(format!("window {window} is shorter than max_len {max_len}")));
    }
    let prefix = stream.prefix(window)?;
    let mut out = BTreeSet::new();
    for n in 0..=max_len {
        out.extend(factors(&prefix, n)?);
    }
    Ok(out)
}

/// Words `v` with `|v| <= max_len` outside the windowed factor set whose two
/// maximal proper factors `v_0..v_{n-2}` and `v_1..v_{n-1}` are inside it.
pub fn word_bounds(stream: &WordStream, max_len: usize, window: usize) -> Result<BTreeSet<FiniteWord>> {
    let fac = factor_set(stream, max_len, window)?;
    let mut out = BTreeSet::new();
    for n in 1..=max_len {
        for head in fac.iter().filter(|x| x.len() == n - 1) {
            for letter in 0..2 {
                let mut v = head.clone();
                v.push(letter);
                if !fac.contains(&v) && fac.contains(&v.slice(1..n)) {
                    out.insert(v);
                }
            }
        }
    }
    Ok(out)
}

/// Smallest `p` with `1 <= p < |w|` and `w(i) = w(i+p)` wherever defined.
pub fn detect_period(w: &FiniteWord) -> Result<Option<usize>> {
    if w.is_empty() {
        return Err(Error::usage("the empty word has no period"));
    }
    Ok((1..w.len()).find(|&p| (0..w.len() - p).all(|i| w.letter(i) == w.letter(i + p))))
}

/// Smallest `m <= horizon` such that every length-`m` window of the
/// length-`horizon` prefix contains every length-`n` factor of that prefix.
pub fn recurrence_function(stream: &WordStream, n: usize, horizon: usize) -> Result<Option<usize>> {
    if horizon < n {
        return Err(Error::usage(format!("horizon {horizon} is shorter than n = {n}")));
    }
    let prefix = stream.prefix(horizon)?;
    Ok(recurrence_in_prefix(&prefix, n))
}

pub(crate) fn recurrence_in_prefix(prefix: &FiniteWord, n: usize) -> Option<usize> {
    let h = prefix.len();
    if n == 0 {
        return Some(0);
    }
    // gap[p]: distance from p to the next start, over the worst factor.
    let mut starts: BTreeMap<&[u8], Vec<usize>> = BTreeMap::new();
    for (i, s) in prefix.bits().windows(n).enumerate() {
        starts.entry(s).or_default().push(i);
    }
    let mut worst = vec![0usize; h - n + 1];
    for occ in starts.values() {
        let mut next = usize::MAX;
        let mut idx = occ.len();
        for p in (0..=h - n).rev() {
            while idx > 0 && occ[idx - 1] >= p {
                idx -= 1;
                next = occ[idx];
            }
            let gap = if next == usize::MAX || next < p { usize::MAX } else { next - p };
            worst[p] = worst[p].max(gap);
        }
    }
    // Window [p, p + m) holds a start in [p, p + m - n] iff worst[p] <= m - n.
    let mut prefix_max = Vec::with_capacity(worst.len());
    let mut acc = 0;
    for &g in &worst {
        acc = acc.max(g);
        prefix_max.push(acc);
    }
    (n..=h).find(|&m| prefix_max[h - m] <= m - n)
}

/// Outcome of the windowed inexhaustibility test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Inexhaustibility {
    Holds,
    /// `witness` provably has no `witness . w . witness` factor.
    Fails { witness: FiniteWord },
    /// The window ran out before a second occurrence of `witness` was seen.
    Unknown { witness: FiniteWord },
}

/// Checks that every factor `v` with `|v| <= max_len` has some `v w v` in
/// the length-`window` prefix. Only a finite stream whose whole word is in
/// the window can produce [`Inexhaustibility::Fails`].
pub fn is_inexhaustible_window(stream: &WordStream, max_len: usize, window: usize) -> Result<Inexhaustibility> {
    if window < 3 * max_len {
        return Err(Error::usage(format!("window {window} must be at least 3 * max_len = {}", 3 * max_len)));
    }
    let prefix = stream.prefix(window)?;
    let decisive = stream.finite_len() == Some(window);
    if prefix.is_empty() {
        return Ok(if decisive {
            Inexhaustibility::Fails { witness: FiniteWord::empty() }
        } else {
            Inexhaustibility::Unknown { witness: FiniteWord::empty() }
        });
    }
    for n in 1..=max_len.min(prefix.len()) {
        for v in factors(&prefix, n)? {
            let occ = v.occurrences_in(&prefix);
            let repeated = occ.iter().any(|&t| t >= occ[0] + n);
            if !repeated {
                return Ok(if decisive {
                    Inexhaustibility::Fails { witness: v }
                } else {
                    Inexhaustibility::Unknown { witness: v }
                });
            }
        }
    }
    Ok(Inexhaustibility::Holds)
}

/// Number of distinct factors of length `n` in the length-`window` prefix.
pub fn factor_complexity(stream: &WordStream, n: usize, window: usize) -> Result<usize> {
    Ok(factors(&stream.prefix(window)?, n)?.len())
}

/// Number of distinct length-`n` words read from shifts `0..shifts`.
///
/// Windowed stand-in for the number of distinct prefix sets of the shifted
/// words: bounded by the period for periodic words, growing with `n` for
/// aperiodic ones.
pub fn distinct_shift_prefixes(stream: &WordStream, n: usize, shifts: usize) -> Result<usize> {
    let prefix = stream.prefix(shifts + n)?;
    let set: BTreeSet<&[u8]> = (0..shifts).map(|s| &prefix.bits()[s..s + n]).collect();
    Ok(set.len())
}

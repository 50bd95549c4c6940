//! Multiset codes: parameters, minimum-distance decoding and an exhaustive
//! check of the insertion/deletion/substitution correction guarantee.
//!
//! A code with minimum distance `d` corrects every pattern of `s` insertions,
//! `rho` deletions and `t` substitutions with `2(s + rho + 2t) < d`, because
//! such a pattern moves the sent codeword by at most `s + rho + 2t`.
//! [`verify_correction_guarantee`] enumerates every reachable outcome for
//! every codeword and checks that the nearest-codeword decoder recovers it.

use std::collections::HashSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isomorphism::binomial;
use crate::multiset::{Alphabet, Multiset};

/// Default cap on enumerated channel outcomes.
pub const DEFAULT_WORK_BUDGET: u128 = 100_000_000;

/// A finite multiset code: an ordered list of distinct codewords over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    alphabet: Alphabet,
    codewords: Vec<Multiset>,
}

impl Codebook {
    pub fn new(alphabet: Alphabet, codewords: Vec<Multiset>) -> Result<Self> {
        if codewords.len() < 2 {
            return Err(Error::TooFewCodewords(codewords.len()));
        }
        for word in &codewords {
            if word.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch {
                    left: alphabet.size(),
                    right: word.alphabet().size(),
                });
            }
        }
        let mut seen = std::collections::HashMap::with_capacity(codewords.len());
        for (i, word) in codewords.iter().enumerate() {
            if let Some(first) = seen.insert(word, i) {
                return Err(Error::DuplicateCodeword { first, second: i });
            }
        }
        Ok(Codebook { alphabet, codewords })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn codewords(&self) -> &[Multiset] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Exact minimum pairwise distance over distinct codewords.
    pub fn min_distance(&self) -> u64 {
        let words = &self.codewords;
        (0..words.len())
            .into_par_iter()
            .map(|i| {
                words[i + 1..]
                    .iter()
                    .map(|w| words[i].distance_unchecked(w))
                    .min()
                    .unwrap_or(u64::MAX)
            })
            .min()
            .unwrap_or(u64::MAX)
    }

    /// `[n, k, d; l]` parameters and rate `k / (n l)`.
    pub fn parameters(&self) -> CodeParameters {
        let cards: Vec<u64> = self.codewords.iter().map(Multiset::cardinality).collect();
        let max_cardinality = cards.iter().copied().max().unwrap_or(0);
        let constant_cardinality = cards
            .iter()
            .all(|&c| c == cards[0])
            .then_some(cards[0]);
        let n = (self.alphabet.size() as f64).log2();
        let k = (self.codewords.len() as f64).log2();
        CodeParameters {
            n,
            k,
            min_distance: self.min_distance(),
            max_cardinality,
            rate: k / (n * max_cardinality as f64),
            constant_cardinality,
        }
    }

    /// Nearest codeword to `received`; ties go to the lowest index and are
    /// flagged by `unique == false`.
    pub fn decode(&self, received: &Multiset) -> Result<Decoded> {
        if received.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.size(),
                right: received.alphabet().size(),
            });
        }
        Ok(self.decode_unchecked(received))
    }

    fn decode_unchecked(&self, received: &Multiset) -> Decoded {
        let mut best = Decoded {
            index: 0,
            distance: u64::MAX,
            unique: false,
        };
        for (i, word) in self.codewords.iter().enumerate() {
            let d = word.distance_unchecked(received);
            if d < best.distance {
                best = Decoded {
                    index: i,
                    distance: d,
                    unique: true,
                };
            } else if d == best.distance {
                best.unique = false;
            }
        }
        best
    }

    /// Serializes to the line-oriented text format:
    /// a header `q=<int> count=<int>` followed by one roster per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("q={} count={}\n", self.alphabet.size(), self.codewords.len());
        for word in &self.codewords {
            out.push_str(&word.to_string());
            out.push('\n');
        }
        out
    }
}

/// A codebook read from text, with the optional `d=` claim from its header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodebookFile {
    pub codebook: Codebook,
    pub declared_min_distance: Option<u64>,
}

/// Parses the codebook text format. Blank lines and lines starting with `#`
/// are skipped. Errors carry 1-based line numbers.
pub fn parse_codebook(text: &str) -> Result<CodebookFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 1, message: "missing header".into() })?;
    let mut q = None;
    let mut count = None;
    let mut declared = None;
    for token in header.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::syntax(format!("expected key=value, got {token:?}")).at_line(header_line))?;
        let value: usize = value
            .parse()
            .map_err(|_| Error::syntax(format!("bad value for {key}: {value:?}")).at_line(header_line))?;
        match key {
            "q" => q = Some(value),
            "count" => count = Some(value),
            "d" => declared = Some(value as u64),
            other => {
                return Err(Error::syntax(format!("unknown header key {other:?}")).at_line(header_line))
            }
        }
    }
    let q = q.ok_or_else(|| Error::syntax("header lacks q=").at_line(header_line))?;
    let count = count.ok_or_else(|| Error::syntax("header lacks count=").at_line(header_line))?;
    let alphabet = Alphabet::new(q).map_err(|e| e.at_line(header_line))?;

    let mut codewords = Vec::with_capacity(count);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        codewords.push(Multiset::parse_roster(body, alphabet).map_err(|e| e.at_line(line))?);
    }
    if codewords.len() != count {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {count} codewords, found {}", codewords.len()),
        });
    }
    let codebook = Codebook::new(alphabet, codewords).map_err(|e| e.at_line(last_line))?;
    Ok(CodebookFile {
        codebook,
        declared_min_distance: declared,
    })
}

/// Code parameters `[n, k, d; l]` in bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodeParameters {
    /// `log2 |S|`.
    pub n: f64,
    /// `log2 |C|`.
    pub k: f64,
    pub min_distance: u64,
    pub max_cardinality: u64,
    pub rate: f64,
    pub constant_cardinality: Option<u64>,
}

impl fmt::Display for CodeParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.4}, {:.4}, {}; {}] rate={:.4}",
            self.n, self.k, self.min_distance, self.max_cardinality, self.rate
        )
    }
}

/// Counts of insertions, deletions and substitutions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ErrorPattern {
    pub insertions: u32,
    pub deletions: u32,
    pub substitutions: u32,
}

impl ErrorPattern {
    pub fn new(insertions: u32, deletions: u32, substitutions: u32) -> Self {
        ErrorPattern {
            insertions,
            deletions,
            substitutions,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == ErrorPattern::default()
    }

    /// `s + rho + 2t`: the largest distance the pattern can move a codeword.
    pub fn weight(&self) -> u64 {
        u64::from(self.insertions) + u64::from(self.deletions) + 2 * u64::from(self.substitutions)
    }

    /// True when `self <= other` in every component.
    pub fn within(&self, other: &ErrorPattern) -> bool {
        self.insertions <= other.insertions
            && self.deletions <= other.deletions
            && self.substitutions <= other.substitutions
    }
}

impl fmt::Display for ErrorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(s={},rho={},t={})",
            self.insertions, self.deletions, self.substitutions
        )
    }
}

/// True iff `2(s + rho + 2t) < d_min`.
pub fn guaranteed_correctable(min_distance: u64, pattern: ErrorPattern) -> bool {
    2 * pattern.weight() < min_distance
}

/// Result of nearest-codeword decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decoded {
    pub index: usize,
    pub distance: u64,
    pub unique: bool,
}

/// All vectors `v` with `0 <= v[i] <= bounds[i]` and `sum(v) = total`, in
/// lexicographic order.
pub(crate) fn bounded_compositions(bounds: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(bounds: &[u32], suffix_cap: &[u64], total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let pos = prefix.len();
        if pos == bounds.len() {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let rest_cap = suffix_cap[pos + 1];
        let low = u64::from(total).saturating_sub(rest_cap) as u32;
        let high = bounds[pos].min(total);
        for v in low..=high {
            prefix.push(v);
            go(bounds, suffix_cap, total - v, prefix, out);
            prefix.pop();
        }
    }
    let mut suffix_cap = vec![0u64; bounds.len() + 1];
    for i in (0..bounds.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + u64::from(bounds[i]);
    }
    let mut out = Vec::new();
    if suffix_cap[0] >= u64::from(total) {
        go(bounds, &suffix_cap, total, &mut Vec::with_capacity(bounds.len()), &mut out);
    }
    out
}

/// Upper bound on the number of element-level corruption choices for a word
/// of cardinality `card` over `q` symbols: which instances are deleted, which
/// survivors are substituted and by what, and which symbols are inserted.
pub fn outcome_count_bound(card: u64, q: usize, pattern: ErrorPattern) -> u128 {
    let s = u64::from(pattern.insertions);
    let rho = u64::from(pattern.deletions);
    let t = u64::from(pattern.substitutions);
    if rho + t > card {
        return 0;
    }
    let q = q as u64;
    let del = binomial(card, rho).unwrap_or(u128::MAX);
    let sub = binomial(card - rho, t).unwrap_or(u128::MAX);
    let repl = u128::from(q.saturating_sub(1)).checked_pow(t as u32).unwrap_or(u128::MAX);
    let ins = binomial(q + s - 1, s).unwrap_or(u128::MAX);
    del.saturating_mul(sub).saturating_mul(repl).saturating_mul(ins)
}

/// Every distinct multiset reachable from `sent` by exactly `pattern`:
/// `rho` element instances deleted, then `t` surviving instances each replaced
/// by a different symbol, then `s` arbitrary symbols inserted. Sorted.
pub fn channel_outcomes(sent: &Multiset, pattern: ErrorPattern) -> Vec<Multiset> {
    let counts = sent.multiplicities();
    let q = counts.len();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let insertion_sets = bounded_compositions(&vec![pattern.insertions; q], pattern.insertions);

    for deleted in bounded_compositions(counts, pattern.deletions) {
        let survivors: Vec<u32> = counts.iter().zip(&deleted).map(|(a, b)| a - b).collect();
        for substituted in bounded_compositions(&survivors, pattern.substitutions) {
            let base: Vec<u32> = survivors.iter().zip(&substituted).map(|(a, b)| a - b).collect();
            // Replacement multisets, one factor per substituted symbol.
            let mut partial: Vec<Vec<u32>> = vec![vec![0; q]];
            for (sym, &c) in substituted.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut bounds = vec![c; q];
                bounds[sym] = 0;
                let options = bounded_compositions(&bounds, c);
                partial = partial
                    .iter()
                    .flat_map(|p| {
                        options
                            .iter()
                            .map(move |o| p.iter().zip(o).map(|(a, b)| a + b).collect::<Vec<u32>>())
                    })
                    .collect();
            }
            for repl in &partial {
                for ins in &insertion_sets {
                    let y: Vec<u32> = (0..q).map(|i| base[i] + repl[i] + ins[i]).collect();
                    seen.insert(y);
                }
            }
        }
    }
    let mut out: Vec<Multiset> = seen
        .into_iter()
        .map(|c| Multiset::from_multiplicities(c).expect("alphabet is nonempty"))
        .collect();
    out.sort();
    out
}

/// Why an enumerated outcome failed the check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// `d(X, Y)` exceeded `s + rho + 2t`.
    DistanceBound,
    /// Two or more codewords tied for nearest.
    Tie,
    /// The nearest codeword was not the one sent.
    Misdecode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyFailure {
    pub codeword_index: usize,
    pub pattern: ErrorPattern,
    pub received: String,
    pub decoded_index: usize,
    pub distance_to_sent: u64,
    pub unique: bool,
    pub kind: FailureKind,
}

/// Outcome of [`verify_correction_guarantee`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    /// Minimum distance recomputed from the codewords.
    pub min_distance: u64,
    pub max_pattern: ErrorPattern,
    /// Patterns within `max_pattern` satisfying `2(s + rho + 2t) < d`.
    pub premise_patterns: Vec<ErrorPattern>,
    /// Every decoded outcome, clean transmissions included.
    pub checked_outcomes: u64,
    /// Outcomes produced by a nonzero premise pattern.
    pub premise_satisfied_outcomes: u64,
    pub failures: Vec<VerifyFailure>,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustively checks that nearest-codeword decoding recovers every codeword
/// uniquely under every pattern `p <= max_pattern` with `2(s + rho + 2t) < d_min`.
///
/// Each outcome is also checked against the bound `d(X, Y) <= s + rho + 2t`.
/// Fails with [`Error::BudgetExceeded`] before doing any work when the
/// element-level outcome count exceeds `budget`.
pub fn verify_correction_guarantee(
    code: &Codebook,
    max_pattern: ErrorPattern,
    budget: u128,
) -> Result<VerifyReport> {
    let start = Instant::now();
    let min_distance = code.min_distance();
    let mut premise_patterns = Vec::new();
    for s in 0..=max_pattern.insertions {
        for rho in 0..=max_pattern.deletions {
            for t in 0..=max_pattern.substitutions {
                let p = ErrorPattern::new(s, rho, t);
                if guaranteed_correctable(min_distance, p) {
                    premise_patterns.push(p);
                }
            }
        }
    }

    let q = code.alphabet().size();
    let required = code
        .codewords()
        .iter()
        .flat_map(|w| {
            premise_patterns
                .iter()
                .map(move |&p| outcome_count_bound(w.cardinality(), q, p))
        })
        .fold(0u128, u128::saturating_add);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let per_word: Vec<(u64, u64, Vec<VerifyFailure>)> = code
        .codewords()
        .par_iter()
        .enumerate()
        .map(|(index, sent)| {
            let mut checked = 0;
            let mut corrupted = 0;
            let mut failures = Vec::new();
            for &pattern in &premise_patterns {
                for received in channel_outcomes(sent, pattern) {
                    checked += 1;
                    if !pattern.is_zero() {
                        corrupted += 1;
                    }
                    let distance_to_sent = sent.distance_unchecked(&received);
                    let decoded = code.decode_unchecked(&received);
                    let kind = if distance_to_sent > pattern.weight() {
                        Some(FailureKind::DistanceBound)
                    } else if !decoded.unique {
                        Some(FailureKind::Tie)
                    } else if decoded.index != index {
                        Some(FailureKind::Misdecode)
                    } else {
                        None
                    };
                    if let Some(kind) = kind {
                        failures.push(VerifyFailure {
                            codeword_index: index,
                            pattern,
                            received: received.to_string(),
                            decoded_index: decoded.index,
                            distance_to_sent,
                            unique: decoded.unique,
                            kind,
                        });
                    }
                }
            }
            (checked, corrupted, failures)
        })
        .collect();

    let mut report = VerifyReport {
        min_distance,
        max_pattern,
        premise_patterns,
        checked_outcomes: 0,
        premise_satisfied_outcomes: 0,
        failures: Vec::new(),
        elapsed: 0.0,
    };
    for (checked, corrupted, failures) in per_word {
        report.checked_outcomes += checked;
        report.premise_satisfied_outcomes += corrupted;
        report.failures.extend(failures);
    }
    report.elapsed = start.elapsed().as_secs_f64();
    Ok(report)
}

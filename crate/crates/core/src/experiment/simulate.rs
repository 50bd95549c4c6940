use std::fmt;
use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{transmit_multiset, ChannelSpec, RngSeed};
use crate::constructions::{multiset_decode, subset_decode};
use crate::error::{Error, Result};
use crate::VERSION;

use super::source::{ConstructionKind, LoadedCode};

/// How received multisets are decoded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecoderKind {
    /// Exhaustive nearest-codeword search over the codebook.
    #[default]
    MinDistance,
    /// The construction's own two-stage decoder (tags, then inner code).
    Structured,
}

impl std::str::FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-distance" => Ok(DecoderKind::MinDistance),
            "structured" => Ok(DecoderKind::Structured),
            other => Err(Error::syntax(format!("unknown decoder {other:?}"))),
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecoderKind::MinDistance => "min-distance",
            DecoderKind::Structured => "structured",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    /// A unique but wrong codeword.
    Failure,
    /// No unique nearest codeword.
    Ambiguous,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Success => "success",
            Outcome::Failure => "failure",
            Outcome::Ambiguous => "ambiguous",
        })
    }
}

/// One Monte Carlo trial, as written to CSV.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRow {
    pub trial: u64,
    pub codeword_index: usize,
    pub s_eff: u32,
    pub rho_eff: u32,
    pub t_eff: u32,
    pub distance_to_sent: u64,
    pub decoded_index: Option<usize>,
    pub outcome: Outcome,
}

pub const CSV_COLUMNS: &str = "trial,codeword_index,s_eff,rho_eff,t_eff,distance_to_sent,decoded_index,outcome";

impl TrialRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.trial,
            self.codeword_index,
            self.s_eff,
            self.rho_eff,
            self.t_eff,
            self.distance_to_sent,
            self.decoded_index.map(|i| i.to_string()).unwrap_or_default(),
            self.outcome
        )
    }
}

/// Aggregate of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub trials: u64,
    pub decode_successes: u64,
    pub decode_failures: u64,
    pub ambiguous_decodes: u64,
    /// `(failures + ambiguous) / trials`.
    pub error_rate: f64,
    pub mean_insertions: f64,
    pub mean_deletions: f64,
    pub mean_substitutions: f64,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

impl TrialReport {
    fn from_rows(rows: &[TrialRow], elapsed: f64) -> Self {
        let trials = rows.len() as u64;
        let count = |o: Outcome| rows.iter().filter(|r| r.outcome == o).count() as u64;
        let mean = |f: fn(&TrialRow) -> u32| {
            rows.iter().map(|r| f64::from(f(r))).sum::<f64>() / trials.max(1) as f64
        };
        let failures = count(Outcome::Failure);
        let ambiguous = count(Outcome::Ambiguous);
        TrialReport {
            trials,
            decode_successes: count(Outcome::Success),
            decode_failures: failures,
            ambiguous_decodes: ambiguous,
            error_rate: (failures + ambiguous) as f64 / trials.max(1) as f64,
            mean_insertions: mean(|r| r.s_eff),
            mean_deletions: mean(|r| r.rho_eff),
            mean_substitutions: mean(|r| r.t_eff),
            elapsed,
        }
    }

    pub fn summary_line(&self) -> String {
        format!(
            "trials={} successes={} failures={} ambiguous={} error_rate={} mean_s={:.4} mean_rho={:.4} mean_t={:.4} elapsed={:.3}s",
            self.trials,
            self.decode_successes,
            self.decode_failures,
            self.ambiguous_decodes,
            self.error_rate,
            self.mean_insertions,
            self.mean_deletions,
            self.mean_substitutions,
            self.elapsed
        )
    }
}

#[derive(Debug, Clone)]
pub struct Simulation {
    pub rows: Vec<TrialRow>,
    pub report: TrialReport,
}

/// Runs `trials` independent trials: draw a codeword uniformly, send it
/// through the channel, decode, and compare.
///
/// Trial `i` draws all of its randomness from `seed.derive(i)`, so results do
/// not depend on the number of worker threads and rows come back in trial order.
pub fn simulate(
    code: &LoadedCode,
    spec: &ChannelSpec,
    trials: u64,
    seed: RngSeed,
    decoder: DecoderKind,
) -> Result<Simulation> {
    if trials == 0 {
        return Err(Error::syntax("trial count must be at least 1"));
    }
    if decoder == DecoderKind::Structured && code.inner.is_none() {
        return Err(Error::syntax("the structured decoder needs a named construction"));
    }
    let book = &code.codebook;
    for w in book.codewords() {
        spec.validate(w.cardinality(), book.alphabet())?;
    }

    let start = Instant::now();
    let rows = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<TrialRow> {
            let mut rng = seed.derive(trial).rng();
            let sent_index = rng.random_range(0..book.len());
            let sent = &book.codewords()[sent_index];
            let sent_tx = transmit_multiset(sent, spec, RngSeed(rng.random()))?;
            let received = &sent_tx.output;

            let (decoded_index, outcome) = match (decoder, &code.inner) {
                (DecoderKind::Structured, Some((kind, inner))) => {
                    let decoded = match kind {
                        ConstructionKind::Subset => subset_decode(inner, received, &mut rng)?.decoded,
                        ConstructionKind::Multiset => multiset_decode(inner, received)?.decoded,
                    };
                    let outcome = match decoded {
                        None => Outcome::Ambiguous,
                        Some(i) if i == sent_index => Outcome::Success,
                        Some(_) => Outcome::Failure,
                    };
                    (decoded, outcome)
                }
                _ => {
                    let d = book.decode(received)?;
                    let outcome = if !d.unique {
                        Outcome::Ambiguous
                    } else if d.index == sent_index {
                        Outcome::Success
                    } else {
                        Outcome::Failure
                    };
                    (Some(d.index), outcome)
                }
            };
            Ok(TrialRow {
                trial,
                codeword_index: sent_index,
                s_eff: sent_tx.effective.insertions,
                rho_eff: sent_tx.effective.deletions,
                t_eff: sent_tx.effective.substitutions,
                distance_to_sent: sent.distance(received)?,
                decoded_index,
                outcome,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = TrialReport::from_rows(&rows, start.elapsed().as_secs_f64());
    Ok(Simulation { rows, report })
}

/// Writes the per-trial CSV. Provenance goes in leading `#` lines, the
/// summary in trailing `#` lines; the data rows depend only on the config.
pub fn write_csv<W: Write>(out: &mut W, provenance: &str, sim: &Simulation) -> std::io::Result<()> {
    writeln!(out, "# mscodes {VERSION}")?;
    for line in provenance.lines() {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "{CSV_COLUMNS}")?;
    for row in &sim.rows {
        writeln!(out, "{}", row.to_csv())?;
    }
    writeln!(out, "# summary {}", sim.report.summary_line())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::CodeSource;

    fn hamming_subset() -> LoadedCode {
        "subset:hamming74".parse::<CodeSource>().unwrap().load().unwrap()
    }

    #[test]
    fn identity_channel_never_errs() {
        let code = hamming_subset();
        let sim = simulate(&code, &ChannelSpec::identity(), 500, RngSeed(1), DecoderKind::MinDistance).unwrap();
        assert_eq!(sim.report.decode_successes, 500);
        assert_eq!(sim.report.error_rate, 0.0);
    }

    #[test]
    fn correctable_deletions_never_err() {
        let code = hamming_subset();
        for decoder in [DecoderKind::MinDistance, DecoderKind::Structured] {
            let sim = simulate(&code, &ChannelSpec::exact(0, 2, 0), 2000, RngSeed(5), decoder).unwrap();
            assert_eq!(sim.report.error_rate, 0.0, "{decoder}");
            assert!(sim.rows.iter().all(|r| r.distance_to_sent == 2));
        }
    }

    #[test]
    fn beyond_the_guarantee_errors_appear() {
        let code = hamming_subset();
        let sim = simulate(&code, &ChannelSpec::exact(0, 3, 0), 2000, RngSeed(5), DecoderKind::MinDistance).unwrap();
        let r = &sim.report;
        assert_eq!(r.decode_successes + r.decode_failures + r.ambiguous_decodes, r.trials);
        assert!(r.ambiguous_decodes + r.decode_failures > 0);
    }

    #[test]
    fn rows_are_reproducible_and_ordered() {
        let code = hamming_subset();
        let spec = ChannelSpec::probabilistic(0.1, 0.05, 0.3).unwrap();
        let a = simulate(&code, &spec, 300, RngSeed(9), DecoderKind::MinDistance).unwrap();
        let b = simulate(&code, &spec, 300, RngSeed(9), DecoderKind::MinDistance).unwrap();
        assert_eq!(a.rows, b.rows);
        assert!(a.rows.iter().enumerate().all(|(i, r)| r.trial == i as u64));
    }

    #[test]
    fn structured_decoder_requires_construction() {
        let mut code = hamming_subset();
        code.inner = None;
        assert!(simulate(&code, &ChannelSpec::identity(), 1, RngSeed(0), DecoderKind::Structured).is_err());
        assert!(simulate(&hamming_subset(), &ChannelSpec::identity(), 0, RngSeed(0), DecoderKind::MinDistance).is_err());
    }

    #[test]
    fn csv_layout() {
        let code = hamming_subset();
        let sim = simulate(&code, &ChannelSpec::exact(0, 1, 0), 3, RngSeed(2), DecoderKind::MinDistance).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, "code=subset:hamming74 mode=exact s=0 rho=1 t=0 seed=2", &sim).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# mscodes "));
        assert_eq!(lines[1], "# code=subset:hamming74 mode=exact s=0 rho=1 t=0 seed=2");
        assert_eq!(lines[2], CSV_COLUMNS);
        assert_eq!(lines.len(), 7);
        let fields: Vec<&str> = lines[3].split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!((fields[0], fields[3], fields[5], fields[7]), ("0", "1", "1", "success"));
        assert_eq!(fields[1], fields[6]);
        assert!(lines[6].starts_with("# summary trials=3"));
    }
}

//! Seeded simulator for the permutation channel with insertions, deletions and
//! substitutions.
//!
//! Corruption is applied in a fixed order: deletions of uniformly chosen
//! element instances, then substitutions of uniformly chosen survivors (each
//! replaced by a uniformly chosen *different* symbol), then insertions of
//! symbols drawn from the insertion distribution. In probabilistic mode each
//! instance is deleted with probability `p_del`, each survivor is substituted
//! with probability `p_sub`, and the number of insertions is Poisson with mean
//! `ins_rate`. Inserted symbols may duplicate symbols already present.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so runs replay exactly from `(input, spec, seed)`.
//! Per-trial seeds are derived with the SplitMix64 finalizer, see
//! [`RngSeed::derive`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Poisson;

use crate::codebook::ErrorPattern;
use crate::error::{Error, Result};
use crate::isomorphism::{to_characteristic_vector, BinaryVector};
use crate::multiset::{Alphabet, Multiset};

/// A 64-bit seed for the channel RNG.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent child seed for trial `index` (SplitMix64 mix of the pair).
    pub fn derive(self, index: u64) -> RngSeed {
        let mut z = self
            .0
            .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RngSeed(z ^ (z >> 31))
    }
}

/// Distribution of inserted symbols.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum InsertionDistribution {
    #[default]
    Uniform,
    /// Relative weights for symbols `1..=q`.
    Weighted(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChannelMode {
    /// Exactly `s` insertions, `rho` deletions and `t` substitutions.
    Exact(ErrorPattern),
    Probabilistic {
        p_del: f64,
        p_sub: f64,
        ins_rate: f64,
    },
}

/// Channel configuration.
///
/// Serializes to a flat key-value line such as `mode=exact s=1 rho=2 t=0` or
/// `mode=prob p_del=0.1 p_sub=0.01 ins_rate=0.5`, optionally followed by
/// `ins_dist=w1:w2:...` for a weighted insertion distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    pub mode: ChannelMode,
    pub insertion_distribution: InsertionDistribution,
}

impl ChannelSpec {
    pub fn exact(insertions: u32, deletions: u32, substitutions: u32) -> Self {
        ChannelSpec {
            mode: ChannelMode::Exact(ErrorPattern::new(insertions, deletions, substitutions)),
            insertion_distribution: InsertionDistribution::Uniform,
        }
    }

    pub fn identity() -> Self {
        ChannelSpec::exact(0, 0, 0)
    }

    pub fn probabilistic(p_del: f64, p_sub: f64, ins_rate: f64) -> Result<Self> {
        let spec = ChannelSpec {
            mode: ChannelMode::Probabilistic {
                p_del,
                p_sub,
                ins_rate,
            },
            insertion_distribution: InsertionDistribution::Uniform,
        };
        spec.check_parameters()?;
        Ok(spec)
    }

    pub fn with_insertion_distribution(mut self, dist: InsertionDistribution) -> Self {
        self.insertion_distribution = dist;
        self
    }

    fn check_parameters(&self) -> Result<()> {
        if let ChannelMode::Probabilistic {
            p_del,
            p_sub,
            ins_rate,
        } = self.mode
        {
            for (name, p) in [("p_del", p_del), ("p_sub", p_sub)] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidChannelSpec(format!("{name}={p} is not in [0,1]")));
                }
            }
            if !ins_rate.is_finite() || ins_rate < 0.0 {
                return Err(Error::InvalidChannelSpec(format!(
                    "ins_rate={ins_rate} must be finite and nonnegative"
                )));
            }
        }
        if let InsertionDistribution::Weighted(w) = &self.insertion_distribution {
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) || w.iter().sum::<f64>() <= 0.0 {
                return Err(Error::InvalidChannelSpec(
                    "insertion weights must be nonnegative with a positive sum".into(),
                ));
            }
        }
        Ok(())
    }

    /// Checks the spec against an input of `cardinality` elements over `alphabet`.
    pub fn validate(&self, cardinality: u64, alphabet: Alphabet) -> Result<()> {
        self.check_parameters()?;
        let q = alphabet.size();
        let substitutes = match self.mode {
            ChannelMode::Exact(p) => {
                let removed = u64::from(p.deletions) + u64::from(p.substitutions);
                if removed > cardinality {
                    return Err(Error::InvalidChannelSpec(format!(
                        "rho + t = {removed} exceeds the {cardinality} transmitted elements"
                    )));
                }
                p.substitutions > 0
            }
            ChannelMode::Probabilistic { p_sub, .. } => p_sub > 0.0,
        };
        if substitutes && q < 2 {
            return Err(Error::InvalidChannelSpec(
                "substitutions need an alphabet of at least 2 symbols".into(),
            ));
        }
        if let InsertionDistribution::Weighted(w) = &self.insertion_distribution {
            if w.len() != q {
                return Err(Error::InvalidChannelSpec(format!(
                    "{} insertion weights for an alphabet of {q} symbols",
                    w.len()
                )));
            }
        }
        Ok(())
    }

    /// Reads the channel keys from a parsed key-value map, ignoring others.
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let get = |key: &str| map.get(key).map(String::as_str);
        let num = |key: &str, default: &str| -> Result<f64> {
            let raw = get(key).unwrap_or(default);
            raw.parse::<f64>()
                .map_err(|_| Error::InvalidChannelSpec(format!("{key}={raw} is not a number")))
        };
        let count = |key: &str| -> Result<u32> {
            let raw = get(key).unwrap_or("0");
            raw.parse::<u32>()
                .map_err(|_| Error::InvalidChannelSpec(format!("{key}={raw} is not a count")))
        };
        let mode = match get("mode") {
            Some("exact") => ChannelMode::Exact(ErrorPattern::new(count("s")?, count("rho")?, count("t")?)),
            Some("prob") => ChannelMode::Probabilistic {
                p_del: num("p_del", "0")?,
                p_sub: num("p_sub", "0")?,
                ins_rate: num("ins_rate", "0")?,
            },
            Some(other) => {
                return Err(Error::InvalidChannelSpec(format!("unknown mode {other:?}")))
            }
            None => return Err(Error::InvalidChannelSpec("missing mode=".into())),
        };
        let insertion_distribution = match get("ins_dist") {
            None | Some("uniform") => InsertionDistribution::Uniform,
            Some(raw) => InsertionDistribution::Weighted(
                raw.split(':')
                    .map(|w| {
                        w.parse::<f64>()
                            .map_err(|_| Error::InvalidChannelSpec(format!("bad weight {w:?}")))
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        let spec = ChannelSpec {
            mode,
            insertion_distribution,
        };
        spec.check_parameters()?;
        Ok(spec)
    }
}

/// Splits whitespace-separated `key=value` tokens into a map. Later keys win.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    text.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| Error::syntax(format!("expected key=value, got {tok:?}")))
        })
        .collect()
}

const CHANNEL_KEYS: [&str; 8] = ["mode", "s", "rho", "t", "p_del", "p_sub", "ins_rate", "ins_dist"];

impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let map = parse_key_values(s)?;
        if let Some(k) = map.keys().find(|k| !CHANNEL_KEYS.contains(&k.as_str())) {
            return Err(Error::InvalidChannelSpec(format!("unknown key {k:?}")));
        }
        ChannelSpec::from_map(&map)
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            ChannelMode::Exact(p) => write!(
                f,
                "mode=exact s={} rho={} t={}",
                p.insertions, p.deletions, p.substitutions
            )?,
            ChannelMode::Probabilistic {
                p_del,
                p_sub,
                ins_rate,
            } => write!(f, "mode=prob p_del={p_del} p_sub={p_sub} ins_rate={ins_rate}")?,
        }
        if let InsertionDistribution::Weighted(w) = &self.insertion_distribution {
            let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            write!(f, " ins_dist={}", parts.join(":"))?;
        }
        Ok(())
    }
}

/// A received multiset together with the events that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub output: Multiset,
    pub effective: ErrorPattern,
}

/// A received symbol sequence together with the events that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTransmission {
    pub output: Vec<usize>,
    pub effective: ErrorPattern,
}

fn pick_positions<R: Rng>(rng: &mut R, n: usize, exact: Option<u32>, p: f64) -> Vec<bool> {
    let mut marked = vec![false; n];
    match exact {
        Some(k) => {
            for i in rand::seq::index::sample(rng, n, k as usize) {
                marked[i] = true;
            }
        }
        None => {
            for m in marked.iter_mut() {
                *m = rng.random_bool(p);
            }
        }
    }
    marked
}

/// Applies delete -> substitute -> insert to an instance list (1-based symbols).
fn corrupt<R: Rng>(
    instances: &[usize],
    alphabet: Alphabet,
    spec: &ChannelSpec,
    rng: &mut R,
) -> Result<(Vec<usize>, ErrorPattern)> {
    let q = alphabet.size();
    let (exact, p_del, p_sub) = match spec.mode {
        ChannelMode::Exact(p) => (Some(p), 0.0, 0.0),
        ChannelMode::Probabilistic { p_del, p_sub, .. } => (None, p_del, p_sub),
    };

    let deleted = pick_positions(rng, instances.len(), exact.map(|p| p.deletions), p_del);
    let mut out: Vec<usize> = instances
        .iter()
        .zip(&deleted)
        .filter(|(_, &d)| !d)
        .map(|(&s, _)| s)
        .collect();
    let deletions = (instances.len() - out.len()) as u32;

    let substituted = pick_positions(rng, out.len(), exact.map(|p| p.substitutions), p_sub);
    let mut substitutions = 0;
    for (sym, _) in out.iter_mut().zip(&substituted).filter(|(_, &m)| m) {
        let k = rng.random_range(1..q);
        *sym = if k >= *sym { k + 1 } else { k };
        substitutions += 1;
    }

    let insertions = match (exact, &spec.mode) {
        (Some(p), _) => p.insertions,
        (None, ChannelMode::Probabilistic { ins_rate, .. }) if *ins_rate > 0.0 => {
            let poisson = Poisson::new(*ins_rate)
                .map_err(|e| Error::InvalidChannelSpec(format!("ins_rate: {e}")))?;
            poisson.sample(rng) as u32
        }
        _ => 0,
    };
    match &spec.insertion_distribution {
        InsertionDistribution::Uniform => {
            out.extend((0..insertions).map(|_| rng.random_range(1..=q)));
        }
        InsertionDistribution::Weighted(w) => {
            let dist = WeightedIndex::new(w)
                .map_err(|e| Error::InvalidChannelSpec(format!("insertion weights: {e}")))?;
            out.extend((0..insertions).map(|_| dist.sample(rng) + 1));
        }
    }

    Ok((
        out,
        ErrorPattern::new(insertions, deletions, substitutions),
    ))
}

/// Sends a multiset through the channel.
pub fn transmit_multiset(x: &Multiset, spec: &ChannelSpec, seed: RngSeed) -> Result<Transmission> {
    let alphabet = x.alphabet();
    spec.validate(x.cardinality(), alphabet)?;
    let instances: Vec<usize> = x.elements().collect();
    let mut rng = seed.rng();
    let (out, effective) = corrupt(&instances, alphabet, spec, &mut rng)?;
    Ok(Transmission {
        output: Multiset::from_elements(out, alphabet)?,
        effective,
    })
}

/// Sends a symbol sequence through the channel and returns the received
/// symbols in uniformly random order.
///
/// The multiset of the output equals [`transmit_multiset`] of the input's
/// multiset under the same spec and seed.
pub fn transmit_sequence(
    x: &[usize],
    alphabet: Alphabet,
    spec: &ChannelSpec,
    seed: RngSeed,
) -> Result<SequenceTransmission> {
    if let Some(&symbol) = x.iter().find(|&&s| !alphabet.contains(s)) {
        return Err(Error::SymbolOutOfRange {
            symbol,
            q: alphabet.size(),
        });
    }
    spec.validate(x.len() as u64, alphabet)?;
    // Order is discarded by the final shuffle, so corrupt the canonical order.
    let mut instances = x.to_vec();
    instances.sort_unstable();
    let mut rng = seed.rng();
    let (mut out, effective) = corrupt(&instances, alphabet, spec, &mut rng)?;
    out.shuffle(&mut rng);
    Ok(SequenceTransmission { output: out, effective })
}

/// Deletion-only transmission of a set, seen through characteristic vectors:
/// returns `(sent, received)`. Only 1 -> 0 transitions can occur.
pub fn z_channel_view(x: &Multiset, p_del: f64, seed: RngSeed) -> Result<(BinaryVector, BinaryVector)> {
    let sent = to_characteristic_vector(x)?;
    let spec = ChannelSpec::probabilistic(p_del, 0.0, 0.0)?;
    let received = transmit_multiset(x, &spec, seed)?;
    Ok((sent, to_characteristic_vector(&received.output)?))
}

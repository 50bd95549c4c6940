//! Multiset codes for permutation channels.
//!
//! A permutation channel delivers the symbols of a codeword in arbitrary
//! order, possibly after deleting, substituting or inserting some of them.
//! Because order carries no information, codewords are multisets over a
//! finite alphabet and the natural metric is the size of the symmetric
//! difference. This crate provides:
//!
//! - [`multiset`]: multisets, their operations and the metric;
//! - [`isomorphism`]: the maps to binary words (Hamming) and integer vectors
//!   (Manhattan), and the constant-sum sphere enumerator;
//! - [`codebook`]: codes, parameters, nearest-codeword decoding and an
//!   exhaustive check of the correction guarantee;
//! - [`constructions`]: sequence-number constructions over a classical inner
//!   code, with their structured decoders;
//! - [`channel`]: a seeded simulator for the channel;
//! - [`experiment`]: the drivers behind the `mscodes` command-line tool.

pub mod channel;
pub mod codebook;
pub mod constructions;
pub mod error;
pub mod experiment;
pub mod isomorphism;
pub mod multiset;

pub use codebook::{Codebook, CodeParameters, Decoded, ErrorPattern, VerifyReport};
pub use error::{Error, Result};
pub use multiset::{Alphabet, Multiset};

/// Crate version, embedded in experiment outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

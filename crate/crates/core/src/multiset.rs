//! Multisets over the alphabet `{1, ..., q}` and the symmetric-difference metric.
//!
//! A [`Multiset`] is stored as its dense multiplicity vector: entry `i` holds
//! the number of occurrences of symbol `i + 1`. Symbols are 1-based in every
//! public constructor, accessor and text form.

use std::fmt;

use crate::error::{Error, Result};

/// A finite alphabet `{1, ..., q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet(q))
    }

    /// Number of symbols.
    pub fn size(self) -> usize {
        self.0
    }

    pub fn contains(self, symbol: usize) -> bool {
        (1..=self.0).contains(&symbol)
    }

    pub fn symbols(self) -> impl Iterator<Item = usize> {
        1..=self.0
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={}", self.0)
    }
}

/// A finite multiset over an [`Alphabet`].
///
/// Values are immutable; every operation returns a new multiset. Equality,
/// hashing and ordering are those of the multiplicity vector, so two
/// multisets built from permutations of the same element list are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    counts: Vec<u32>,
}

impl Multiset {
    /// The empty multiset over `alphabet`.
    pub fn empty(alphabet: Alphabet) -> Self {
        Multiset {
            counts: vec![0; alphabet.size()],
        }
    }

    /// Builds a multiset from a list of 1-based symbols in any order.
    pub fn from_elements<I>(elements: I, alphabet: Alphabet) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut counts = vec![0u32; alphabet.size()];
        for symbol in elements {
            if !alphabet.contains(symbol) {
                return Err(Error::SymbolOutOfRange {
                    symbol,
                    q: alphabet.size(),
                });
            }
            let slot = &mut counts[symbol - 1];
            *slot = slot.checked_add(1).ok_or(Error::Overflow)?;
        }
        Ok(Multiset { counts })
    }

    /// Builds a multiset directly from its multiplicity vector.
    pub fn from_multiplicities(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Multiset { counts })
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet(self.counts.len())
    }

    /// Multiplicity vector, indexed by `symbol - 1`.
    pub fn multiplicities(&self) -> &[u32] {
        &self.counts
    }

    /// Number of occurrences of a 1-based `symbol`; zero outside the alphabet.
    pub fn multiplicity(&self, symbol: usize) -> u32 {
        symbol
            .checked_sub(1)
            .and_then(|i| self.counts.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// Total number of elements, counted with multiplicity.
    pub fn cardinality(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// True iff every multiplicity is 0 or 1.
    pub fn is_set(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// Elements in ascending order, repeated according to multiplicity.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c as usize))
    }

    /// Distinct symbols with nonzero multiplicity, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i + 1)
    }

    fn check_same_alphabet(&self, other: &Multiset) -> Result<()> {
        if self.counts.len() != other.counts.len() {
            return Err(Error::AlphabetMismatch {
                left: self.counts.len(),
                right: other.counts.len(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Multiset, f: impl Fn(u32, u32) -> u32) -> Result<Multiset> {
        self.check_same_alphabet(other)?;
        Ok(Multiset {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Entrywise maximum of multiplicities.
    pub fn union(&self, other: &Multiset) -> Result<Multiset> {
        self.zip_with(other, u32::max)
    }

    /// Entrywise minimum of multiplicities.
    pub fn intersection(&self, other: &Multiset) -> Result<Multiset> {
        self.zip_with(other, u32::min)
    }

    /// Entrywise `max(0, m_X - m_Y)`.
    pub fn difference(&self, other: &Multiset) -> Result<Multiset> {
        self.zip_with(other, u32::saturating_sub)
    }

    /// `(X \ Y) ∪ (Y \ X)`, i.e. entrywise `|m_X - m_Y|`.
    pub fn symmetric_difference(&self, other: &Multiset) -> Result<Multiset> {
        self.zip_with(other, u32::abs_diff)
    }

    /// Multiset sum (additive union): multiplicities add.
    pub fn sum(&self, other: &Multiset) -> Result<Multiset> {
        self.check_same_alphabet(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multiset { counts })
    }

    /// `d(X, Y) = |X △ Y|`.
    pub fn distance(&self, other: &Multiset) -> Result<u64> {
        self.check_same_alphabet(other)?;
        Ok(self.distance_unchecked(other))
    }

    pub(crate) fn distance_unchecked(&self, other: &Multiset) -> u64 {
        self.counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| u64::from(a.abs_diff(b)))
            .sum()
    }

    /// Parses the roster form `{1,2,2,3}` (any element order, whitespace allowed).
    pub fn parse_roster(text: &str, alphabet: Alphabet) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::syntax(format!("expected `{{...}}`, got {:?}", text.trim())))?;
        let symbols = parse_usize_list(inner)?;
        Multiset::from_elements(symbols, alphabet)
    }

    /// Parses the multiplicity-vector form `1,3,1,0`.
    pub fn parse_multiplicities(text: &str) -> Result<Self> {
        let counts = parse_usize_list(text)?
            .into_iter()
            .map(|c| u32::try_from(c).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Multiset::from_multiplicities(counts)
    }

    /// Renders the multiplicity vector as comma-separated decimals.
    pub fn multiplicities_string(&self) -> String {
        join_display(&self.counts)
    }
}

impl fmt::Display for Multiset {
    /// Sorted roster form, e.g. `{1,2,2,2,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn parse_usize_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<usize>()
                .map_err(|_| Error::syntax(format!("not a nonnegative integer: {tok:?}")))
        })
        .collect()
}

pub(crate) fn join_display<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

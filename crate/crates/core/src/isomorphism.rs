//! Structure-preserving maps between code spaces.
//!
//! Subsets of `{1..q}` correspond to binary words of length `q` (characteristic
//! vectors) and the set distance becomes the Hamming distance. Multisets
//! correspond to vectors in `Z_{>=0}^q` (multiplicity vectors) and the multiset
//! distance becomes the Manhattan distance. Constant-cardinality codes live on
//! the sphere `{x : sum(x) = l}`, enumerated by [`ConstantSumSphere`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::multiset::{join_display, parse_usize_list, Multiset};

/// A binary word of length `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector(Vec<u8>);

impl BinaryVector {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(char::from_digit(u32::from(b), 10).unwrap_or('?')));
        }
        Ok(BinaryVector(bits))
    }

    pub fn zeros(len: usize) -> Self {
        BinaryVector(vec![0; len])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }

    /// Entrywise XOR.
    pub fn xor(&self, other: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.len(), other.len())?;
        Ok(BinaryVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect(),
        ))
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryVector)
    }
}

/// A vector of nonnegative integers of length `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerVector(Vec<u32>);

impl IntegerVector {
    pub fn new(entries: Vec<u32>) -> Self {
        IntegerVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entry_sum(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_display(&self.0))
    }
}

impl FromStr for IntegerVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_usize_list(s)?
            .into_iter()
            .map(|v| u32::try_from(v).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(IntegerVector)
    }
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

/// Characteristic vector of a set; fails on proper multisets.
pub fn to_characteristic_vector(x: &Multiset) -> Result<BinaryVector> {
    x.multiplicities()
        .iter()
        .enumerate()
        .map(|(i, &m)| match m {
            0 | 1 => Ok(m as u8),
            _ => Err(Error::NotASet {
                symbol: i + 1,
                multiplicity: m,
            }),
        })
        .collect::<Result<Vec<_>>>()
        .map(BinaryVector)
}

/// The set whose characteristic vector is `v`.
pub fn from_characteristic_vector(v: &BinaryVector) -> Result<Multiset> {
    Multiset::from_multiplicities(v.0.iter().map(|&b| u32::from(b)).collect())
}

pub fn to_multiplicity_vector(x: &Multiset) -> IntegerVector {
    IntegerVector(x.multiplicities().to_vec())
}

pub fn from_multiplicity_vector(v: &IntegerVector) -> Result<Multiset> {
    Multiset::from_multiplicities(v.0.clone())
}

/// Number of positions where `u` and `v` differ.
pub fn hamming_distance(u: &BinaryVector, v: &BinaryVector) -> Result<usize> {
    check_len(u.len(), v.len())?;
    Ok(u.0.iter().zip(&v.0).filter(|(a, b)| a != b).count())
}

/// `sum_i |u_i - v_i|`.
pub fn manhattan_distance(u: &IntegerVector, v: &IntegerVector) -> Result<u64> {
    check_len(u.len(), v.len())?;
    Ok(u.0
        .iter()
        .zip(&v.0)
        .map(|(&a, &b)| u64::from(a.abs_diff(b)))
        .sum())
}

/// `C(n, k)`, or `None` on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Number of points on the sphere: `C(q + l - 1, l)`.
pub fn sphere_size(q: usize, l: usize) -> Option<u128> {
    if q == 0 {
        return Some(0);
    }
    binomial((q + l - 1) as u64, l as u64)
}

/// Lazily enumerates `{x in Z_{>=0}^q : sum(x) = l}` in lexicographic order.
///
/// The first vector is `(0, ..., 0, l)` and the last is `(l, 0, ..., 0)`.
#[derive(Debug, Clone)]
pub struct ConstantSumSphere {
    current: Option<Vec<u32>>,
}

impl ConstantSumSphere {
    pub fn new(q: usize, l: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let mut first = vec![0; q];
        first[q - 1] = l;
        Ok(ConstantSumSphere {
            current: Some(first),
        })
    }

    fn successor(x: &[u32]) -> Option<Vec<u32>> {
        let q = x.len();
        // Pivot: the last position before the final one whose suffix still has mass.
        let pivot = if q >= 2 && x[q - 1] > 0 {
            q - 2
        } else {
            let last_nonzero = x[..q.saturating_sub(1)].iter().rposition(|&v| v > 0)?;
            last_nonzero.checked_sub(1)?
        };
        let rest: u32 = x[pivot + 1..].iter().sum();
        let mut next = x.to_vec();
        next[pivot] += 1;
        next[pivot + 1..].iter_mut().for_each(|v| *v = 0);
        next[q - 1] = rest - 1;
        Some(next)
    }
}

impl Iterator for ConstantSumSphere {
    type Item = IntegerVector;

    fn next(&mut self) -> Option<IntegerVector> {
        let current = self.current.take()?;
        self.current = Self::successor(&current);
        Some(IntegerVector(current))
    }
}

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isomorphism::{binomial, sphere_size, ConstantSumSphere};

/// Sizes of the constant-cardinality code spaces for one `(q, l)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountsTable {
    pub q: usize,
    pub l: usize,
    /// `C(q, l)`.
    pub subsets_formula: u128,
    pub subsets_enumerated: u128,
    /// `C(q + l - 1, l)`.
    pub multisets_formula: u128,
    pub multisets_enumerated: u128,
}

impl CountsTable {
    /// Formula and enumeration agree, and multisets strictly outnumber
    /// subsets whenever `q >= 2` and `l >= 2`.
    pub fn consistent(&self) -> bool {
        let agree = self.subsets_formula == self.subsets_enumerated
            && self.multisets_formula == self.multisets_enumerated;
        let strict = self.q < 2 || self.l < 2 || self.multisets_enumerated > self.subsets_enumerated;
        agree && strict
    }
}

/// Counts `l`-subsets and `l`-multisets of a `q`-symbol alphabet both by
/// formula and by explicit enumeration.
pub fn enumerate_counts(q: usize, l: usize, budget: u128) -> Result<CountsTable> {
    if q == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let overflow = || Error::BudgetExceeded {
        required: u128::MAX,
        budget,
    };
    let multisets_formula = sphere_size(q, l).ok_or_else(overflow)?;
    let subsets_formula = binomial(q as u64, l as u64).ok_or_else(overflow)?;
    let required = multisets_formula + subsets_formula;
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let l32 = u32::try_from(l).map_err(|_| Error::Overflow)?;
    Ok(CountsTable {
        q,
        l,
        subsets_formula,
        subsets_enumerated: (0..q).combinations(l).count() as u128,
        multisets_formula,
        multisets_enumerated: ConstantSumSphere::new(q, l32)?.count() as u128,
    })
}

use std::str::FromStr;

use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::isomorphism::{from_multiplicity_vector, manhattan_distance, sphere_size, ConstantSumSphere, IntegerVector};
use crate::multiset::Alphabet;

/// Largest sphere the exhaustive search will take on.
pub const EXHAUSTIVE_SPHERE_LIMIT: u128 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchStrategy {
    /// Lexicographic scan, admitting each vector at distance `>= d` from all
    /// admitted ones.
    #[default]
    Greedy,
    /// Maximum-size code by branch and bound. Tiny spheres only.
    Exhaustive,
}

impl FromStr for SearchStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(SearchStrategy::Greedy),
            "exhaustive" => Ok(SearchStrategy::Exhaustive),
            other => Err(Error::syntax(format!("unknown strategy {other:?}"))),
        }
    }
}

/// Searches for a constant-cardinality multiset code of cardinality `l` over
/// `q` symbols with minimum distance at least `d`, working with multiplicity
/// vectors under the Manhattan metric.
pub fn search(q: usize, l: u32, d: u64, strategy: SearchStrategy, budget: u128) -> Result<Codebook> {
    let alphabet = Alphabet::new(q)?;
    let size = sphere_size(q, l as usize).unwrap_or(u128::MAX);
    let limit = match strategy {
        SearchStrategy::Greedy => budget,
        SearchStrategy::Exhaustive => budget.min(EXHAUSTIVE_SPHERE_LIMIT),
    };
    if size > limit {
        return Err(Error::BudgetExceeded {
            required: size,
            budget: limit,
        });
    }
    let sphere: Vec<IntegerVector> = ConstantSumSphere::new(q, l)?.collect();
    let far = |a: &IntegerVector, b: &IntegerVector| manhattan_distance(a, b).map(|x| x >= d).unwrap_or(false);

    let chosen: Vec<IntegerVector> = match strategy {
        SearchStrategy::Greedy => {
            let mut code: Vec<IntegerVector> = Vec::new();
            for v in sphere {
                if code.iter().all(|c| far(c, &v)) {
                    code.push(v);
                }
            }
            code
        }
        SearchStrategy::Exhaustive => {
            let n = sphere.len();
            let adjacent: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| i != j && far(&sphere[i], &sphere[j])).collect())
                .collect();
            let mut best = Vec::new();
            max_clique(&adjacent, &mut Vec::new(), (0..n).collect(), &mut best);
            best.into_iter().map(|i| sphere[i].clone()).collect()
        }
    };

    if chosen.len() < 2 {
        return Err(Error::NoValidCode(format!(
            "no two vectors with entry sum {l} over {q} symbols are at distance >= {d}"
        )));
    }
    let words = chosen
        .iter()
        .map(from_multiplicity_vector)
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(alphabet, words)
}

/// Largest clique, preferring the lexicographically first among equals.
fn max_clique(adj: &[Vec<bool>], current: &mut Vec<usize>, candidates: Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        best.clone_from(current);
    }
    for (pos, &v) in candidates.iter().enumerate() {
        // Even taking every remaining candidate cannot beat the best.
        if current.len() + candidates.len() - pos <= best.len() {
            return;
        }
        let next: Vec<usize> = candidates[pos + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
        current.push(v);
        max_clique(adj, current, next, best);
        current.pop();
    }
}

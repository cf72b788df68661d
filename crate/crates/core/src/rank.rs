//! Fitness ranking (minimization: rank 1 is the best, ties go to the lower
//! index).

use crate::error::{Error, Result};
use crate::Scalar;

/// Rank a population by fitness. Returns a vector where `ranks[i]` is the
/// 1-based rank of individual `i`; the ranks form a permutation of `1..=NP`.
pub fn rank_population<T: Scalar>(fitnesses: &[T]) -> Result<Vec<usize>> {
    for (index, f) in fitnesses.iter().enumerate() {
        if !f.is_finite() {
            return Err(Error::NonFinite { index });
        }
    }
    let mut order: Vec<usize> = (0..fitnesses.len()).collect();
    order.sort_by(|&a, &b| {
        fitnesses[a]
            .partial_cmp(&fitnesses[b])
            .expect("finite fitnesses compare")
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0usize; fitnesses.len()];
    for (rank_minus_one, &idx) in order.iter().enumerate() {
        ranks[idx] = rank_minus_one + 1;
    }
    Ok(ranks)
}

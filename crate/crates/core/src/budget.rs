//! Function-evaluation accounting and the per-run trace.

use crate::error::{Error, Result};

/// Fractions of the budget at which the best error is checkpointed for
/// convergence traces, in addition to every improvement.
pub const CHECKPOINT_FRACTIONS: [f64; 11] = [
    0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0,
];

/// Counts function evaluations against a hard limit and records the
/// best-error trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetCounter {
    consumed: u64,
    limit: u64,
    best_error: f64,
    checkpoints: Vec<(u64, f64)>,
    marks: Vec<u64>,
    next_mark: usize,
}

impl BudgetCounter {
    pub fn new(limit: u64) -> Self {
        assert!(limit > 0, "budget limit must be positive");
        let mut marks: Vec<u64> = CHECKPOINT_FRACTIONS
            .iter()
            .map(|f| ((limit as f64) * f).round().max(1.0) as u64)
            .collect();
        marks.dedup();
        Self {
            consumed: 0,
            limit,
            best_error: f64::INFINITY,
            checkpoints: Vec::new(),
            marks,
            next_mark: 0,
        }
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.consumed
    }

    pub fn is_exhausted(&self) -> bool {
        self.consumed >= self.limit
    }

    pub fn best_error(&self) -> f64 {
        self.best_error
    }

    pub fn checkpoints(&self) -> &[(u64, f64)] {
        &self.checkpoints
    }

    /// Claim one evaluation. Fails with `BudgetExhausted` when the limit is
    /// already reached; the caller must not evaluate in that case.
    pub(crate) fn claim(&mut self) -> Result<()> {
        if self.consumed >= self.limit {
            return Err(Error::BudgetExhausted {
                consumed: self.consumed,
                limit: self.limit,
            });
        }
        self.consumed += 1;
        Ok(())
    }

    /// Record the solution error of the evaluation just claimed.
    pub(crate) fn observe(&mut self, error: f64) {
        let improved = error < self.best_error;
        if improved {
            self.best_error = error;
        }
        let at_mark = self.next_mark < self.marks.len() && self.consumed == self.marks[self.next_mark];
        if at_mark {
            self.next_mark += 1;
        }
        if improved || at_mark {
            self.checkpoints.push((self.consumed, self.best_error));
        }
    }

    /// Best error known at the time `fe` evaluations had been consumed.
    pub fn error_at(&self, fe: u64) -> f64 {
        let mut best = f64::INFINITY;
        for &(at, err) in &self.checkpoints {
            if at > fe {
                break;
            }
            best = err;
        }
        best
    }
}

/// Everything a single run produces: the consumed budget, the improvement
/// trace and the final (floored) solution error.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub function: String,
    pub seed: u64,
    pub evaluations: u64,
    pub final_error: f64,
    /// (FE count, best error) at every improvement and at the fixed
    /// budget fractions.
    pub checkpoints: Vec<(u64, f64)>,
    /// Best error at each of `CHECKPOINT_FRACTIONS`, floored.
    pub convergence: Vec<f64>,
}

impl RunRecord {
    pub fn from_budget(
        algorithm: &str,
        function: &str,
        seed: u64,
        budget: &BudgetCounter,
        error_floor: f64,
    ) -> Self {
        let floor = |e: f64| if e < error_floor { 0.0 } else { e };
        let convergence = CHECKPOINT_FRACTIONS
            .iter()
            .map(|f| {
                let fe = ((budget.limit() as f64) * f).round().max(1.0) as u64;
                floor(budget.error_at(fe))
            })
            .collect();
        Self {
            algorithm: algorithm.to_string(),
            function: function.to_string(),
            seed,
            evaluations: budget.consumed(),
            final_error: floor(budget.best_error()),
            checkpoints: budget.checkpoints().to_vec(),
            convergence,
        }
    }
}

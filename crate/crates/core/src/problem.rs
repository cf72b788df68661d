//! Box-bounded minimization problems and budgeted evaluation.

use std::fmt;
use std::sync::Arc;

use crate::budget::BudgetCounter;
use crate::error::Result;
use crate::Scalar;

type Objective<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// A box-bounded minimization problem with a known optimum value.
///
/// The objective must be deterministic; problems are immutable and cheap to
/// share across runs and threads.
#[derive(Clone)]
pub struct Problem<T: Scalar> {
    name: String,
    dim: usize,
    lower: Vec<T>,
    upper: Vec<T>,
    objective: Objective<T>,
    optimum_value: T,
}

impl<T: Scalar> fmt::Debug for Problem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish()
    }
}

impl<T: Scalar> Problem<T> {
    pub fn new(
        name: impl Into<String>,
        lower: Vec<T>,
        upper: Vec<T>,
        optimum_value: T,
        objective: impl Fn(&[T]) -> T + Send + Sync + 'static,
    ) -> Self {
        assert_eq!(lower.len(), upper.len());
        assert!(!lower.is_empty(), "dimension must be positive");
        for (lo, hi) in lower.iter().zip(&upper) {
            assert!(*lo < *hi, "each lower bound must be below its upper bound");
        }
        Self {
            name: name.into(),
            dim: lower.len(),
            lower,
            upper,
            objective: Arc::new(objective),
            optimum_value,
        }
    }

    /// Uniform bounds [lo, hi] in every coordinate.
    pub fn with_uniform_bounds(
        name: impl Into<String>,
        dim: usize,
        lo: T,
        hi: T,
        optimum_value: T,
        objective: impl Fn(&[T]) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, vec![lo; dim], vec![hi; dim], optimum_value, objective)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn optimum_value(&self) -> T {
        self.optimum_value
    }

    pub fn contains(&self, x: &[T]) -> bool {
        x.len() == self.dim
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// Raw objective value, off budget. Used by construction-time checks and
    /// the diagnostics oracle; regular runs must go through [`evaluate`].
    pub fn eval_raw(&self, x: &[T]) -> T {
        (self.objective)(x)
    }

    /// Solution error of a fitness value: f(x) - f(x*), clamped at zero.
    pub fn error_of(&self, fitness: T) -> f64 {
        (fitness.as_f64() - self.optimum_value.as_f64()).max(0.0)
    }

    /// Sample a uniform random point inside the bounds.
    pub fn sample_uniform(&self, rng: &mut crate::RngStream) -> Vec<T> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
            .collect()
    }
}

/// Evaluate `x`, consuming one unit of budget and updating the best-error
/// trace. Returns `BudgetExhausted` without evaluating once the limit is hit.
pub fn evaluate<T: Scalar>(
    problem: &Problem<T>,
    x: &[T],
    budget: &mut BudgetCounter,
) -> Result<T> {
    debug_assert!(problem.contains(x), "evaluate expects an in-bounds point");
    budget.claim()?;
    let fitness = (problem.objective)(x);
    budget.observe(problem.error_of(fitness));
    Ok(fitness)
}

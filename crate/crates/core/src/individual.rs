//! Population member shared by the DE-family optimizers. ES and PSO carry
//! extra per-member state and define their own richer structs.

use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Individual<T: Scalar> {
    pub position: Vec<T>,
    pub fitness: Option<T>,
}

impl<T: Scalar> Individual<T> {
    pub fn new(position: Vec<T>) -> Self {
        Self { position, fitness: None }
    }

    pub fn evaluated(position: Vec<T>, fitness: T) -> Self {
        Self { position, fitness: Some(fitness) }
    }

    pub fn fitness(&self) -> Result<T> {
        self.fitness.ok_or(Error::Unevaluated)
    }

    /// Fitness of an individual the run has already evaluated.
    pub fn fitness_known(&self) -> T {
        self.fitness.expect("individual evaluated during initialization")
    }
}

/// Fitness vector of a fully evaluated population.
pub fn fitness_values<T: Scalar>(pop: &[Individual<T>]) -> Vec<T> {
    pop.iter().map(|ind| ind.fitness_known()).collect()
}

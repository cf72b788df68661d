//! The baseline optimizers, each exposed through [`Optimizer`]: a candidate
//! generator plus survivor integration. The selective-candidate wrapper
//! multiplies the generator by M; running the same hooks with one candidate
//! per slot reproduces the plain algorithm draw for draw.
//!
//! Per-generation draw order (the contract the wrapper relies on):
//! 1. `begin_generation` randomness (ES recombination; empty elsewhere),
//! 2. per-reproduction control parameters followed by operator randomness,
//!    slot by slot (candidate index outermost when several are requested),
//! 3. selection-rule randomness (nothing is drawn when only one candidate
//!    exists per slot),
//! 4. `integrate` randomness (archive trimming in the adaptive DEs).

pub mod de;
pub mod es;
pub mod pso;
mod adaptive;
pub mod jade;
pub mod lshade;
pub mod shade;

pub use adaptive::{lehmer_mean, weighted_arithmetic_mean, weighted_lehmer_mean, Successes};

use crate::budget::BudgetCounter;
use crate::error::Result;
use crate::rng::RngStream;
use crate::{Problem, Scalar};

/// Algorithm-specific payload a candidate carries beside its position.
#[derive(Debug, Clone, PartialEq)]
pub enum Payload<T: Scalar> {
    /// Classic DE and PSO draw no per-individual control parameters.
    None,
    /// Adaptive DE family: the (F, CR) pair actually used, fed back into
    /// parameter adaptation when the candidate succeeds.
    DeParams { f: T, cr: T },
    /// Self-adaptive ES: the mutated step sizes, inherited by the offspring.
    EsSigma(Vec<T>),
    /// PSO: the velocity that produced the new position.
    PsoVelocity(Vec<T>),
}

/// One trial solution produced by a reproduction, with the control
/// parameters it consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<T: Scalar> {
    pub position: Vec<T>,
    pub payload: Payload<T>,
}

/// A candidate together with its evaluated fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluated<T: Scalar> {
    pub candidate: Candidate<T>,
    pub fitness: T,
}

/// Candidate-generator view of a population-based optimizer.
///
/// A generation is driven as: `begin_generation`, any number of `reproduce`
/// calls per slot, evaluation of the chosen candidates, then `integrate`
/// with one outcome per slot (`None` when the budget ran out before the
/// slot's candidate could be evaluated; the incumbent survives unchanged).
pub trait Optimizer<T: Scalar> {
    /// Sample and evaluate the initial population.
    fn init(
        &mut self,
        problem: &Problem<T>,
        budget: &mut BudgetCounter,
        rng: &mut RngStream,
    ) -> Result<()>;

    /// Per-generation preparation (draws, if any, happen here first).
    fn begin_generation(&mut self, rng: &mut RngStream);

    /// Number of reproduction slots per generation (NP, or lambda for ES).
    fn offspring_count(&self) -> usize;

    /// Rank basis per slot for the similarity-selection rule; 1 is best.
    /// ES reports the averaged ranks of each recombination's two parents,
    /// which may be fractional.
    fn rank_values(&self) -> Result<Vec<f64>>;

    /// Produce one candidate for a slot, drawing fresh control parameters
    /// and operator randomness. Never evaluates.
    fn reproduce(&self, slot: usize, problem: &Problem<T>, rng: &mut RngStream) -> Candidate<T>;

    /// Distance reference point of a slot: the parent for the DE family,
    /// the recombined pre-mutation individual for ES, pbest for PSO.
    fn anchor(&self, slot: usize) -> &[T];

    /// Apply survivor selection and any state adaptation.
    fn integrate(
        &mut self,
        outcomes: Vec<Option<Evaluated<T>>>,
        budget: &BudgetCounter,
        rng: &mut RngStream,
    );
}

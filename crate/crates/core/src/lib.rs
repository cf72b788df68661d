//! Selective-candidate optimization with similarity selection.
//!
//! The crate wraps population-based optimizers (classic DE, a self-adaptive
//! (mu+lambda) ES, inertia-weight PSO, and the adaptive DEs JADE, SHADE and
//! L-SHADE) behind a common candidate-generator interface. The wrapper
//! produces M candidates per parent with independent control parameters and
//! operator draws, then keeps a single one per parent chosen by its
//! Euclidean distance to an anchor, conditioned on the parent's fitness
//! rank: well-ranked parents keep the closest candidate (local refinement),
//! poorly-ranked ones the farthest (basin jumping). Only the chosen
//! candidate is evaluated, so the evaluation cost per generation does not
//! grow with M.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64`/`*32` aliases at the crate root pin common instantiations. Runs
//! are deterministic: a seeded [`RngStream`] has a platform-independent
//! draw sequence, and the per-generation draw order is part of the
//! [`baselines::Optimizer`] contract, so a wrapper configured with M = 1
//! reproduces its baseline bit for bit.

pub mod baselines;
pub mod bench;
mod budget;
mod error;
mod individual;
mod num;
mod problem;
mod rank;
mod repair;
mod rng;
pub mod scss;

pub use budget::{BudgetCounter, RunRecord, CHECKPOINT_FRACTIONS};
pub use error::{Error, Result};
pub use individual::Individual;
pub use num::Scalar;
pub use problem::{evaluate, Problem};
pub use rank::rank_population;
pub use repair::{repair_bounds, RepairRule};
pub use rng::{derive_seed, RngStream};

pub type Problem64 = Problem<f64>;
pub type Problem32 = Problem<f32>;
pub type Individual64 = Individual<f64>;
pub type Individual32 = Individual<f32>;
pub type BenchFunction64 = bench::BenchFunction<f64>;
pub type BenchFunction32 = bench::BenchFunction<f32>;

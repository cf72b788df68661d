//! Benchmark suite, experiment runner and nonparametric statistics.

pub mod csv;
mod functions;
mod runner;
pub mod stats;

pub use functions::{random_rotation, BaseFunction, BenchFunction};
pub use runner::{
    run_experiment, run_one, AlgorithmConfig, BaselineSpec, ComparisonResult, DiagnosticsEntry,
    ExperimentResult, ExperimentSpec, FunctionSpec, DEFAULT_BUDGET_MULTIPLIER,
    DEFAULT_ERROR_FLOOR, DEFAULT_RUNS, SIGNIFICANCE_LEVEL,
};
pub use stats::{
    average_ranks, friedman_ranks, wilcoxon_signed_rank, Verdict, WilcoxonOutcome, EXACT_LIMIT,
};

use thiserror::Error;

/// Errors surfaced by the optimization core.
///
/// `BudgetExhausted` doubles as the normal run-termination signal: hitting
/// the evaluation limit is how every run ends.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("evaluation budget exhausted ({consumed} of {limit})")]
    BudgetExhausted { consumed: u64, limit: u64 },

    #[error("non-finite fitness encountered at index {index}")]
    NonFinite { index: usize },

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("population of {np} too small for {operation}")]
    PopulationTooSmall { np: usize, operation: &'static str },

    #[error("individual has no fitness yet")]
    Unevaluated,

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("incompatible inputs: {0}")]
    IncompatibleInputs(String),
}

pub type Result<T> = std::result::Result<T, Error>;

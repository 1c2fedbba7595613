use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("negative propagation time {0}")]
    NegativeTime(f64),

    #[error("rk4 step {dt} exceeds the stability bound {max}")]
    StepTooLarge { dt: f64, max: f64 },

    #[error("rk4 did not converge within {0} steps")]
    StepBudgetExceeded(u64),

    #[error("steady-state system is singular (reciprocal condition {rcond:e})")]
    DegenerateKernel { rcond: f64 },

    #[error("nullspace and long-time steady states disagree by {agreement:e}")]
    MethodDisagreement { agreement: f64 },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("time grid is empty")]
    EmptyGrid,

    #[error("time grid is invalid: {0}")]
    InvalidGrid(String),

    #[error("time grid is not uniform")]
    NonUniformGrid,

    #[error("no excited-state population")]
    NoExcitedPopulation,

    #[error("series has not settled: tail variation {variation:e} exceeds {limit:e}")]
    NotConverged { variation: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

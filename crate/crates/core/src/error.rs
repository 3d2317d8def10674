use thiserror::Error;

/// Crate-wide error type. Contract violations that a caller can trigger with
/// ordinary inputs are reported here; internal invariant breakage panics.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("expected arity {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("polynomial is not convenient: no pure power of variable {var}")]
    NotConvenient { var: usize },

    #[error("{0}")]
    InvalidInput(String),

    #[error("value is not a non-negative integer: {0}")]
    NonIntegral(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("solution set is positive-dimensional in the torus")]
    PositiveDimensional,

    #[error("point is not a singular point of the curve")]
    NotSingular,

    #[error("local Milnor numbers could not be certified: {0}")]
    MuDistributionAmbiguous(String),

    #[error("inconsistent results across generic draws: {0}")]
    GenericityFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by group arithmetic, the measure calculus, and the solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("coordinate shape mismatch: expected {expected} components, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("negative weight {weight} at atom {atom}")]
    NegativeWeight { atom: String, weight: f64 },

    #[error("density has no value at {0}")]
    MissingDensity(String),

    #[error("density must be strictly positive and finite, got {value} at {at}")]
    NonPositiveDensity { at: String, value: f64 },

    #[error("not absolutely continuous: atom {0} carries mass in the numerator but none in the base")]
    NotAbsolutelyContinuous(String),

    #[error("overlapping supports: shared atom {0}")]
    OverlappingSupports(String),

    #[error("empty support: {0}")]
    EmptySupport(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("operator is not invertible: {0}")]
    SingularOperator(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

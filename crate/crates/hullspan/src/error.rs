use thiserror::Error;

/// Errors shared by all geometry modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input violates a precondition (non-finite coordinates, zero-length
    /// rays, coincident points, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Input is geometrically degenerate for the requested operation
    /// (collinear circumcircle points, antipodal section plane, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Point set does not span the required dimension.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A general-position assumption does not hold for this input.
    #[error("general-position violation: {0}")]
    GeneralPosition(String),

    /// Two graph vertices have no connecting path.
    #[error("unreachable vertex pair: {0}")]
    Unreachable(String),

    /// A face or triangle sequence is not a valid chain.
    #[error("invalid chain: {0}")]
    InvalidChain(String),

    /// Scalar argument outside the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parametric construction is infeasible for the given parameters.
    #[error("construction error: {0}")]
    Construction(String),

    /// A randomized generator exhausted its retry budget.
    #[error("generation failed after {attempts} attempts (seed {seed}): {reason}")]
    Generation {
        attempts: u32,
        seed: u64,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

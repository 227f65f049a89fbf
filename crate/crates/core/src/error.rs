use thiserror::Error;

/// Errors produced by instance construction, solvers, policies and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("dimension mismatch: expected {expected} arms, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    #[error("enumeration too large: {count} candidate assignments exceeds limit {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("invalid policy configuration: {0}")]
    InvalidPolicy(String),

    #[error("outcome does not match the chosen assignment: {0}")]
    OutcomeMismatch(String),

    #[error("vacuous check: {0}")]
    Vacuous(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

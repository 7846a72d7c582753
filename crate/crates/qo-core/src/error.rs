use thiserror::Error;

/// Errors raised by spec loading, comparison, and the structural operations.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("element has {got} coordinates, spec expects {expected}")]
    CoordinateMismatch { expected: usize, got: usize },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("quotient side condition violated: {0}")]
    QuotientConditionViolated(String),

    #[error("unsupported spec: {0}")]
    UnsupportedSpec(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

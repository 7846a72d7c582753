//! Error type for the C-relation layer.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrelError {
    #[error(transparent)]
    Core(#[from] qo_core::CoreError),

    #[error(transparent)]
    Logic(#[from] qo_logic::LogicError),

    /// The valued part has no least nonzero element, so ball formulas
    /// over it cannot be lifted.
    #[error("no minimum: {0}")]
    NoMinimum(String),

    /// A windowed (inexact) set could not be certified as a disjoint
    /// union of swiss cheeses.
    #[error("not representable: {0}")]
    NotRepresentable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A formula outside the shape an operation accepts (wrong free
    /// variables, unexpected parameters).
    #[error("bad formula: {0}")]
    BadFormula(String),
}

pub type Result<T> = std::result::Result<T, CrelError>;

//! Error type for the logic layer.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LogicError {
    /// The source text does not match the formula grammar; `pos` is the
    /// byte offset of the offending token.
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    /// Evaluation met a variable or parameter with no assigned value.
    #[error("unbound variable {0}")]
    UnboundVariable(String),

    /// Quantifier elimination was asked for over a structure whose order
    /// is not a divisible ordered abelian group.
    #[error("not in the order fragment: {0}")]
    NotOrderFragment(String),

    #[error(transparent)]
    Core(#[from] qo_core::CoreError),
}

pub type Result<T> = std::result::Result<T, LogicError>;

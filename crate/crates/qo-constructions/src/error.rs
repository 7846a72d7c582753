//! Error type for the construction operations.

use qo_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructionError {
    /// A component of a lexicographic product (or the ordered factor of a
    /// glued product) has an element equivalent to its own negation.
    #[error("component {index} is not an ordered group: {detail}")]
    ComponentNotOrdered { index: usize, detail: String },

    /// A component of a valuational Hahn product (or the valued factor of a
    /// glued product) has a nonzero element not equivalent to its negation.
    #[error("component {index} is not valuational: {detail}")]
    ComponentNotValuational { index: usize, detail: String },

    /// A component of a compatible Hahn product fails the compatibility
    /// axioms on the window.
    #[error("component {index} is not compatible: {detail}")]
    ComponentNotCompatible { index: usize, detail: String },

    /// Recomposition was asked of a decomposition whose order-like part is
    /// not a recognizable direct summand.
    #[error("decomposition is not product-form: {0}")]
    NotProductForm(String),

    /// A structure-theorem clause failed on the window.
    #[error("structure clause {clause} fails at {witness}")]
    StructureViolation { clause: String, witness: String },

    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

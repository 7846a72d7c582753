//! Constructions on compatible quasi-ordered abelian groups.
//!
//! This crate builds composite groups out of verified parts and takes them
//! apart again:
//!
//! - [`lex_product`]: lexicographic product of ordered groups;
//! - [`val_hahn_product`]: valuational Hahn product of valued groups;
//! - [`compatible_product`]: an ordered group glued under a valued group
//!   (the direct sum whose order-like part is the first factor and whose
//!   quotient is the second);
//! - [`compatible_hahn_product`]: finite Hahn chains of arbitrary compatible
//!   components;
//! - [`decompose`] / [`recompose`]: the structure-theorem split of a
//!   compatible group into its order-like part and valued quotient, with
//!   window verification of the characterizing clauses, and the inverse
//!   gluing for product-form splits;
//! - [`arch_skeleton`]: the value chain and ribs of the archimedean
//!   coarsening of a torsion-free compatible group;
//! - [`verify_hahn_embedding`]: coordinate-level verification that a spec in
//!   Hahn-product coordinates embeds value-faithfully into the compatible
//!   Hahn product of its components.
//!
//! All operations take a [`qo_core::Window`] and verify their preconditions
//! there; none of them mutate their inputs.

pub mod decompose;
pub mod error;
pub mod products;
pub mod skeleton;

pub use decompose::{decompose, recompose, Decomposition};
pub use error::{ConstructionError, Result};
pub use products::{
    compatible_hahn_product, compatible_product, lex_product, trivial_group, val_hahn_product,
};
pub use skeleton::{arch_skeleton, verify_hahn_embedding, EmbeddingReport, Skeleton, SkeletonComponent};

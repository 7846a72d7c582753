//! C-relations induced by compatible quasi-ordered abelian groups.
//!
//! A compatible quasi-order on an abelian group induces a ternary
//! C-relation, and the quasi-order can be recovered from the relation by
//! quantifier-free formulas. This crate materializes both directions
//! ([`induce_c`], [`recover_qo`]), checks the C-relation axioms over
//! finite windows ([`check_c_axioms`]), and builds the geometric side of
//! the correspondence: ultrametric-style balls ([`Ball`]), their cone
//! dictionary, lifting of ball formulas along a valuational product
//! ([`lift_ball_formula`]), definable subsets in one variable
//! ([`definable_set`]), their swiss-cheese normal forms
//! ([`cheese_normal_form`]), and a desk-scale C-minimality probe
//! ([`cminimality_probe`]).

mod error;

pub mod balls;
pub mod cheese;
pub mod crel;
pub mod definable;
pub mod lift;
pub mod probe;

pub use balls::{ball_members, Ball, BallKind};
pub use cheese::{cheese_normal_form, SwissCheese};
pub use crel::{
    check_c_axioms, induce_c, plane_c, recover_from_c, recover_qo, CRelationView, CTable,
    RecoveredQo,
};
pub use definable::{definable_set, DefinableMode, DefinableSet};
pub use error::{CrelError, Result};
pub use lift::{lift_ball_formula, minimum_nonzero, BallFormula};
pub use probe::{cminimality_probe, ProbeReport};

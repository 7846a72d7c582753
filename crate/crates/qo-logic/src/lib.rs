//! First-order logic over quasi-ordered abelian groups.
//!
//! The language has `0`, `+`, `−`, and the quasi-order `<~`; the
//! surface syntax adds strict comparison `<<`, equivalence `~`, and
//! integer-scaled variables, all of which expand into the two core
//! atoms `t1 <~ t2` and `t = 0`. On top of the syntax the crate
//! provides:
//!
//! * windowed three-valued evaluation over any [`qo_core::GroupSpec`]
//!   ([`eval`]), exact on finite groups and witness-sound on infinite
//!   ones;
//! * quantifier elimination for divisible ordered abelian groups
//!   ([`qe_doag`]);
//! * the two reverse translations between a compatible group and its
//!   order-like part / valued quotient ([`relativize_o`],
//!   [`translate_v`]);
//! * Feferman–Vaught product decomposition ([`fv_decompose`]);
//! * seeded formula corpora and corpus-based elementary-equivalence
//!   reports at bounded quantifier rank ([`equiv_rank_k`]).
//!
//! # Grammar
//!
//! ```text
//! formula ::= quantified | or
//! quantified ::= ("EX" | "ALL") var "." formula
//! or      ::= and { "|" and }
//! and     ::= unary { "&" unary }
//! unary   ::= "!" unary | atom | "(" formula ")"
//! atom    ::= term ("<~" | "<<" | "~" | "=") term
//! term    ::= ["-"] addend { ("+" | "-") addend }
//! addend  ::= [int "*"] (var | param) | int | "(" term ")"
//! var     ::= "x" positive-int        param ::= "c" positive-int
//! ```
//!
//! The only integer literal allowed standing alone is `0`; other
//! constants must scale a variable (`3*x1`). `=` compares two terms
//! and is stored as `lhs - rhs = 0`.

mod corpus;
mod equiv;
mod error;
mod eval;
mod formula;
mod fv;
mod parser;
mod qe;
mod term;
mod translate;

pub use corpus::{
    load_lines, parse_lines, projected_pair_count, random_formula, render_lines, sample,
    shipped_onevar, shipped_onevar_profile, shipped_sentence_profile, shipped_sentences,
    shuffle_rng, CorpusProfile, SHIPPED_ONEVAR_COUNT, SHIPPED_ONEVAR_SEED,
    SHIPPED_SENTENCE_COUNT, SHIPPED_SENTENCE_SEED,
};
pub use equiv::{
    decide, equiv_rank_k, eval_ground, EquivReport, EquivUnknown, EquivWitness,
};
pub use error::{LogicError, Result};
pub use eval::{eval, eval_term, Assignment, Truth3};
pub use formula::{
    and, big_and, eq0, exists, falsity, forall, implies, in_o_part, le, lt, not, or, sim, truth,
    Formula, Quant,
};
pub use fv::{fv_decompose, fv_decompose_capped, pair_cap, FvPairs, DEFAULT_PAIR_CAP};
pub use parser::parse;
pub use qe::{qe_doag, qe_doag_over};
pub use term::{Term, VarId};
pub use translate::{relativize_o, translate_v};

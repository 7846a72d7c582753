//! Translations between a group and its two structural parts.
//!
//! A compatible quasi-ordered abelian group splits into an order-like
//! part `G°` (definable by `x = 0 | !(-x ~ x)`) and a valued quotient
//! `G/G°`. Both directions of transfer are purely syntactic:
//!
//! * [`relativize_o`] turns a formula `φ` into `φ°` with every
//!   quantifier restricted to `G°`, so that for tuples from `G°`,
//!   `G ⊨ φ°` exactly when `G° ⊨ φ`.
//! * [`translate_v`] turns `φ` into `φᵛ` so that for any tuple of coset
//!   representatives, `G ⊨ φᵛ` exactly when the quotient satisfies `φ`
//!   at the corresponding cosets. The choice of representatives does
//!   not matter.

use crate::formula::{self, Formula, Quant};
use crate::term::Term;

/// Relativizes every quantifier to the order-like part.
///
/// The formula is first brought to prenex form (quantifiers pulled out
/// over fresh bound variables), then each `EX v` becomes
/// `EX v. (v ∈ G°) & …` and each `ALL v` becomes
/// `ALL v. (v ∉ G°) | …`. Free variables are untouched, so the result
/// speaks about the same tuple.
pub fn relativize_o(f: &Formula) -> Formula {
    let (prefix, matrix) = f.prenex();
    let mut acc = matrix;
    for (q, v) in prefix.into_iter().rev() {
        let guard = formula::in_o_part(Term::var(v));
        acc = match q {
            Quant::Ex => formula::exists(v, formula::and(guard, acc)),
            Quant::All => formula::forall(v, formula::or(formula::not(guard), acc)),
        };
    }
    acc
}

/// Rewrites a formula about the valued quotient into one about coset
/// representatives in the whole group.
///
/// Atoms are replaced by their coset-invariant descriptions: `t = 0`
/// holds in the quotient exactly when `t` lands in the order-like part,
/// and `p <~ q` holds there exactly when either both sides collapse
/// into the order-like part or `q` stays outside it and `p <~ q`
/// already holds in the group. Connectives and quantifiers pass
/// through unchanged (quantifying over representatives is quantifying
/// over cosets).
pub fn translate_v(f: &Formula) -> Formula {
    match f {
        Formula::Eq0(t) => formula::in_o_part(t.clone()),
        Formula::Le(p, q) => {
            let both_inside = formula::and(
                formula::in_o_part(p.clone()),
                formula::in_o_part(q.clone()),
            );
            let outside_and_le = formula::and(
                formula::not(formula::in_o_part(q.clone())),
                formula::le(p.clone(), q.clone()),
            );
            formula::or(both_inside, outside_and_le)
        }
        Formula::Not(g) => formula::not(translate_v(g)),
        Formula::And(a, b) => formula::and(translate_v(a), translate_v(b)),
        Formula::Or(a, b) => formula::or(translate_v(a), translate_v(b)),
        Formula::Exists(v, g) => formula::exists(*v, translate_v(g)),
        Formula::ForAll(v, g) => formula::forall(*v, translate_v(g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn quantifier_free_formulas_relativize_to_themselves() {
        let f = parse("x1 <~ c1 & !(x2 = 0)").unwrap();
        assert_eq!(relativize_o(&f), f);
    }

    #[test]
    fn existential_gets_a_membership_guard() {
        let f = parse("EX x1. x1 = 0").unwrap();
        let out = relativize_o(&f);
        // Prenexing renames the binder to a fresh index.
        assert_eq!(
            out.to_string(),
            "EX x2. (x2 = 0 | !(-x2 <~ x2 & x2 <~ -x2)) & x2 = 0"
        );
    }

    #[test]
    fn universal_gets_a_membership_hypothesis() {
        let f = parse("ALL x1. 0 <~ x1").unwrap();
        let out = relativize_o(&f);
        assert_eq!(
            out.to_string(),
            "ALL x2. !(x2 = 0 | !(-x2 <~ x2 & x2 <~ -x2)) | 0 <~ x2"
        );
    }

    #[test]
    fn quotient_equality_becomes_membership() {
        let f = parse("x1 = 0").unwrap();
        let expected = parse("x1 = 0 | !(-x1 <~ x1 & x1 <~ -x1)").unwrap();
        assert_eq!(translate_v(&f), expected);
    }

    #[test]
    fn quotient_comparison_splits_on_membership_of_the_bound() {
        let p = Term::var(1);
        let q = Term::var(2);
        let out = translate_v(&formula::le(p.clone(), q.clone()));
        let expected = formula::or(
            formula::and(
                formula::in_o_part(p.clone()),
                formula::in_o_part(q.clone()),
            ),
            formula::and(
                formula::not(formula::in_o_part(q.clone())),
                formula::le(p, q),
            ),
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn connectives_pass_through_the_quotient_translation() {
        let f = parse("EX x1. !(x1 = 0) & x1 <~ x2").unwrap();
        let out = translate_v(&f);
        match out {
            Formula::Exists(1, body) => match *body {
                Formula::And(l, r) => {
                    assert_eq!(*l, formula::not(translate_v(&parse("x1 = 0").unwrap())));
                    assert_eq!(*r, translate_v(&parse("x1 <~ x2").unwrap()));
                }
                other => panic!("expected conjunction, got {other}"),
            },
            other => panic!("expected existential, got {other}"),
        }
    }
}

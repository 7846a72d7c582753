//! Quantifier elimination over divisible ordered abelian groups.
//!
//! Works by Fourier–Motzkin variable elimination on exact integer
//! coefficients: the innermost quantified variable is isolated in each
//! disjunct of a disjunctive normal form, equalities are substituted
//! away, and every lower/upper bound pair is cross-multiplied. The
//! output is equivalent to the input over every nontrivial divisible
//! ordered abelian group (density discharges strict bound pairs and
//! unboundedness discharges one-sided ones).

use crate::error::{LogicError, Result};
use crate::formula::{self, Formula};
use crate::term::{Term, VarId};
use qo_core::{GroupSpec, QoDef};

/// Literal forms used during elimination. `Nle(a, b)` is the negated
/// atom `!(a <~ b)`, which over a total order says `b << a`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Lit {
    Le(Term, Term),
    Nle(Term, Term),
    Eq(Term),
}

impl Lit {
    fn to_formula(&self) -> Formula {
        match self {
            Lit::Le(a, b) => formula::le(a.clone(), b.clone()),
            Lit::Nle(a, b) => formula::not(formula::le(a.clone(), b.clone())),
            Lit::Eq(t) => formula::eq0(t.clone()),
        }
    }
}

/// Eliminates every quantifier, recursing bottom-up.
pub fn qe_doag(f: &Formula) -> Result<Formula> {
    Ok(match f {
        Formula::Le(..) | Formula::Eq0(..) => f.clone(),
        Formula::Not(g) => formula::not(qe_doag(g)?),
        Formula::And(a, b) => formula::and(qe_doag(a)?, qe_doag(b)?),
        Formula::Or(a, b) => formula::or(qe_doag(a)?, qe_doag(b)?),
        Formula::Exists(v, g) => eliminate_exists(*v, &qe_doag(g)?),
        Formula::ForAll(v, g) => {
            formula::not(eliminate_exists(*v, &formula::not(qe_doag(g)?)))
        }
    })
}

/// Spec-aware entry point: refuses structures whose order is not a
/// divisible ordered abelian group presented as a plain lexicographic
/// layout, since elimination is only sound for the order fragment.
pub fn qe_doag_over(spec: &GroupSpec, f: &Formula) -> Result<Formula> {
    let plain_lex = matches!(
        spec.qo(),
        QoDef::Lex {
            degenerate_z2: false,
            mixed: false,
        }
    );
    if !plain_lex || spec.free_rank() == 0 || !spec.torsion_orders().is_empty() || !spec.divisible()
    {
        return Err(LogicError::NotOrderFragment(format!(
            "quantifier elimination needs a divisible ordered abelian group, \
             but the spec has free rank {}, torsion {:?}, divisible={}",
            spec.free_rank(),
            spec.torsion_orders(),
            spec.divisible(),
        )));
    }
    qe_doag(f)
}

fn eliminate_exists(v: u32, body: &Formula) -> Formula {
    let disjuncts = dnf(body, true);
    let mut out = Vec::new();
    for conj in disjuncts {
        if let Some(reduced) = eliminate_conj(v, conj) {
            let fs: Vec<Formula> = reduced.iter().map(Lit::to_formula).collect();
            out.push(formula::big_and(fs));
        }
    }
    let mut iter = out.into_iter();
    match iter.next() {
        None => formula::falsity(),
        Some(first) => iter.fold(first, formula::or),
    }
}

/// Disjunctive normal form of a quantifier-free formula, with negation
/// pushed to literals. A negated `t = 0` splits into the two strict
/// sides `t << 0` and `0 << t`, so elimination never sees disequalities.
fn dnf(f: &Formula, pos: bool) -> Vec<Vec<Lit>> {
    match (f, pos) {
        (Formula::Le(a, b), true) => vec![vec![Lit::Le(a.clone(), b.clone())]],
        (Formula::Le(a, b), false) => vec![vec![Lit::Nle(a.clone(), b.clone())]],
        (Formula::Eq0(t), true) => vec![vec![Lit::Eq(t.clone())]],
        (Formula::Eq0(t), false) => vec![
            vec![Lit::Nle(Term::zero(), t.clone())],
            vec![Lit::Nle(t.clone(), Term::zero())],
        ],
        (Formula::Not(g), _) => dnf(g, !pos),
        (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
            let (da, db) = (dnf(a, pos), dnf(b, pos));
            let mut out = Vec::new();
            for ca in &da {
                for cb in &db {
                    let mut c = ca.clone();
                    for lit in cb {
                        if !c.contains(lit) {
                            c.push(lit.clone());
                        }
                    }
                    out.push(c);
                }
            }
            out
        }
        (Formula::And(a, b), false) | (Formula::Or(a, b), true) => {
            let mut out = dnf(a, pos);
            out.extend(dnf(b, pos));
            out
        }
        (Formula::Exists(..) | Formula::ForAll(..), _) => {
            unreachable!("elimination recurses bottom-up, so bodies are quantifier-free")
        }
    }
}

/// One conjunct: the literal in the normal shape `c·v + r ⋈ 0`.
enum VLit {
    LeZero(i64, Term),
    LtZero(i64, Term),
    EqZero(i64, Term),
}

/// Eliminates `v` from a conjunction of literals. Returns the reduced
/// conjunction, or None when it is recognizably unsatisfiable.
fn eliminate_conj(v: u32, conj: Vec<Lit>) -> Option<Vec<Lit>> {
    let id = VarId::Var(v);
    let mut pass: Vec<Lit> = Vec::new();
    let mut vlits: Vec<VLit> = Vec::new();
    for lit in conj {
        let (d, kind) = match &lit {
            Lit::Le(a, b) => (a.sub(b), 0),
            Lit::Nle(a, b) => (b.sub(a), 1),
            Lit::Eq(t) => (t.clone(), 2),
        };
        let c = d.coeff(id);
        if c == 0 {
            // The variable cancels. It may still appear on both sides
            // (e.g. `v + s <~ v + t`); rewrite from the difference so
            // the output provably does not mention it.
            let mentions = match &lit {
                Lit::Le(a, b) | Lit::Nle(a, b) => a.coeff(id) != 0 || b.coeff(id) != 0,
                Lit::Eq(_) => false,
            };
            let lit = if mentions {
                match kind {
                    0 => Lit::Le(d, Term::zero()),
                    1 => Lit::Nle(Term::zero(), d),
                    _ => Lit::Eq(d),
                }
            } else {
                lit
            };
            if !keep(&mut pass, lit) {
                return None;
            }
            continue;
        }
        let r = d.without(id);
        vlits.push(match kind {
            0 => VLit::LeZero(c, r),
            1 => VLit::LtZero(c, r),
            _ => VLit::EqZero(c, r),
        });
    }

    // An equality pins the variable; substitute it into the rest.
    if let Some(k) = vlits.iter().position(|l| matches!(l, VLit::EqZero(..))) {
        let (c0, r0) = match vlits.remove(k) {
            VLit::EqZero(c, r) => {
                if c < 0 {
                    (-c, r.neg())
                } else {
                    (c, r)
                }
            }
            _ => unreachable!(),
        };
        // c0·v + r0 = 0 with c0 > 0: scale a literal c·v + r ⋈ 0 by c0
        // and replace c0·v with -r0.
        for l in vlits {
            let (c, r, kind) = match l {
                VLit::LeZero(c, r) => (c, r, 0),
                VLit::LtZero(c, r) => (c, r, 1),
                VLit::EqZero(c, r) => (c, r, 2),
            };
            let t = r.scale(c0).sub(&r0.scale(c));
            let lit = match kind {
                0 => Lit::Le(t, Term::zero()),
                1 => Lit::Nle(Term::zero(), t),
                _ => Lit::Eq(t),
            };
            if !keep(&mut pass, lit) {
                return None;
            }
        }
        return Some(pass);
    }

    // Pure inequalities: normalize to lower (a·v ≥ t) and upper
    // (a·v ≤ t) bounds with positive multipliers, then cross-multiply.
    let mut lowers: Vec<(i64, Term, bool)> = Vec::new();
    let mut uppers: Vec<(i64, Term, bool)> = Vec::new();
    for l in vlits {
        let (c, r, strict) = match l {
            VLit::LeZero(c, r) => (c, r, false),
            VLit::LtZero(c, r) => (c, r, true),
            VLit::EqZero(..) => unreachable!(),
        };
        if c > 0 {
            uppers.push((c, r.neg(), strict));
        } else {
            lowers.push((-c, r, strict));
        }
    }
    for (a, t, sl) in &lowers {
        for (b, u, su) in &uppers {
            // a·v ≥ t and b·v ≤ u force b·t ≤ a·u.
            let lhs = t.scale(*b);
            let rhs = u.scale(*a);
            let lit = if *sl || *su {
                Lit::Nle(rhs, lhs)
            } else {
                Lit::Le(lhs, rhs)
            };
            if !keep(&mut pass, lit) {
                return None;
            }
        }
    }
    Some(pass)
}

/// Adds a literal unless it is trivially true; reports false when it is
/// trivially unsatisfiable.
fn keep(conj: &mut Vec<Lit>, lit: Lit) -> bool {
    match &lit {
        Lit::Le(a, b) if a == b => true,
        Lit::Nle(a, b) if a == b => false,
        Lit::Eq(t) if t.is_zero() => true,
        _ => {
            push_lit(conj, lit);
            true
        }
    }
}

fn push_lit(conj: &mut Vec<Lit>, lit: Lit) {
    if !conj.contains(&lit) {
        conj.push(lit);
    }
}

//! Formula trees over the language {0, +, −, ≼}.

use crate::term::{Term, VarId};
use std::collections::BTreeSet;
use std::fmt;

/// First-order formulas. The atoms are `t1 <~ t2` and `t = 0`; every
/// other predicate of the surface syntax (`<<`, `~`, membership in the
/// order-like part) is expanded into these at construction time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Le(Term, Term),
    Eq0(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(u32, Box<Formula>),
    ForAll(u32, Box<Formula>),
}

pub fn le(a: Term, b: Term) -> Formula {
    Formula::Le(a, b)
}

pub fn eq0(t: Term) -> Formula {
    Formula::Eq0(t)
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    or(not(a), b)
}

pub fn exists(v: u32, f: Formula) -> Formula {
    Formula::Exists(v, Box::new(f))
}

pub fn forall(v: u32, f: Formula) -> Formula {
    Formula::ForAll(v, Box::new(f))
}

/// Strict comparison `a << b`, expanded to `a <~ b & !(b <~ a)`.
pub fn lt(a: Term, b: Term) -> Formula {
    and(le(a.clone(), b.clone()), not(le(b, a)))
}

/// Equivalence `a ~ b`, expanded to `a <~ b & b <~ a`.
pub fn sim(a: Term, b: Term) -> Formula {
    and(le(a.clone(), b.clone()), le(b, a))
}

/// Membership of a term in the order-like part, expanded to the
/// definable description `t = 0 | !(-t ~ t)`.
pub fn in_o_part(t: Term) -> Formula {
    or(eq0(t.clone()), not(sim(t.neg(), t)))
}

/// The always-true atom `0 = 0`.
pub fn truth() -> Formula {
    eq0(Term::zero())
}

/// The always-false formula `!(0 = 0)`.
pub fn falsity() -> Formula {
    not(truth())
}

/// Conjunction of a list; empty list is `truth()`.
pub fn big_and(fs: Vec<Formula>) -> Formula {
    let mut iter = fs.into_iter();
    match iter.next() {
        None => truth(),
        Some(first) => iter.fold(first, and),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quant {
    Ex,
    All,
}

impl Formula {
    /// Free identifiers: parameters always, variables unless bound.
    pub fn free_vars(&self) -> BTreeSet<VarId> {
        fn walk(f: &Formula, bound: &mut Vec<u32>, out: &mut BTreeSet<VarId>) {
            match f {
                Formula::Le(a, b) => {
                    for id in a.ids().chain(b.ids()) {
                        note(id, bound, out);
                    }
                }
                Formula::Eq0(t) => {
                    for id in t.ids() {
                        note(id, bound, out);
                    }
                }
                Formula::Not(g) => walk(g, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Exists(v, g) | Formula::ForAll(v, g) => {
                    bound.push(*v);
                    walk(g, bound, out);
                    bound.pop();
                }
            }
        }
        fn note(id: VarId, bound: &[u32], out: &mut BTreeSet<VarId>) {
            match id {
                VarId::Param(_) => {
                    out.insert(id);
                }
                VarId::Var(v) => {
                    if !bound.contains(&v) {
                        out.insert(id);
                    }
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Largest variable index mentioned anywhere, bound or free.
    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Le(a, b) => max_var_in(a).max(max_var_in(b)),
            Formula::Eq0(t) => max_var_in(t),
            Formula::Not(g) => g.max_var(),
            Formula::And(a, b) | Formula::Or(a, b) => a.max_var().max(b.max_var()),
            Formula::Exists(v, g) | Formula::ForAll(v, g) => (*v).max(g.max_var()),
        }
    }

    pub fn quantifier_rank(&self) -> u32 {
        match self {
            Formula::Le(..) | Formula::Eq0(..) => 0,
            Formula::Not(g) => g.quantifier_rank(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Formula::Exists(_, g) | Formula::ForAll(_, g) => 1 + g.quantifier_rank(),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.quantifier_rank() == 0
    }

    /// Renames free occurrences of variable `from` to `to`.
    pub fn rename_free_var(&self, from: u32, to: u32) -> Formula {
        match self {
            Formula::Le(a, b) => le(a.rename_var(from, to), b.rename_var(from, to)),
            Formula::Eq0(t) => eq0(t.rename_var(from, to)),
            Formula::Not(g) => not(g.rename_free_var(from, to)),
            Formula::And(a, b) => and(a.rename_free_var(from, to), b.rename_free_var(from, to)),
            Formula::Or(a, b) => or(a.rename_free_var(from, to), b.rename_free_var(from, to)),
            Formula::Exists(v, g) if *v == from => exists(*v, (**g).clone()),
            Formula::ForAll(v, g) if *v == from => forall(*v, (**g).clone()),
            Formula::Exists(v, g) => exists(*v, g.rename_free_var(from, to)),
            Formula::ForAll(v, g) => forall(*v, g.rename_free_var(from, to)),
        }
    }

    /// Renames bound variables so they are pairwise distinct and disjoint
    /// from every free variable, using fresh indices above everything in
    /// the formula.
    pub fn normalize_bound(&self) -> Formula {
        fn walk(f: &Formula, next: &mut u32) -> Formula {
            match f {
                Formula::Le(..) | Formula::Eq0(..) => f.clone(),
                Formula::Not(g) => not(walk(g, next)),
                Formula::And(a, b) => and(walk(a, next), walk(b, next)),
                Formula::Or(a, b) => or(walk(a, next), walk(b, next)),
                Formula::Exists(v, g) | Formula::ForAll(v, g) => {
                    let fresh = *next;
                    *next += 1;
                    let body = walk(&g.rename_free_var(*v, fresh), next);
                    if matches!(f, Formula::Exists(..)) {
                        exists(fresh, body)
                    } else {
                        forall(fresh, body)
                    }
                }
            }
        }
        let mut next = self.max_var() + 1;
        walk(self, &mut next)
    }

    /// Prenex form: quantifier prefix (outermost first) and a
    /// quantifier-free matrix. Bound variables are normalized first so
    /// pulling quantifiers across connectives cannot capture anything.
    pub fn prenex(&self) -> (Vec<(Quant, u32)>, Formula) {
        fn pull(f: &Formula) -> (Vec<(Quant, u32)>, Formula) {
            match f {
                Formula::Le(..) | Formula::Eq0(..) => (Vec::new(), f.clone()),
                Formula::Not(g) => {
                    let (mut pre, m) = pull(g);
                    for q in &mut pre {
                        q.0 = match q.0 {
                            Quant::Ex => Quant::All,
                            Quant::All => Quant::Ex,
                        };
                    }
                    (pre, not(m))
                }
                Formula::And(a, b) | Formula::Or(a, b) => {
                    let (mut pa, ma) = pull(a);
                    let (pb, mb) = pull(b);
                    pa.extend(pb);
                    let m = if matches!(f, Formula::And(..)) {
                        and(ma, mb)
                    } else {
                        or(ma, mb)
                    };
                    (pa, m)
                }
                Formula::Exists(v, g) => {
                    let (mut pre, m) = pull(g);
                    pre.insert(0, (Quant::Ex, *v));
                    (pre, m)
                }
                Formula::ForAll(v, g) => {
                    let (mut pre, m) = pull(g);
                    pre.insert(0, (Quant::All, *v));
                    (pre, m)
                }
            }
        }
        pull(&self.normalize_bound())
    }

    /// The distinct atoms of the formula in first-occurrence order.
    pub fn atoms(&self) -> Vec<Formula> {
        fn walk(f: &Formula, out: &mut Vec<Formula>) {
            match f {
                Formula::Le(..) | Formula::Eq0(..) => {
                    if !out.contains(f) {
                        out.push(f.clone());
                    }
                }
                Formula::Not(g) => walk(g, out),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Formula::Exists(_, g) | Formula::ForAll(_, g) => walk(g, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

fn max_var_in(t: &Term) -> u32 {
    t.ids()
        .filter_map(|id| match id {
            VarId::Var(v) => Some(v),
            VarId::Param(_) => None,
        })
        .max()
        .unwrap_or(0)
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::ForAll(..) => 0,
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        Formula::Not(..) => 3,
        Formula::Le(..) | Formula::Eq0(..) => 4,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let need_parens = prec(f) < min;
    if need_parens {
        write!(out, "(")?;
    }
    match f {
        Formula::Le(a, b) => write!(out, "{a} <~ {b}")?,
        Formula::Eq0(t) => write!(out, "{t} = 0")?,
        Formula::Not(g) => {
            write!(out, "!")?;
            // Always parenthesized: `!(x1 = 0)` reads unambiguously.
            write_at(g, 5, out)?;
        }
        // `&` and `|` parse left-associatively, so only the right child
        // needs parentheses at its own precedence level.
        Formula::And(a, b) => {
            write_at(a, 2, out)?;
            write!(out, " & ")?;
            write_at(b, 3, out)?;
        }
        Formula::Or(a, b) => {
            write_at(a, 1, out)?;
            write!(out, " | ")?;
            write_at(b, 2, out)?;
        }
        Formula::Exists(v, g) => {
            write!(out, "EX x{v}. ")?;
            write_at(g, 0, out)?;
        }
        Formula::ForAll(v, g) => {
            write!(out, "ALL x{v}. ")?;
            write_at(g, 0, out)?;
        }
    }
    if need_parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_minimal_parentheses() {
        let f = or(
            and(eq0(Term::var(1)), not(eq0(Term::var(2)))),
            le(Term::var(1), Term::var(2)),
        );
        assert_eq!(f.to_string(), "x1 = 0 & !(x2 = 0) | x1 <~ x2");
    }

    #[test]
    fn quantifier_scope_prints_maximally() {
        let f = exists(1, and(eq0(Term::var(1)), eq0(Term::var(2))));
        assert_eq!(f.to_string(), "EX x1. x1 = 0 & x2 = 0");
        let g = and(exists(1, eq0(Term::var(1))), eq0(Term::var(2)));
        assert_eq!(g.to_string(), "(EX x1. x1 = 0) & x2 = 0");
    }

    #[test]
    fn strict_and_equivalence_expand_to_core_atoms() {
        let f = lt(Term::var(1), Term::var(2));
        assert_eq!(f.to_string(), "x1 <~ x2 & !(x2 <~ x1)");
        let g = sim(Term::var(1), Term::var(2));
        assert_eq!(g.to_string(), "x1 <~ x2 & x2 <~ x1");
        let h = in_o_part(Term::var(1));
        assert_eq!(h.to_string(), "x1 = 0 | !(-x1 <~ x1 & x1 <~ -x1)");
    }

    #[test]
    fn free_vars_excludes_bound_ones() {
        let f = exists(1, le(Term::var(1), Term::var(2).add(&Term::param(1))));
        let free: Vec<String> = f.free_vars().iter().map(|v| v.to_string()).collect();
        assert_eq!(free, vec!["x2", "c1"]);
    }

    #[test]
    fn prenex_pulls_and_flips_quantifiers() {
        // !(EX x1. x1 = 0) & (EX x1. x1 = 0): distinct bound copies, the
        // negated one becomes universal.
        let inner = exists(1, eq0(Term::var(1)));
        let f = and(not(inner.clone()), inner);
        let (prefix, matrix) = f.prenex();
        assert_eq!(prefix.len(), 2);
        assert_eq!(prefix[0].0, Quant::All);
        assert_eq!(prefix[1].0, Quant::Ex);
        assert_ne!(prefix[0].1, prefix[1].1);
        assert!(matrix.is_quantifier_free());
    }

    #[test]
    fn quantifier_rank_counts_nesting_depth() {
        let f = exists(1, forall(2, eq0(Term::var(1))));
        assert_eq!(f.quantifier_rank(), 2);
        let g = and(exists(1, eq0(Term::var(1))), exists(2, eq0(Term::var(2))));
        assert_eq!(g.quantifier_rank(), 1);
    }
}

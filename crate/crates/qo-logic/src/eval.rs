//! Exact and window-bounded three-valued evaluation.

use crate::error::{LogicError, Result};
use crate::formula::Formula;
use crate::term::{Term, VarId};
use qo_core::{universe, Element, GroupSpec, Window};
use std::collections::BTreeMap;

/// Three-valued verdict. `Unknown` only ever arises from quantifiers
/// ranging over a window of an infinite group; finite groups and
/// quantifier-free formulas always get a classical verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth3 {
    True,
    False,
    Unknown,
}

impl Truth3 {
    pub fn from_bool(b: bool) -> Truth3 {
        if b {
            Truth3::True
        } else {
            Truth3::False
        }
    }

    pub fn is_definite(self) -> bool {
        self != Truth3::Unknown
    }

    pub fn not(self) -> Truth3 {
        match self {
            Truth3::True => Truth3::False,
            Truth3::False => Truth3::True,
            Truth3::Unknown => Truth3::Unknown,
        }
    }

    pub fn and(self, other: Truth3) -> Truth3 {
        match (self, other) {
            (Truth3::False, _) | (_, Truth3::False) => Truth3::False,
            (Truth3::True, Truth3::True) => Truth3::True,
            _ => Truth3::Unknown,
        }
    }

    pub fn or(self, other: Truth3) -> Truth3 {
        match (self, other) {
            (Truth3::True, _) | (_, Truth3::True) => Truth3::True,
            (Truth3::False, Truth3::False) => Truth3::False,
            _ => Truth3::Unknown,
        }
    }
}

impl std::fmt::Display for Truth3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Truth3::True => write!(f, "true"),
            Truth3::False => write!(f, "false"),
            Truth3::Unknown => write!(f, "unknown"),
        }
    }
}

/// Values for free variables and parameters.
pub type Assignment = BTreeMap<VarId, Element>;

/// Evaluates a term under an assignment.
pub fn eval_term(spec: &GroupSpec, t: &Term, assign: &Assignment) -> Result<Element> {
    let mut acc = spec.zero();
    for (id, n) in t.entries() {
        let g = assign
            .get(&id)
            .ok_or_else(|| LogicError::UnboundVariable(id.to_string()))?;
        acc = spec.add(&acc, &spec.scale(n, g)?)?;
    }
    Ok(acc)
}

/// Evaluates a formula. Atoms and connectives are exact; quantifiers
/// range over the whole group when it is finite (classical semantics)
/// and over the window otherwise, in which case a found witness is
/// conclusive but an exhausted window is only `Unknown`.
pub fn eval(spec: &GroupSpec, f: &Formula, assign: &Assignment, w: Window) -> Result<Truth3> {
    let finite = spec.free_rank() == 0;
    let domain = universe(spec, w)?;
    eval_in(spec, f, &mut assign.clone(), &domain, finite)
}

fn eval_in(
    spec: &GroupSpec,
    f: &Formula,
    assign: &mut Assignment,
    domain: &[Element],
    finite: bool,
) -> Result<Truth3> {
    match f {
        Formula::Le(a, b) => {
            let (ga, gb) = (eval_term(spec, a, assign)?, eval_term(spec, b, assign)?);
            Ok(Truth3::from_bool(spec.le(&ga, &gb)?))
        }
        Formula::Eq0(t) => Ok(Truth3::from_bool(eval_term(spec, t, assign)?.is_zero())),
        Formula::Not(g) => Ok(eval_in(spec, g, assign, domain, finite)?.not()),
        Formula::And(a, b) => {
            let va = eval_in(spec, a, assign, domain, finite)?;
            if va == Truth3::False {
                return Ok(Truth3::False);
            }
            Ok(va.and(eval_in(spec, b, assign, domain, finite)?))
        }
        Formula::Or(a, b) => {
            let va = eval_in(spec, a, assign, domain, finite)?;
            if va == Truth3::True {
                return Ok(Truth3::True);
            }
            Ok(va.or(eval_in(spec, b, assign, domain, finite)?))
        }
        Formula::Exists(v, body) => {
            let id = VarId::Var(*v);
            let saved = assign.get(&id).cloned();
            let mut any_unknown = false;
            let mut verdict = None;
            for g in domain {
                assign.insert(id, g.clone());
                match eval_in(spec, body, assign, domain, finite)? {
                    Truth3::True => {
                        verdict = Some(Truth3::True);
                        break;
                    }
                    Truth3::Unknown => any_unknown = true,
                    Truth3::False => {}
                }
            }
            restore(assign, id, saved);
            Ok(match verdict {
                Some(v) => v,
                None if finite && !any_unknown => Truth3::False,
                None => Truth3::Unknown,
            })
        }
        Formula::ForAll(v, body) => {
            let id = VarId::Var(*v);
            let saved = assign.get(&id).cloned();
            let mut any_unknown = false;
            let mut verdict = None;
            for g in domain {
                assign.insert(id, g.clone());
                match eval_in(spec, body, assign, domain, finite)? {
                    Truth3::False => {
                        verdict = Some(Truth3::False);
                        break;
                    }
                    Truth3::Unknown => any_unknown = true,
                    Truth3::True => {}
                }
            }
            restore(assign, id, saved);
            Ok(match verdict {
                Some(v) => v,
                None if finite && !any_unknown => Truth3::True,
                None => Truth3::Unknown,
            })
        }
    }
}

fn restore(assign: &mut Assignment, id: VarId, saved: Option<Element>) {
    match saved {
        Some(g) => {
            assign.insert(id, g);
        }
        None => {
            assign.remove(&id);
        }
    }
}

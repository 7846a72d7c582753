//! Extracting the canonical valuation a compatible quasi-order induces.
//!
//! The torsion-like classes, ordered downward, become the finite value chain;
//! every order-like nonzero element shares one value above all of those, and
//! 0 alone gets the infinite value. The induced comparison rule
//! `g <~ h iff v(g) >= v(h)` then reproduces the quasi-order on the
//! torsion-like part.

use std::fmt;

use serde::Serialize;

use crate::compare::{Classification, CompareResult};
use crate::element::Element;
use crate::error::{CoreError, Result};
use crate::spec::GroupSpec;
use crate::window::{universe, Window};

/// A value in the extracted chain. `Gamma(i)` values ascend with `i`;
/// every `Gamma(_)` lies below `Gamma0`, which lies below `Infty`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractedVal {
    Gamma(usize),
    Gamma0,
    Infty,
}

impl fmt::Display for ExtractedVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractedVal::Gamma(i) => write!(f, "g{i}"),
            ExtractedVal::Gamma0 => write!(f, "g0*"),
            ExtractedVal::Infty => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtractedValuation {
    /// Number of distinct finite values on the torsion-like part.
    pub chain_len: usize,
    /// Window elements with their values, in enumeration order.
    pub assignment: Vec<(Element, ExtractedVal)>,
}

impl ExtractedValuation {
    pub fn value(&self, g: &Element) -> Option<ExtractedVal> {
        self.assignment
            .iter()
            .find_map(|(e, v)| (e == g).then_some(*v))
    }
}

/// Derives the valuation of a compatible spec on a window and verifies its
/// laws there (value symmetry under negation and the ultrametric bound).
pub fn extract_valuation(spec: &GroupSpec, w: Window) -> Result<ExtractedValuation> {
    let all = universe(spec, w)?;
    // Representatives of the torsion-like classes, sorted descending in the
    // quasi-order: the highest class gets Gamma(0), deeper classes ascend.
    let mut reps: Vec<Element> = Vec::new();
    for g in &all {
        if spec.classify(g)? != Classification::VType {
            continue;
        }
        if !reps_contains(spec, &reps, g)? {
            reps.push(g.clone());
        }
    }
    // Insertion sort by strictly-above, descending.
    reps.sort_by(|a, b| match spec.compare(a, b) {
        Ok(CompareResult::StrictAbove) => std::cmp::Ordering::Less,
        Ok(CompareResult::StrictBelow) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    let chain_len = reps.len();
    let mut assignment = Vec::with_capacity(all.len());
    for g in &all {
        let v = match spec.classify(g)? {
            Classification::Zero => ExtractedVal::Infty,
            Classification::OType => ExtractedVal::Gamma0,
            Classification::VType => {
                let mut found = None;
                for (i, r) in reps.iter().enumerate() {
                    if spec.compare(g, r)? == CompareResult::Equivalent {
                        found = Some(ExtractedVal::Gamma(i));
                        break;
                    }
                }
                found.ok_or_else(|| {
                    CoreError::StructureViolation(format!("no class found for {g}"))
                })?
            }
        };
        assignment.push((g.clone(), v));
    }
    let out = ExtractedValuation {
        chain_len,
        assignment,
    };
    verify_valuation_laws(spec, &out)?;
    Ok(out)
}

fn reps_contains(spec: &GroupSpec, reps: &[Element], g: &Element) -> Result<bool> {
    for r in reps {
        if spec.compare(r, g)? == CompareResult::Equivalent {
            return Ok(true);
        }
    }
    Ok(false)
}

fn verify_valuation_laws(spec: &GroupSpec, ev: &ExtractedValuation) -> Result<()> {
    let map: std::collections::HashMap<&Element, ExtractedVal> =
        ev.assignment.iter().map(|(e, v)| (e, *v)).collect();
    let lookup = |g: &Element| map.get(g).copied();
    for (g, v) in &ev.assignment {
        // Symmetry: v(-g) = v(g).
        let ng = spec.neg(g)?;
        if let Some(vn) = lookup(&ng) {
            if vn != *v {
                return Err(CoreError::StructureViolation(format!(
                    "value of -{g} differs from value of {g}"
                )));
            }
        }
        // The comparison rule on torsion-like pairs.
        for (h, vh) in &ev.assignment {
            if matches!(v, ExtractedVal::Gamma(_)) && matches!(vh, ExtractedVal::Gamma(_)) {
                let le = spec.le(g, h)?;
                if le != (*v >= *vh) {
                    return Err(CoreError::StructureViolation(format!(
                        "comparison of {g} and {h} disagrees with their values"
                    )));
                }
            }
        }
    }
    // Ultrametric: v(g+h) >= min(v(g), v(h)) whenever the sum stays in the
    // window.
    for (g, vg) in &ev.assignment {
        for (h, vh) in &ev.assignment {
            let s = spec.add(g, h)?;
            if let Some(vs) = lookup(&s) {
                if vs < (*vg).min(*vh) {
                    return Err(CoreError::StructureViolation(format!(
                        "ultrametric bound fails at {g} + {h}"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Element;

    #[test]
    fn ordered_group_maps_everything_to_gamma0() {
        let spec = GroupSpec::ordered_z();
        let ev = extract_valuation(&spec, Window::new(4)).unwrap();
        assert_eq!(ev.chain_len, 0);
        for (g, v) in &ev.assignment {
            if g.is_zero() {
                assert_eq!(*v, ExtractedVal::Infty);
            } else {
                assert_eq!(*v, ExtractedVal::Gamma0);
            }
        }
    }

    #[test]
    fn subgroup_order_gets_two_point_chain() {
        let spec = GroupSpec::subgroup_order(5);
        let ev = extract_valuation(&spec, Window::new(8)).unwrap();
        assert_eq!(ev.chain_len, 1);
        assert_eq!(
            ev.value(&Element::from_ints(&[3])),
            Some(ExtractedVal::Gamma(0))
        );
        assert_eq!(
            ev.value(&Element::from_ints(&[5])),
            Some(ExtractedVal::Gamma0)
        );
        assert_eq!(
            ev.value(&Element::from_ints(&[0])),
            Some(ExtractedVal::Infty)
        );
    }

    #[test]
    fn z2_flagged_order_is_trivial_valuation() {
        let spec = GroupSpec::z2_with_order();
        let ev = extract_valuation(&spec, Window::new(1)).unwrap();
        assert_eq!(ev.chain_len, 1);
        assert_eq!(
            ev.value(&Element::from_ints(&[1])),
            Some(ExtractedVal::Gamma(0))
        );
    }

    #[test]
    fn padic_chain_orders_values_correctly() {
        let spec = GroupSpec::finite_padic(2, 3);
        let ev = extract_valuation(&spec, Window::new(1)).unwrap();
        // Classes: {1,3,5,7} top, {2,6}, {4} deepest.
        assert_eq!(ev.chain_len, 3);
        assert_eq!(
            ev.value(&Element::from_ints(&[3])),
            Some(ExtractedVal::Gamma(0))
        );
        assert_eq!(
            ev.value(&Element::from_ints(&[6])),
            Some(ExtractedVal::Gamma(1))
        );
        assert_eq!(
            ev.value(&Element::from_ints(&[4])),
            Some(ExtractedVal::Gamma(2))
        );
    }
}

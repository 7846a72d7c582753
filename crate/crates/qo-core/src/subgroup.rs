//! Subgroup descriptions, convexity, and the order-like part.

use serde::Serialize;

use crate::compare::Classification;
use crate::element::Element;
use crate::error::{CoreError, Result};
use crate::spec::{in_box, CoordCond, GroupSpec, QoDef};
use crate::window::{universe, CompareCache, Window};

/// A subgroup of a spec's group, in a form membership can be decided from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupDesc {
    Whole,
    Trivial,
    /// Product of per-coordinate subgroups.
    Box(Vec<CoordCond>),
    /// Explicit element list (finite groups).
    Finite(Vec<Element>),
}

impl SubgroupDesc {
    pub fn contains(&self, spec: &GroupSpec, g: &Element) -> Result<bool> {
        match self {
            SubgroupDesc::Whole => Ok(true),
            SubgroupDesc::Trivial => Ok(g.is_zero()),
            SubgroupDesc::Box(conds) => {
                if conds.len() != spec.dim() {
                    return Err(CoreError::NotASubgroup(
                        "box condition list does not match the dimension".into(),
                    ));
                }
                Ok(in_box(conds, g))
            }
            SubgroupDesc::Finite(els) => Ok(els.contains(g)),
        }
    }

    /// Window check that the description really is closed under the group
    /// operations (boxes are closed by construction; element lists are not).
    pub fn verify(&self, spec: &GroupSpec, w: Window) -> Result<()> {
        let members: Vec<Element> = universe(spec, w)?
            .into_iter()
            .filter_map(|g| match self.contains(spec, &g) {
                Ok(true) => Some(Ok(g)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<_>>()?;
        if !self.contains(spec, &spec.zero())? {
            return Err(CoreError::NotASubgroup("0 is missing".into()));
        }
        let in_universe = |g: &Element| -> Result<bool> {
            // Only constrain sums that stay inside the enumerated box.
            Ok(universe_contains(spec, w, g))
        };
        for a in &members {
            let na = spec.neg(a)?;
            if in_universe(&na)? && !self.contains(spec, &na)? {
                return Err(CoreError::NotASubgroup(format!("-{a} escapes")));
            }
            for b in &members {
                let s = spec.add(a, b)?;
                if in_universe(&s)? && !self.contains(spec, &s)? {
                    return Err(CoreError::NotASubgroup(format!("{a} + {b} escapes")));
                }
            }
        }
        Ok(())
    }
}

fn universe_contains(spec: &GroupSpec, w: Window, g: &Element) -> bool {
    use num_traits::Signed;
    g.coords().iter().zip(spec.layout().iter()).all(|(c, ty)| match ty {
        crate::spec::CoordType::Torsion(_) => true,
        crate::spec::CoordType::Free { divisible } => {
            let num_ok = c.numer().abs() <= num_bigint::BigInt::from(w.bound.max(0));
            let den_ok = if *divisible {
                c.denom() <= &num_bigint::BigInt::from(w.den_bound.max(1))
            } else {
                true
            };
            num_ok && den_ok
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub convex: bool,
    /// Witness (s, a, t) with s, t in H and a outside, s <~ a <~ t.
    pub witness: Option<(Element, Element, Element)>,
    pub subgroup_inside_o_part: Option<bool>,
    pub o_part_inside_subgroup: Option<bool>,
}

/// Convexity of a subgroup in the quasi-order, checked on the window.
/// When convex, also reports which inclusion holds between the subgroup and
/// the order-like part (on the window).
pub fn is_convex(spec: &GroupSpec, h: &SubgroupDesc, w: Window) -> Result<ConvexityReport> {
    h.verify(spec, w)?;
    let all = universe(spec, w)?;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for g in all {
        if h.contains(spec, &g)? {
            inside.push(g);
        } else {
            outside.push(g);
        }
    }
    for a in &outside {
        let mut below = None;
        let mut above = None;
        for s in &inside {
            if below.is_none() && spec.le(s, a)? {
                below = Some(s.clone());
            }
            if above.is_none() && spec.le(a, s)? {
                above = Some(s.clone());
            }
            if below.is_some() && above.is_some() {
                break;
            }
        }
        if let (Some(s), Some(t)) = (below, above) {
            return Ok(ConvexityReport {
                convex: false,
                witness: Some((s, a.clone(), t)),
                subgroup_inside_o_part: None,
                o_part_inside_subgroup: None,
            });
        }
    }
    let mut h_in_o = true;
    for g in &inside {
        if spec.classify(g)? == Classification::VType {
            h_in_o = false;
            break;
        }
    }
    let mut o_in_h = true;
    for g in &outside {
        if spec.classify(g)? != Classification::VType {
            o_in_h = false;
            break;
        }
    }
    Ok(ConvexityReport {
        convex: true,
        witness: None,
        subgroup_inside_o_part: Some(h_in_o),
        o_part_inside_subgroup: Some(o_in_h),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OPart {
    /// Window elements that are not torsion-like.
    pub elements: Vec<Element>,
    /// Exact description implied by the spec kind, when recognizable.
    pub description: Option<SubgroupDesc>,
}

/// The order-like part on a window: all elements classified Zero or OType.
/// Verifies the initial-segment and closure laws a compatible quasi-order
/// guarantees; failure signals the input was not compatible.
pub fn o_part(spec: &GroupSpec, w: Window) -> Result<OPart> {
    let all = universe(spec, w)?;
    let cache = CompareCache::build(spec, all)?;
    let mut member = vec![false; cache.len()];
    for (i, g) in cache.elems.iter().enumerate() {
        member[i] = spec.classify(g)? != Classification::VType;
    }
    // Initial segment: anything below a member is a member.
    for (i, mi) in member.iter().enumerate() {
        if !mi {
            continue;
        }
        for (j, mj) in member.iter().enumerate() {
            if !mj && cache.le_idx(j as u32, i as u32) {
                return Err(CoreError::StructureViolation(format!(
                    "order-like part is not an initial segment: {} <~ {} on the window",
                    cache.elems[j], cache.elems[i]
                )));
            }
        }
    }
    // Closure under + and - within the window.
    let members: Vec<&Element> = cache
        .elems
        .iter()
        .zip(member.iter())
        .filter_map(|(g, &m)| m.then_some(g))
        .collect();
    for a in &members {
        let na = spec.neg(a)?;
        if let Some(k) = cache.index_of(&na) {
            if !member[k as usize] {
                return Err(CoreError::StructureViolation(format!(
                    "order-like part is not closed under negation at {a}"
                )));
            }
        }
        for b in &members {
            let s = spec.add(a, b)?;
            if let Some(k) = cache.index_of(&s) {
                if !member[k as usize] {
                    return Err(CoreError::StructureViolation(format!(
                        "order-like part is not closed under addition at {a} + {b}"
                    )));
                }
            }
        }
    }
    let description = o_part_description(spec);
    if let Some(desc) = &description {
        for (i, g) in cache.elems.iter().enumerate() {
            if desc.contains(spec, g)? != member[i] {
                return Err(CoreError::StructureViolation(format!(
                    "derived order-like description disagrees with classification at {g}"
                )));
            }
        }
    }
    let elements = cache
        .elems
        .iter()
        .zip(member.iter())
        .filter_map(|(g, &m)| if m { Some(g.clone()) } else { None })
        .collect();
    Ok(OPart {
        elements,
        description,
    })
}

/// Spec-level description of the order-like part, for the kinds where it is
/// determined by shape.
pub fn o_part_description(spec: &GroupSpec) -> Option<SubgroupDesc> {
    fn conds(spec: &GroupSpec) -> Option<Vec<CoordCond>> {
        match spec.qo() {
            QoDef::Lex {
                degenerate_z2: true,
                ..
            } => Some(vec![CoordCond::Zero; spec.dim()]),
            QoDef::Lex { mixed: true, .. } => None,
            QoDef::Lex { .. } => Some(vec![CoordCond::Any; spec.dim()]),
            QoDef::Valuation(_) => Some(vec![CoordCond::Zero; spec.dim()]),
            QoDef::SubgroupOrder { modulus } => Some(vec![CoordCond::Div(*modulus)]),
            QoDef::Product { ordered, valued } => {
                let mut v = vec![CoordCond::Zero; valued.dim()];
                v.extend(conds(ordered)?);
                Some(v)
            }
            QoDef::Hahn { components } => {
                let mut v = Vec::new();
                for c in components {
                    v.extend(conds(c)?);
                }
                Some(v)
            }
            QoDef::Table(_) | QoDef::Quotient(_) => None,
        }
    }
    let conds = conds(spec)?;
    if conds.iter().all(|c| matches!(c, CoordCond::Any)) {
        Some(SubgroupDesc::Whole)
    } else if conds.iter().all(|c| matches!(c, CoordCond::Zero)) {
        Some(SubgroupDesc::Trivial)
    } else {
        Some(SubgroupDesc::Box(conds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_z_is_not_convex_in_z() {
        let spec = GroupSpec::ordered_z();
        let h = SubgroupDesc::Box(vec![CoordCond::Div(2)]);
        let r = is_convex(&spec, &h, Window::new(4)).unwrap();
        assert!(!r.convex);
        let (s, a, t) = r.witness.unwrap();
        assert!(spec.le(&s, &a).unwrap() && spec.le(&a, &t).unwrap());
    }

    #[test]
    fn five_z_is_convex_under_subgroup_order() {
        let spec = GroupSpec::subgroup_order(5);
        let h = SubgroupDesc::Box(vec![CoordCond::Div(5)]);
        let r = is_convex(&spec, &h, Window::new(8)).unwrap();
        assert!(r.convex);
        assert_eq!(r.subgroup_inside_o_part, Some(true));
        assert_eq!(r.o_part_inside_subgroup, Some(true));
    }

    #[test]
    fn o_part_of_subgroup_order_is_multiples() {
        let spec = GroupSpec::subgroup_order(5);
        let o = o_part(&spec, Window::new(8)).unwrap();
        let shown: Vec<String> = o.elements.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["0", "5", "-5"]);
        assert_eq!(o.description, Some(SubgroupDesc::Box(vec![CoordCond::Div(5)])));
    }

    #[test]
    fn o_part_of_valuational_spec_is_trivial() {
        let spec = GroupSpec::finite_padic(2, 2);
        let o = o_part(&spec, Window::new(1)).unwrap();
        assert_eq!(o.elements, vec![spec.zero()]);
        assert_eq!(o.description, Some(SubgroupDesc::Trivial));
    }

    #[test]
    fn o_part_rejects_incompatible_lex() {
        let spec = GroupSpec::new(
            1,
            vec![2],
            false,
            QoDef::Lex {
                degenerate_z2: false,
                mixed: true,
            },
        )
        .unwrap();
        // In the mixed lex order, (1, -1) is o-type yet sits above o-type
        // (0, k) and below (1, k): the o-type set is not a subgroup, and the
        // initial-segment law fails.
        assert!(o_part(&spec, Window::new(3)).is_err());
    }

    #[test]
    fn z2_with_order_has_trivial_o_part() {
        let spec = GroupSpec::z2_with_order();
        let o = o_part(&spec, Window::new(1)).unwrap();
        assert_eq!(o.elements, vec![spec.zero()]);
    }
}

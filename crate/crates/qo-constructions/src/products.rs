//! Product constructions on compatible quasi-ordered abelian groups: the
//! lexicographic product of ordered groups, the valuational Hahn product of
//! valued groups, the glued product of an ordered part under a valued part,
//! and the compatible Hahn product that mixes all of the above.
//!
//! Each constructor checks its precondition on the supplied window before
//! assembling the composite spec; the compare semantics of the results live
//! in the core crate's spec interpreter.

use qo_core::{
    check_q1, check_q2, universe, Classification, CoordType, GroupSpec, QoDef, Window,
};

use crate::error::{ConstructionError, Result};

/// The zero-dimensional group (a legal spec; products treat it as a neutral
/// factor).
pub fn trivial_group() -> GroupSpec {
    GroupSpec::new(
        0,
        vec![],
        false,
        QoDef::Lex {
            degenerate_z2: false,
            mixed: false,
        },
    )
    .expect("the zero-dimensional ordered group is a valid spec")
}

/// Window check that every element of `c` is order-like (Zero or OType).
fn require_ordered(c: &GroupSpec, index: usize, w: Window) -> Result<()> {
    for g in universe(c, w)? {
        if c.classify(&g)? == Classification::VType {
            return Err(ConstructionError::ComponentNotOrdered {
                index,
                detail: format!("{g} is equivalent to its own negation"),
            });
        }
    }
    Ok(())
}

/// Window check that every nonzero element of `c` is torsion-like (VType).
fn require_valuational(c: &GroupSpec, index: usize, w: Window) -> Result<()> {
    for g in universe(c, w)? {
        if !g.is_zero() && c.classify(&g)? != Classification::VType {
            return Err(ConstructionError::ComponentNotValuational {
                index,
                detail: format!("{g} is not equivalent to its own negation"),
            });
        }
    }
    Ok(())
}

/// Window check of the compatibility axioms on `c`.
fn require_compatible(c: &GroupSpec, index: usize, w: Window) -> Result<()> {
    if let Some(v) = check_q1(c, w)? {
        return Err(ConstructionError::ComponentNotCompatible {
            index,
            detail: v.rendering,
        });
    }
    if let Some(v) = check_q2(c, w)? {
        return Err(ConstructionError::ComponentNotCompatible {
            index,
            detail: v.rendering,
        });
    }
    Ok(())
}

/// Builds a composite spec, deriving the coordinate counts from the
/// component layouts.
pub(crate) fn assemble(qo: QoDef) -> Result<GroupSpec> {
    let parts: Vec<&GroupSpec> = match &qo {
        QoDef::Hahn { components } => components.iter().collect(),
        QoDef::Product { ordered, valued } => vec![valued, ordered],
        _ => unreachable!("assemble only builds composite kinds"),
    };
    let mut free = 0usize;
    let mut torsion = Vec::new();
    let mut divisible = false;
    for p in parts {
        for ty in p.layout() {
            match ty {
                CoordType::Torsion(n) => torsion.push(*n),
                CoordType::Free { divisible: d } => {
                    free += 1;
                    divisible |= d;
                }
            }
        }
    }
    Ok(GroupSpec::new(free, torsion, divisible, qo)?)
}

/// A purely lexicographic spec the component can be flattened into, when its
/// kind allows: a plain torsion-free lex order keeps its coordinates as they
/// are. Returns the coordinate count and divisibility flags.
fn plain_lex_coords(c: &GroupSpec) -> Option<Vec<bool>> {
    match c.qo() {
        QoDef::Lex {
            degenerate_z2: false,
            mixed: false,
        } if c.torsion_orders().is_empty() => Some(
            c.layout()
                .iter()
                .map(|ty| matches!(ty, CoordType::Free { divisible: true }))
                .collect(),
        ),
        _ => None,
    }
}

/// Lexicographic product of ordered groups, most significant component
/// first. Each component must be an ordered group on the window: no element
/// equivalent to its own negation.
///
/// Plain free components flatten into a single lex spec when their
/// divisibility agrees; other shapes are kept as a composite whose compare
/// walks the component chain.
pub fn lex_product(components: &[GroupSpec], w: Window) -> Result<GroupSpec> {
    if components.is_empty() {
        return Err(ConstructionError::Core(qo_core::CoreError::InvalidSpec(
            "lexicographic products need at least one component".into(),
        )));
    }
    for (i, c) in components.iter().enumerate() {
        require_ordered(c, i, w)?;
    }
    if components.len() == 1 {
        return Ok(components[0].clone());
    }
    let flat: Option<Vec<bool>> = components.iter().try_fold(Vec::new(), |mut acc, c| {
        acc.extend(plain_lex_coords(c)?);
        Some(acc)
    });
    if let Some(flags) = flat {
        if flags.iter().all(|&d| d) || flags.iter().all(|&d| !d) {
            let divisible = flags.first().copied().unwrap_or(false);
            return Ok(GroupSpec::new(
                flags.len(),
                vec![],
                divisible,
                QoDef::Lex {
                    degenerate_z2: false,
                    mixed: false,
                },
            )?);
        }
    }
    assemble(QoDef::Hahn {
        components: components.to_vec(),
    })
}

/// Valuational Hahn product of valued groups, most significant component
/// first: compare is decided at the smallest component index where either
/// argument is nonzero. Each component must be valuational on the window.
pub fn val_hahn_product(components: &[GroupSpec], w: Window) -> Result<GroupSpec> {
    if components.is_empty() {
        return Err(ConstructionError::Core(qo_core::CoreError::InvalidSpec(
            "valuational Hahn products need at least one component".into(),
        )));
    }
    for (i, c) in components.iter().enumerate() {
        require_valuational(c, i, w)?;
    }
    if components.len() == 1 {
        return Ok(components[0].clone());
    }
    assemble(QoDef::Hahn {
        components: components.to_vec(),
    })
}

/// The ordered factor in the shape the glued product requires: a torsion-free
/// lex spec. Hahn composites of plain lex components flatten.
fn as_lex_ordered(o: &GroupSpec) -> Result<GroupSpec> {
    if plain_lex_coords(o).is_some() || o.dim() == 0 {
        return Ok(o.clone());
    }
    if let QoDef::Hahn { components } = o.qo() {
        let flat: Option<Vec<bool>> = components.iter().try_fold(Vec::new(), |mut acc, c| {
            acc.extend(plain_lex_coords(c)?);
            Some(acc)
        });
        if let Some(flags) = flat {
            if flags.iter().all(|&d| d) || flags.iter().all(|&d| !d) {
                let divisible = flags.first().copied().unwrap_or(false);
                return Ok(GroupSpec::new(
                    flags.len(),
                    vec![],
                    divisible,
                    QoDef::Lex {
                        degenerate_z2: false,
                        mixed: false,
                    },
                )?);
            }
        }
    }
    Err(ConstructionError::Core(qo_core::CoreError::UnsupportedSpec(
        "the ordered factor must be presentable as a torsion-free lex order".into(),
    )))
}

/// Glued product of an ordered group under a valued group: the direct sum
/// carrying the quasi-order whose order-like part is `o` and whose quotient
/// is `v`. Coordinate layout is the valued block first, then the ordered
/// block. A zero-dimensional factor on either side returns the other factor
/// unchanged.
pub fn compatible_product(o: &GroupSpec, v: &GroupSpec, w: Window) -> Result<GroupSpec> {
    require_ordered(o, 0, w)?;
    require_valuational(v, 1, w)?;
    if v.dim() == 0 {
        return Ok(o.clone());
    }
    if o.dim() == 0 {
        return Ok(v.clone());
    }
    let ordered = as_lex_ordered(o)?;
    assemble(QoDef::Product {
        ordered: Box::new(ordered),
        valued: Box::new(v.clone()),
    })
}

/// Compatible Hahn product of compatible groups, most significant component
/// first. All-ordered chains collapse to the lexicographic product and
/// all-valuational chains to the valuational Hahn product; genuinely mixed
/// chains become a composite whose order-like part is the lex product of the
/// component order-like parts glued under the valuational Hahn product of
/// the component quotients.
pub fn compatible_hahn_product(components: &[GroupSpec], w: Window) -> Result<GroupSpec> {
    if components.is_empty() {
        return Err(ConstructionError::Core(qo_core::CoreError::InvalidSpec(
            "compatible Hahn products need at least one component".into(),
        )));
    }
    for (i, c) in components.iter().enumerate() {
        require_compatible(c, i, w)?;
    }
    if components.len() == 1 {
        return Ok(components[0].clone());
    }
    let mut all_ordered = true;
    let mut all_valuational = true;
    for c in components {
        for g in universe(c, w)? {
            match c.classify(&g)? {
                Classification::VType => all_ordered = false,
                Classification::OType => all_valuational = false,
                Classification::Zero => {}
            }
        }
    }
    if all_ordered {
        return lex_product(components, w);
    }
    if all_valuational {
        return val_hahn_product(components, w);
    }
    assemble(QoDef::Hahn {
        components: components.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qo_core::{int, CompareResult, Element};

    fn el(coords: &[i64]) -> Element {
        Element(coords.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn lex_of_two_z_leading_coordinate_dominates() {
        let z = GroupSpec::ordered_z();
        let p = lex_product(&[z.clone(), z], Window::new(4)).unwrap();
        assert_eq!(
            p.compare(&el(&[1, -100]), &el(&[0, 100])).unwrap(),
            CompareResult::StrictAbove
        );
    }

    #[test]
    fn singleton_lex_product_is_the_component() {
        let z = GroupSpec::ordered_z();
        let p = lex_product(std::slice::from_ref(&z), Window::new(4)).unwrap();
        assert_eq!(p, z);
    }

    #[test]
    fn lex_product_rejects_valuational_components() {
        let z = GroupSpec::ordered_z();
        let t = GroupSpec::finite_trivial(3);
        let err = lex_product(&[z, t], Window::new(3)).unwrap_err();
        assert!(matches!(
            err,
            ConstructionError::ComponentNotOrdered { index: 1, .. }
        ));
        let z2 = GroupSpec::z2_with_order();
        let err = lex_product(&[GroupSpec::ordered_z(), z2], Window::new(3)).unwrap_err();
        assert!(matches!(
            err,
            ConstructionError::ComponentNotOrdered { index: 1, .. }
        ));
    }

    #[test]
    fn val_hahn_rejects_ordered_components() {
        let err =
            val_hahn_product(&[GroupSpec::finite_trivial(3), GroupSpec::ordered_z()], Window::new(3))
                .unwrap_err();
        assert!(matches!(
            err,
            ConstructionError::ComponentNotValuational { index: 1, .. }
        ));
    }

    #[test]
    fn compatible_product_with_zero_dimensional_factor_is_identity() {
        let z = GroupSpec::ordered_z();
        let w = Window::new(4);
        assert_eq!(compatible_product(&z, &trivial_group(), w).unwrap(), z);
        let p = GroupSpec::finite_padic(2, 2);
        assert_eq!(compatible_product(&trivial_group(), &p, w).unwrap(), p);
    }

    #[test]
    fn compatible_product_of_z_and_trivial_z5_has_torsion() {
        let g2 = compatible_product(
            &GroupSpec::ordered_z(),
            &GroupSpec::finite_trivial(5),
            Window::new(4),
        )
        .unwrap();
        assert_eq!(g2.torsion_orders(), &[5]);
        // The torsion class sits strictly above the whole order-like part.
        assert_eq!(
            g2.compare(&el(&[0, 3]), &el(&[1, 0])).unwrap(),
            CompareResult::StrictBelow
        );
    }

    #[test]
    fn compatible_hahn_of_single_component_is_identity() {
        let p = GroupSpec::finite_padic(2, 2);
        let h = compatible_hahn_product(std::slice::from_ref(&p), Window::new(2)).unwrap();
        assert_eq!(h, p);
    }

    #[test]
    fn compatible_hahn_rejects_incompatible_component() {
        let bad = GroupSpec::new(
            1,
            vec![2],
            false,
            QoDef::Lex {
                degenerate_z2: false,
                mixed: true,
            },
        )
        .unwrap();
        let err =
            compatible_hahn_product(&[GroupSpec::ordered_z(), bad], Window::new(3)).unwrap_err();
        assert!(matches!(
            err,
            ConstructionError::ComponentNotCompatible { index: 1, .. }
        ));
    }
}

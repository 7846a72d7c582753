//! Structure-theorem decomposition and recomposition.
//!
//! A compatible quasi-ordered abelian group splits into its order-like part
//! `H` (an ordered group sitting as an initial-segment subgroup) and the
//! quotient `G/H` (a valued group). `decompose` extracts both sides and
//! re-verifies the characterizing clauses on the window:
//!
//! 1. `H` is an initial-segment subgroup;
//! 2. the restriction of the quasi-order to `H` is antisymmetric (an honest
//!    order);
//! 3. the induced quotient quasi-order `g+H <= h+H  iff  g-h in H, or
//!    g-h outside H and g <= h` is valuational;
//! 4. whenever `g` lies outside `H` and `g-h` in `H`, `g` and `h` are
//!    equivalent.
//!
//! When the order-like part is a recognizable direct summand the
//! decomposition is marked product-form and `recompose` rebuilds a spec
//! whose compare agrees with the original coordinate for coordinate.

use qo_core::{
    extract_valuation, o_part, quotient_qo, universe, Classification, CoordCond, CoreError,
    ExtractedValuation, GroupSpec, QoDef, SubgroupDesc, Window,
};
use serde_json::json;

use crate::error::{ConstructionError, Result};
use crate::products::{compatible_product, lex_product, trivial_group};

/// The two sides of the structure theorem for one spec, plus the data tying
/// them back to the original group.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub original: GroupSpec,
    /// The order-like part as a standalone ordered group.
    pub o_part: GroupSpec,
    /// Where the order-like part sits inside the original group.
    pub o_desc: SubgroupDesc,
    /// The quotient by the order-like part, as a standalone valued group.
    pub v_part: GroupSpec,
    /// The valuation the original quasi-order induces on the window.
    pub valuation: ExtractedValuation,
    /// Whether the order-like part is a recognizable direct summand, so the
    /// original is the glued product of `o_part` under `v_part`.
    pub product_form: bool,
    /// For product-form decompositions: original coordinate index per
    /// recomposed coordinate (valued block first, then ordered block). This
    /// is the coset section: the ordered-block entries pick out the
    /// coordinates along which the order-like part embeds back into the
    /// original group.
    pub coset_section: Option<Vec<usize>>,
    /// Window the clause verification ran on.
    pub window: Window,
    /// Clause violations would abort `decompose`; kept for the report shape.
    pub violations: Vec<String>,
}

impl Decomposition {
    /// Maps an original-coordinates element to recomposed coordinates.
    pub fn project(&self, g: &qo_core::Element) -> Option<qo_core::Element> {
        let section = self.coset_section.as_ref()?;
        Some(qo_core::Element(
            section.iter().map(|&i| g.coords()[i].clone()).collect(),
        ))
    }

    /// The JSON report for this decomposition.
    pub fn report(&self) -> serde_json::Value {
        let spec_value = |s: &GroupSpec| -> serde_json::Value {
            serde_json::from_str(&s.to_json()).expect("spec serialization is valid JSON")
        };
        json!({
            "o_part": spec_value(&self.o_part),
            "v_part": spec_value(&self.v_part),
            "product_form": self.product_form,
            "violations": self.violations,
        })
    }
}

fn clause(clause: &str, witness: String) -> ConstructionError {
    ConstructionError::StructureViolation {
        clause: clause.into(),
        witness,
    }
}

/// The order-like part of `g` as a standalone ordered spec, for the spec
/// kinds where the restriction of the quasi-order is expressible.
fn ordered_part_spec(g: &GroupSpec, members: &[qo_core::Element]) -> Result<GroupSpec> {
    match g.qo() {
        QoDef::Lex {
            degenerate_z2: true,
            ..
        }
        | QoDef::Valuation(_) => Ok(trivial_group()),
        QoDef::Lex { mixed: true, .. } => Err(ConstructionError::Core(
            CoreError::UnsupportedSpec("mixed lex orders have no order-like subgroup".into()),
        )),
        QoDef::Lex { .. } => Ok(g.clone()),
        QoDef::SubgroupOrder { .. } => Ok(GroupSpec::ordered_z()),
        QoDef::Product { ordered, .. } => Ok(ordered.as_ref().clone()),
        QoDef::Hahn { components } => {
            let mut parts = Vec::new();
            for c in components {
                let inner = universe(c, Window::new(1))?;
                let p = ordered_part_spec(c, &inner)?;
                if p.dim() > 0 {
                    parts.push(p);
                }
            }
            match parts.len() {
                0 => Ok(trivial_group()),
                1 => Ok(parts.pop().unwrap()),
                // Component order-like parts are ordered groups by
                // construction; gluing them lexicographically needs no
                // window re-check, so a tiny window suffices.
                _ => lex_product(&parts, Window::new(1)),
            }
        }
        QoDef::Table(_) | QoDef::Quotient(_) => {
            if members.len() == 1 {
                Ok(trivial_group())
            } else if g.is_finite() && g.order() == Some(members.len() as u64) {
                Ok(g.clone())
            } else {
                Err(ConstructionError::Core(CoreError::UnsupportedSpec(
                    "the order-like part of a table spec is not presentable standalone".into(),
                )))
            }
        }
    }
}

/// Standalone spec of the valued quotient, for composite kinds where the
/// quotient is readable off the shape: products quotient to their valued
/// factor, Hahn chains to the valuational Hahn product of the component
/// quotients. `None` when the shape does not determine it.
fn valued_part_spec(g: &GroupSpec) -> Option<GroupSpec> {
    let part = |c: &GroupSpec| -> Option<GroupSpec> {
        match c.qo() {
            QoDef::Valuation(_) => Some(c.clone()),
            QoDef::Lex {
                degenerate_z2: true,
                ..
            } => Some(c.clone()),
            QoDef::Lex { mixed: false, .. } => Some(trivial_group()),
            QoDef::Product { valued, .. } => Some(valued.as_ref().clone()),
            QoDef::Hahn { .. } => valued_part_spec(c),
            _ => None,
        }
    };
    match g.qo() {
        QoDef::Product { valued, .. } => Some(valued.as_ref().clone()),
        QoDef::Hahn { components } => {
            let mut parts = Vec::new();
            for c in components {
                let p = part(c)?;
                if p.dim() > 0 {
                    parts.push(p);
                }
            }
            match parts.len() {
                0 => None,
                1 => parts.pop(),
                _ => crate::products::assemble(QoDef::Hahn { components: parts }).ok(),
            }
        }
        _ => None,
    }
}

/// Spec-level recognition of the order-like part as a direct summand.
fn is_product_form(g: &GroupSpec, desc: &SubgroupDesc) -> bool {
    match desc {
        SubgroupDesc::Whole | SubgroupDesc::Trivial => true,
        _ => match g.qo() {
            QoDef::Product { .. } => true,
            QoDef::Hahn { components } => components.iter().all(|c| {
                qo_core::subgroup::o_part_description(c)
                    .map(|d| is_product_form(c, &d))
                    .unwrap_or(false)
            }),
            _ => false,
        },
    }
}

/// Splits `g` into its order-like part and the valued quotient, verifying
/// the structure-theorem clauses on the window.
pub fn decompose(g: &GroupSpec, w: Window) -> Result<Decomposition> {
    let part = o_part(g, w).map_err(|e| match e {
        CoreError::StructureViolation(msg) => clause("(1)", msg),
        other => ConstructionError::Core(other),
    })?;
    let desc = part
        .description
        .clone()
        .unwrap_or_else(|| SubgroupDesc::Finite(part.elements.clone()));

    // Clause (2): the restriction to the order-like part is antisymmetric.
    for a in &part.elements {
        for b in &part.elements {
            if a != b && g.compare(a, b)? == qo_core::CompareResult::Equivalent {
                return Err(clause("(2)", format!("{a} ~ {b} inside the order-like part")));
            }
        }
    }

    // Clause (4): outside the order-like part, same coset means equivalent.
    let all = universe(g, w)?;
    for g1 in &all {
        if desc.contains(g, g1)? {
            continue;
        }
        for g2 in &all {
            let d = g.sub(g1, g2)?;
            if desc.contains(g, &d)?
                && g.compare(g1, g2)? != qo_core::CompareResult::Equivalent
            {
                return Err(clause(
                    "(4)",
                    format!("{g1} - {g2} lies in the order-like part, yet {g1} !~ {g2}"),
                ));
            }
        }
    }

    // Clause (3'): the quotient order is well defined and valuational.
    let v_part = match &desc {
        SubgroupDesc::Whole => trivial_group(),
        _ => {
            let raw = quotient_qo(g, &desc, w).map_err(|e| match e {
                CoreError::QuotientConditionViolated(msg) => clause("(3')", msg),
                other => ConstructionError::Core(other),
            })?;
            // The generic quotient of a composite comes back as a wrapper or
            // a materialized table; when the shape determines a structured
            // equivalent (the valued factor, or the valuational Hahn product
            // of component quotients), verify the two agree on the window
            // and keep the structured form.
            match valued_part_spec(g) {
                Some(canonical) if canonical != raw => {
                    let qs = universe(&raw, w)?;
                    for a in &qs {
                        for b in &qs {
                            if raw.compare(a, b)? != canonical.compare(a, b)? {
                                return Err(clause(
                                    "(3')",
                                    format!(
                                        "quotient disagrees with the shape-derived valued part \
                                         at {a}, {b}"
                                    ),
                                ));
                            }
                        }
                    }
                    canonical
                }
                _ => raw,
            }
        }
    };
    for q in universe(&v_part, w)? {
        if !q.is_zero() && v_part.classify(&q)? != Classification::VType {
            return Err(clause(
                "(3')",
                format!("quotient element {q} is not equivalent to its negation"),
            ));
        }
    }

    let valuation = extract_valuation(g, w)?;
    let o_spec = ordered_part_spec(g, &part.elements)?;
    let product_form = is_product_form(g, &desc);
    let coset_section = if product_form {
        Some(section_of(g, &desc))
    } else {
        None
    };
    Ok(Decomposition {
        original: g.clone(),
        o_part: o_spec,
        o_desc: desc,
        v_part,
        valuation,
        product_form,
        coset_section,
        window: w,
        violations: vec![],
    })
}

/// Recomposed coordinate order for a product-form split: the coordinates the
/// order-like part constrains to zero (the valued block), then the
/// coordinates it ranges over freely (the ordered block).
fn section_of(g: &GroupSpec, desc: &SubgroupDesc) -> Vec<usize> {
    let conds: Vec<CoordCond> = match desc {
        SubgroupDesc::Whole => vec![CoordCond::Any; g.dim()],
        SubgroupDesc::Trivial => vec![CoordCond::Zero; g.dim()],
        SubgroupDesc::Box(c) => c.clone(),
        SubgroupDesc::Finite(_) => vec![CoordCond::Any; g.dim()],
    };
    let zeros = conds
        .iter()
        .enumerate()
        .filter(|(_, c)| !matches!(c, CoordCond::Any))
        .map(|(i, _)| i);
    let anys = conds
        .iter()
        .enumerate()
        .filter(|(_, c)| matches!(c, CoordCond::Any))
        .map(|(i, _)| i);
    zeros.chain(anys).collect()
}

/// Rebuilds the glued product of a product-form decomposition. The result's
/// compare agrees with the original under the decomposition's coordinate
/// section.
pub fn recompose(d: &Decomposition) -> Result<GroupSpec> {
    if !d.product_form {
        return Err(ConstructionError::NotProductForm(
            "the order-like part is not a recognizable direct summand".into(),
        ));
    }
    if d.v_part.dim() == 0 {
        return Ok(d.o_part.clone());
    }
    if d.o_part.dim() == 0 {
        return Ok(d.v_part.clone());
    }
    compatible_product(&d.o_part, &d.v_part, d.window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qo_core::int;

    #[test]
    fn ordered_z_decomposes_to_itself_over_nothing() {
        let z = GroupSpec::ordered_z();
        let d = decompose(&z, Window::new(6)).unwrap();
        assert_eq!(d.o_part, z);
        assert_eq!(d.o_desc, SubgroupDesc::Whole);
        assert_eq!(d.v_part.dim(), 0);
        assert!(d.product_form);
        assert_eq!(recompose(&d).unwrap(), z);
    }

    #[test]
    fn padic_z8_decomposes_to_nothing_over_itself() {
        let p = GroupSpec::finite_padic(2, 3);
        let d = decompose(&p, Window::new(1)).unwrap();
        assert_eq!(d.o_part.dim(), 0);
        assert_eq!(d.v_part, p);
        assert!(d.product_form);
        assert_eq!(recompose(&d).unwrap(), p);
    }

    #[test]
    fn subgroup_order_is_not_product_form() {
        let g = GroupSpec::subgroup_order(5);
        let d = decompose(&g, Window::new(10)).unwrap();
        assert_eq!(d.o_part, GroupSpec::ordered_z());
        assert_eq!(d.v_part, GroupSpec::finite_trivial(5));
        assert!(!d.product_form);
        assert!(matches!(
            recompose(&d).unwrap_err(),
            ConstructionError::NotProductForm(_)
        ));
    }

    #[test]
    fn report_shape_has_the_four_keys() {
        let d = decompose(&GroupSpec::ordered_z(), Window::new(4)).unwrap();
        let r = d.report();
        assert!(r.get("o_part").is_some());
        assert!(r.get("v_part").is_some());
        assert_eq!(r.get("product_form"), Some(&serde_json::Value::Bool(true)));
        assert_eq!(r["violations"].as_array().map(Vec::len), Some(0));
    }

    #[test]
    fn section_projects_valued_block_first() {
        let a = GroupSpec::new(
            2,
            vec![],
            false,
            QoDef::Product {
                ordered: Box::new(GroupSpec::ordered_z()),
                valued: Box::new(
                    GroupSpec::new(1, vec![], false, QoDef::Valuation(qo_core::ValuationDef::Trivial))
                        .unwrap(),
                ),
            },
        )
        .unwrap();
        let d = decompose(&a, Window::new(3)).unwrap();
        assert_eq!(d.coset_section, Some(vec![0, 1]));
        let g = qo_core::Element(vec![int(2), int(-1)]);
        assert_eq!(d.project(&g), Some(g));
    }
}

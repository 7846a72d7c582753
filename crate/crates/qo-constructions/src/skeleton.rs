//! Skeletons of the archimedean coarsening, and desk-scale verification of
//! the Hahn-embedding picture for specs already presented in Hahn-product
//! coordinates.
//!
//! The skeleton of a torsion-free compatible group records, for each value
//! of the coarsest module valuation refining the quasi-order, the rib
//! `B_gamma = G^gamma / G_gamma`: the quotient of the elements at value at
//! least `gamma` by those strictly deeper. Ribs are computed as box
//! quotients restricted to the window and carry the induced quasi-order.

use qo_core::{
    archimedean_coarsening, check_q1, check_q2, describe_box, extract_valuation, quotient_box,
    spec::in_box, universe, CoordCond, CoreError, Element, ExtractedVal, GroupSpec, QoDef, Window,
};
use serde::Serialize;

use crate::error::{ConstructionError, Result};
use crate::products::compatible_hahn_product;

/// One rib of the skeleton: the quotient of consecutive coarse classes.
#[derive(Clone, Debug)]
pub struct SkeletonComponent {
    /// Position in the ascending value chain (0 = the value of the largest
    /// elements; higher indices sit closer to 0 in the quasi-order).
    pub value_index: usize,
    /// The rib `B_gamma` with its induced quasi-order.
    pub spec: GroupSpec,
    /// Box description of `G^gamma` (value at least `gamma`) in the original
    /// coordinates.
    pub outer: Vec<CoordCond>,
    /// Box description of `G_gamma` (value strictly greater).
    pub inner: Vec<CoordCond>,
}

/// The value chain of the archimedean coarsening together with its ribs.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub components: Vec<SkeletonComponent>,
}

/// Builds the skeleton of the archimedean coarsening of a torsion-free
/// compatible spec. Each rib is re-verified against the compatibility axioms
/// on the window, and the union-of-classes subgroups must be recognizable as
/// coordinate boxes.
pub fn arch_skeleton(g: &GroupSpec, w: Window, mult_bound: i64) -> Result<Skeleton> {
    let arch = archimedean_coarsening(g, w, mult_bound)?;
    if !arch.total {
        return Err(ConstructionError::Core(CoreError::StructureViolation(
            "the coarse relation is not total on the window; enlarge the multiplier bound".into(),
        )));
    }
    if let Some(v) = arch.check_valuational(g)? {
        return Err(ConstructionError::Core(CoreError::StructureViolation(
            format!("the coarsening is not valuational on the window: {}", v.rendering),
        )));
    }
    let all = universe(g, w)?;
    let k = arch.nonzero_class_count();
    let mut components = Vec::with_capacity(k);
    for i in 0..k {
        // Element classes ascend from {0}; value index i counts down from
        // the top class, so the class at element rank k - i carries value i.
        let r = k - i;
        let outer_els: Vec<Element> = arch.classes[..=r].iter().flatten().cloned().collect();
        let inner_els: Vec<Element> = arch.classes[..r].iter().flatten().cloned().collect();
        let outer = describe_box(g, &outer_els, &all)?;
        let inner = describe_box(g, &inner_els, &all)?;
        let spec = quotient_box(g, &outer, &inner)?;
        if let Some(v) = check_q1(&spec, w)? {
            return Err(ConstructionError::Core(CoreError::StructureViolation(
                format!("skeleton rib {i} fails reflexivity-style checks: {}", v.rendering),
            )));
        }
        if let Some(v) = check_q2(&spec, w)? {
            return Err(ConstructionError::Core(CoreError::StructureViolation(
                format!("skeleton rib {i} fails translation invariance: {}", v.rendering),
            )));
        }
        components.push(SkeletonComponent {
            value_index: i,
            spec,
            outer,
            inner,
        });
    }
    Ok(Skeleton { components })
}

/// Outcome of the coordinate-level Hahn-embedding verification.
#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub pairs_checked: usize,
    /// `g <= h` in the spec implies the same in the rebuilt composite.
    pub preserved: bool,
    /// The converse direction.
    pub reflected: bool,
    /// The spec's intrinsic value chain orders exactly like the structural
    /// (block index, in-block value) keys of the coordinates.
    pub value_correspondence: bool,
    /// Elements at a common value share a coset exactly when their
    /// difference's structural key is strictly deeper.
    pub coset_clause: bool,
    pub witness: Option<String>,
}

impl EmbeddingReport {
    pub fn pass(&self) -> bool {
        self.preserved && self.reflected && self.value_correspondence && self.coset_clause
    }
}

/// Structural position of an element of a Hahn-coordinate spec: the leading
/// block whose projection leaves that block's order-like part, refined by
/// the block's own value there. Ascending order runs toward 0, mirroring the
/// extracted value chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum StructuralKey {
    Leading(usize, usize),
    OrderLike,
    Zero,
}

fn lex_components(g: &GroupSpec) -> Option<Vec<GroupSpec>> {
    match g.qo() {
        QoDef::Lex {
            degenerate_z2: false,
            mixed: false,
        } if g.torsion_orders().is_empty() && g.free_rank() > 0 => Some(
            (0..g.free_rank())
                .map(|_| {
                    GroupSpec::new(
                        1,
                        vec![],
                        g.divisible(),
                        QoDef::Lex {
                            degenerate_z2: false,
                            mixed: false,
                        },
                    )
                    .expect("rank-1 lex specs are valid")
                })
                .collect(),
        ),
        _ => None,
    }
}

/// Verifies, for a spec presented in Hahn-product coordinates, that the
/// identity coordinate map into the compatible Hahn product of its
/// components preserves and reflects the quasi-order on all window pairs,
/// and that the intrinsic valuation matches the structural coordinate keys
/// coset for coset.
pub fn verify_hahn_embedding(g: &GroupSpec, w: Window) -> Result<EmbeddingReport> {
    let components: Vec<GroupSpec> = match g.qo() {
        QoDef::Hahn { components } => components.clone(),
        _ => lex_components(g).ok_or_else(|| {
            ConstructionError::Core(CoreError::UnsupportedSpec(
                "Hahn-embedding verification needs a spec in Hahn-product coordinates".into(),
            ))
        })?,
    };
    let target = compatible_hahn_product(&components, w)?;

    // Per-block data: coordinate span, order-like box, and value chain.
    let mut starts = Vec::with_capacity(components.len());
    let mut offset = 0usize;
    for c in &components {
        starts.push(offset);
        offset += c.dim();
    }
    let o_conds: Vec<Vec<CoordCond>> = components
        .iter()
        .map(|c| {
            qo_core::subgroup::o_part_description(c)
                .map(|d| match d {
                    qo_core::SubgroupDesc::Whole => vec![CoordCond::Any; c.dim()],
                    qo_core::SubgroupDesc::Trivial => vec![CoordCond::Zero; c.dim()],
                    qo_core::SubgroupDesc::Box(conds) => conds,
                    qo_core::SubgroupDesc::Finite(_) => vec![CoordCond::Zero; c.dim()],
                })
                .ok_or_else(|| {
                    ConstructionError::Core(CoreError::UnsupportedSpec(
                        "component order-like part is not box-describable".into(),
                    ))
                })
        })
        .collect::<Result<_>>()?;
    let comp_vals: Vec<_> = components
        .iter()
        .map(|c| extract_valuation(c, w))
        .collect::<std::result::Result<_, _>>()?;

    let proj = |a: &Element, i: usize| -> Element {
        Element(a.coords()[starts[i]..starts[i] + components[i].dim()].to_vec())
    };
    let key = |a: &Element| -> Result<StructuralKey> {
        for i in 0..components.len() {
            let p = proj(a, i);
            if !in_box(&o_conds[i], &p) {
                return match comp_vals[i].value(&p) {
                    Some(ExtractedVal::Gamma(j)) => Ok(StructuralKey::Leading(i, j)),
                    other => Err(ConstructionError::Core(CoreError::StructureViolation(
                        format!(
                            "block {i} projection {p} leaves the order-like part yet carries \
                             value {other:?}"
                        ),
                    ))),
                };
            }
        }
        Ok(if a.is_zero() {
            StructuralKey::Zero
        } else {
            StructuralKey::OrderLike
        })
    };

    let val = extract_valuation(g, w)?;
    let all = universe(g, w)?;
    let keys: Vec<StructuralKey> = all.iter().map(&key).collect::<Result<_>>()?;
    let vals: Vec<ExtractedVal> = all
        .iter()
        .map(|a| {
            val.value(a).ok_or_else(|| {
                ConstructionError::Core(CoreError::StructureViolation(format!(
                    "window element {a} missing from the extracted valuation"
                )))
            })
        })
        .collect::<Result<_>>()?;

    let mut report = EmbeddingReport {
        pairs_checked: 0,
        preserved: true,
        reflected: true,
        value_correspondence: true,
        coset_clause: true,
        witness: None,
    };
    let note = |flag: &mut bool, witness: String, slot: &mut Option<String>| {
        *flag = false;
        slot.get_or_insert(witness);
    };
    for (ia, a) in all.iter().enumerate() {
        for (ib, b) in all.iter().enumerate() {
            report.pairs_checked += 1;
            let in_g = g.le(a, b)?;
            let in_t = target.le(a, b)?;
            if in_g && !in_t {
                note(
                    &mut report.preserved,
                    format!("{a} <~ {b} holds in the spec but not the composite"),
                    &mut report.witness,
                );
            }
            if in_t && !in_g {
                note(
                    &mut report.reflected,
                    format!("{a} <~ {b} holds in the composite but not the spec"),
                    &mut report.witness,
                );
            }
            if vals[ia].cmp(&vals[ib]) != keys[ia].cmp(&keys[ib]) {
                note(
                    &mut report.value_correspondence,
                    format!(
                        "values of {a}, {b} order as {:?} vs {:?} but keys as {:?} vs {:?}",
                        vals[ia], vals[ib], keys[ia], keys[ib]
                    ),
                    &mut report.witness,
                );
            }
            if keys[ia] == keys[ib] && matches!(keys[ia], StructuralKey::Leading(..)) {
                let d = g.sub(a, b)?;
                if let Some(vd) = val.value(&d) {
                    let deeper_value = vd > vals[ia];
                    let deeper_key = key(&d)? > keys[ia];
                    if deeper_value != deeper_key {
                        note(
                            &mut report.coset_clause,
                            format!(
                                "{a} and {b} share a value; coset agreement by value is \
                                 {deeper_value} but by coordinates {deeper_key}"
                            ),
                            &mut report.witness,
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

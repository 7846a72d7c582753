//! Quotients by convex subgroups.

use crate::compare::{Classification, CompareResult};
use crate::element::Element;
use crate::error::{CoreError, Result};
use crate::spec::{quotient_box, CoordCond, GroupSpec, QoDef};
use crate::subgroup::SubgroupDesc;
use crate::window::{enumerate_torsion_box, universe, CompareCache, Window};

/// Builds the quotient spec of `spec` by the convex subgroup `h`, verifying
/// on the window the translation law the quotient order needs:
/// if g1 - g2 lies outside H and g1 <~ g2, then g1 + h1 <~ g2 + h2 for all
/// h1, h2 in H.
///
/// Supported subgroups are the box-shaped ones (including Whole and
/// Trivial); quotients by arbitrary finite subgroups that are not boxes are
/// out of scope.
pub fn quotient_qo(spec: &GroupSpec, h: &SubgroupDesc, w: Window) -> Result<GroupSpec> {
    let conds = box_conds(spec, h)?;
    verify_side_condition(spec, h, w)?;
    if conds.iter().all(|c| matches!(c, CoordCond::Zero)) {
        // Quotient by the trivial subgroup changes nothing.
        return Ok(spec.clone());
    }
    let outer = vec![CoordCond::Any; spec.dim()];
    let q = quotient_box(spec, &outer, &conds)?;
    Ok(canonicalize(&q).unwrap_or(q))
}

fn box_conds(spec: &GroupSpec, h: &SubgroupDesc) -> Result<Vec<CoordCond>> {
    match h {
        SubgroupDesc::Whole => Ok(vec![CoordCond::Any; spec.dim()]),
        SubgroupDesc::Trivial => Ok(vec![CoordCond::Zero; spec.dim()]),
        SubgroupDesc::Box(conds) => {
            if conds.len() != spec.dim() {
                return Err(CoreError::NotASubgroup(
                    "box condition list does not match the dimension".into(),
                ));
            }
            Ok(conds.clone())
        }
        SubgroupDesc::Finite(els) => {
            // Accept an element list only when it coincides with a box.
            if !spec.is_finite() {
                return Err(CoreError::UnsupportedSpec(
                    "finite element lists only describe subgroups of finite groups".into(),
                ));
            }
            let mut conds = Vec::with_capacity(spec.dim());
            for pos in 0..spec.dim() {
                let modulus = els
                    .iter()
                    .filter(|e| !e.coords()[pos].is_zero())
                    .map(|e| e.coords()[pos].numer().clone())
                    .fold(num_bigint::BigInt::from(0), num_integer::gcd);
                use num_traits::{ToPrimitive, Zero};
                conds.push(if modulus.is_zero() {
                    CoordCond::Zero
                } else {
                    let m = modulus.to_u32().ok_or_else(|| {
                        CoreError::NotASubgroup("subgroup coordinate out of range".into())
                    })?;
                    if m == 1 {
                        CoordCond::Any
                    } else {
                        CoordCond::Div(m)
                    }
                });
            }
            // The box generated coordinatewise must reproduce the list.
            let members: Vec<Element> = enumerate_torsion_box(spec)
                .into_iter()
                .filter(|g| crate::spec::in_box(&conds, g))
                .collect();
            let mut sorted_a: Vec<&Element> = els.iter().collect();
            let mut sorted_b: Vec<&Element> = members.iter().collect();
            sorted_a.sort();
            sorted_b.sort();
            sorted_a.dedup();
            if sorted_a != sorted_b {
                return Err(CoreError::UnsupportedSpec(
                    "subgroup is not a product of per-coordinate subgroups".into(),
                ));
            }
            Ok(conds)
        }
    }
}

/// Recognizes the subgroup spanned by `els` as a product of per-coordinate
/// subgroups and returns the coordinate conditions. `ambient` is the element
/// collection the recognition is checked against: every ambient element
/// satisfying the conditions must be listed in `els`, and vice versa. This
/// is the window-level analogue of the finite-group recognition inside
/// [`quotient_qo`], usable for subgroups of infinite groups.
pub fn describe_box(spec: &GroupSpec, els: &[Element], ambient: &[Element]) -> Result<Vec<CoordCond>> {
    use num_traits::{One, Signed, ToPrimitive, Zero};
    let mut conds = Vec::with_capacity(spec.dim());
    for pos in 0..spec.dim() {
        let modulus = els
            .iter()
            .filter(|e| !e.coords()[pos].is_zero())
            .map(|e| e.coords()[pos].numer().abs())
            .fold(num_bigint::BigInt::from(0), num_integer::gcd);
        conds.push(if modulus.is_zero() {
            CoordCond::Zero
        } else if els.iter().any(|e| !e.coords()[pos].denom().is_one()) {
            // Rational coordinates present: the only box subgroups tracked at
            // such a coordinate are full or zero.
            CoordCond::Any
        } else {
            let m = modulus
                .to_u32()
                .ok_or_else(|| CoreError::NotASubgroup("subgroup coordinate out of range".into()))?;
            if m == 1 {
                CoordCond::Any
            } else {
                CoordCond::Div(m)
            }
        });
    }
    let mut inside: Vec<&Element> = ambient
        .iter()
        .filter(|g| crate::spec::in_box(&conds, g))
        .collect();
    let mut listed: Vec<&Element> = els.iter().collect();
    inside.sort();
    listed.sort();
    listed.dedup();
    if inside != listed {
        return Err(CoreError::UnsupportedSpec(
            "subgroup is not a product of per-coordinate subgroups".into(),
        ));
    }
    Ok(conds)
}

fn verify_side_condition(spec: &GroupSpec, h: &SubgroupDesc, w: Window) -> Result<()> {
    let all = universe(spec, w)?;
    let members: Vec<Element> = all
        .iter()
        .filter(|g| h.contains(spec, g).unwrap_or(false))
        .cloned()
        .collect();
    // Translating by 0 alone cannot break the law.
    if members.len() <= 1 {
        return Ok(());
    }
    // Precompare the distinct translates g + h once, instead of comparing
    // sums pair by pair inside the quartic loop below.
    let mut sums: Vec<Element> = Vec::new();
    let mut index: std::collections::HashMap<Element, u32> = std::collections::HashMap::new();
    let mut translate_idx: Vec<Vec<u32>> = Vec::with_capacity(all.len());
    for g in &all {
        let mut row = Vec::with_capacity(members.len());
        for m in &members {
            let s = spec.add(g, m)?;
            let i = *index.entry(s.clone()).or_insert_with(|| {
                sums.push(s.clone());
                (sums.len() - 1) as u32
            });
            row.push(i);
        }
        translate_idx.push(row);
    }
    let cache = CompareCache::build(spec, sums)?;
    for (i, g1) in all.iter().enumerate() {
        for (j, g2) in all.iter().enumerate() {
            let d = spec.sub(g1, g2)?;
            if h.contains(spec, &d)? || !spec.le(g1, g2)? {
                continue;
            }
            for (k1, &a) in translate_idx[i].iter().enumerate() {
                for (k2, &b) in translate_idx[j].iter().enumerate() {
                    if !cache.le_idx(a, b) {
                        let (h1, h2) = (&members[k1], &members[k2]);
                        return Err(CoreError::QuotientConditionViolated(format!(
                            "g1={g1}, g2={g2}, h1={h1}, h2={h2}: g1 <~ g2 with g1-g2 \
                             outside the subgroup, but g1+h1 is not <~ g2+h2"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Replaces a quotient wrapper by a self-contained equivalent spec where one
/// is recognizable: the valued factor of a product when quotienting by the
/// order-like part, or a finite table.
fn canonicalize(q: &GroupSpec) -> Option<GroupSpec> {
    let qb = match q.qo() {
        QoDef::Quotient(qb) => qb,
        _ => return None,
    };
    // Quotient of a product by exactly its order-like part: the valued
    // factor, coordinate for coordinate.
    if let QoDef::Product { ordered, valued } = qb.ambient.qo() {
        let is_o_part = qb.inner[..valued.dim()]
            .iter()
            .all(|c| matches!(c, CoordCond::Zero))
            && qb.inner[valued.dim()..]
                .iter()
                .all(|c| matches!(c, CoordCond::Any))
            && ordered.dim() + valued.dim() == qb.ambient.dim();
        if is_o_part {
            return Some(valued.as_ref().clone());
        }
    }
    if q.is_finite() {
        return materialize_finite(q).ok();
    }
    None
}

/// Reads off a finite quotient as a self-contained valuation table (when the
/// quotient is valuational) or a rank table otherwise.
fn materialize_finite(q: &GroupSpec) -> Result<GroupSpec> {
    let elems = enumerate_torsion_box(q);
    // Rank elements by the quasi-order.
    let mut reps: Vec<Element> = Vec::new();
    for g in &elems {
        let mut seen = false;
        for r in &reps {
            if q.compare(g, r)? == CompareResult::Equivalent {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(g.clone());
        }
    }
    reps.sort_by(|a, b| match q.compare(a, b) {
        Ok(CompareResult::StrictBelow) => std::cmp::Ordering::Less,
        Ok(CompareResult::StrictAbove) => std::cmp::Ordering::Greater,
        _ => std::cmp::Ordering::Equal,
    });
    let rank_of = |g: &Element| -> Result<u64> {
        for (i, r) in reps.iter().enumerate() {
            if q.compare(g, r)? == CompareResult::Equivalent {
                return Ok(i as u64);
            }
        }
        Err(CoreError::StructureViolation(format!("no rank for {g}")))
    };
    // Valuational iff 0 is the strict minimum and every nonzero element is
    // torsion-like.
    let mut valuational = true;
    for g in &elems {
        if g.is_zero() {
            continue;
        }
        if q.classify(g)? != Classification::VType || !q.strictly_below(&q.zero(), g)? {
            valuational = false;
            break;
        }
    }
    let torsion = q.torsion_orders().to_vec();
    if valuational {
        if reps.len() == 2 {
            // One nonzero class: the trivial valuation.
            return GroupSpec::new(
                0,
                torsion,
                false,
                QoDef::Valuation(crate::spec::ValuationDef::Trivial),
            );
        }
        // Chain of k nonzero classes: class rank 0 is the lowest, meaning
        // the deepest value; value = (number of nonzero classes - 1) - rank.
        let top = reps.len() - 2;
        let mut entries = Vec::new();
        for g in &elems {
            if g.is_zero() {
                continue;
            }
            let r = rank_of(g)? as usize - 1;
            entries.push((g.clone(), (top - r) as u32));
        }
        return GroupSpec::valuation_table(torsion, entries);
    }
    let mut ranks = Vec::new();
    for g in &elems {
        ranks.push((g.clone(), rank_of(g)?));
    }
    GroupSpec::table(torsion, ranks)
}

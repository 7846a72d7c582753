//! Compatibility axiom checks over windows.
//!
//! A `None` result means no witness in the window violates the axiom; for
//! infinite groups that is a window verdict, not a proof. Reports carry the
//! first violating witness in the deterministic enumeration order of
//! [`Window::elements`], so regression fixtures are stable.

use serde::Serialize;

use crate::compare::CompareResult;
use crate::element::Element;
use crate::error::Result;
use crate::spec::GroupSpec;
use crate::window::{sumset_closure, universe, CompareCache, Window};

#[derive(Clone, Debug, Serialize)]
pub struct ViolationReport {
    pub axiom: String,
    pub witness: Vec<Element>,
    pub rendering: String,
}

/// (Q1): the only element equivalent to 0 is 0 itself.
pub fn check_q1(spec: &GroupSpec, w: Window) -> Result<Option<ViolationReport>> {
    let zero = spec.zero();
    for g in universe(spec, w)? {
        if !g.is_zero() && spec.compare(&g, &zero)? == CompareResult::Equivalent {
            return Ok(Some(ViolationReport {
                axiom: "Q1".into(),
                rendering: format!("{g} ~ 0 but {g} != 0"),
                witness: vec![g],
            }));
        }
    }
    Ok(None)
}

/// (Q2): for all x, y, z with x below y and y not equivalent to z,
/// translation by z preserves the comparison: x+z stays below y+z.
pub fn check_q2(spec: &GroupSpec, w: Window) -> Result<Option<ViolationReport>> {
    let base = universe(spec, w)?;
    let closure = sumset_closure(spec, &base)?;
    let cache = CompareCache::build(spec, closure)?;
    let n = base.len();
    // Index of each base element and of each pairwise sum in the cache.
    let idx: Vec<u32> = base
        .iter()
        .map(|e| cache.index_of(e).expect("base is in its closure"))
        .collect();
    let mut sum = vec![0u32; n * n];
    for (i, a) in base.iter().enumerate() {
        for (j, b) in base.iter().enumerate() {
            let s = spec.add(a, b)?;
            sum[i * n + j] = cache.index_of(&s).expect("sum is in the closure");
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !cache.le_idx(idx[x], idx[y]) {
                continue;
            }
            for z in 0..n {
                if cache.cmp_idx(idx[y], idx[z]) == CompareResult::Equivalent {
                    continue;
                }
                if !cache.le_idx(sum[x * n + z], sum[y * n + z]) {
                    let (ex, ey, ez) = (&base[x], &base[y], &base[z]);
                    return Ok(Some(ViolationReport {
                        axiom: "Q2".into(),
                        rendering: format!(
                            "x={ex} <~ y={ey} and y !~ z={ez}, yet x+z={} is not <~ y+z={}",
                            cache.elems[sum[x * n + z] as usize],
                            cache.elems[sum[y * n + z] as usize]
                        ),
                        witness: vec![ex.clone(), ey.clone(), ez.clone()],
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// (VM_n): whenever -g is below g, g is below n*g.
pub fn check_vm(spec: &GroupSpec, n: i64, w: Window) -> Result<Option<ViolationReport>> {
    for g in universe(spec, w)? {
        let ng = spec.neg(&g)?;
        if !spec.le(&ng, &g)? {
            continue;
        }
        let mg = spec.scale(n, &g)?;
        if !spec.le(&g, &mg)? {
            return Ok(Some(ViolationReport {
                axiom: format!("VM_{n}"),
                rendering: format!("-{g} <~ {g} but {g} is not <~ {n}*{g} = {mg}"),
                witness: vec![g],
            }));
        }
    }
    Ok(None)
}

/// Exhaustive totality/transitivity sweep over a window; returns the first
/// failing triple, if any. Useful as a sanity harness for table-backed
/// quasi-orders where nothing guarantees transitivity by construction.
pub fn check_transitivity(spec: &GroupSpec, w: Window) -> Result<Option<ViolationReport>> {
    let base = universe(spec, w)?;
    let cache = CompareCache::build(spec, base)?;
    let n = cache.len() as u32;
    for x in 0..n {
        for y in 0..n {
            if !cache.le_idx(x, y) {
                continue;
            }
            for z in 0..n {
                if cache.le_idx(y, z) && !cache.le_idx(x, z) {
                    return Ok(Some(ViolationReport {
                        axiom: "transitivity".into(),
                        rendering: format!(
                            "{} <~ {} <~ {} but the outer comparison fails",
                            cache.elems[x as usize],
                            cache.elems[y as usize],
                            cache.elems[z as usize]
                        ),
                        witness: vec![
                            cache.elems[x as usize].clone(),
                            cache.elems[y as usize].clone(),
                            cache.elems[z as usize].clone(),
                        ],
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Re-evaluates a report's axiom instance at its witness; true when the
/// violation reproduces. Keeps regression reports honest.
pub fn reverify(spec: &GroupSpec, report: &ViolationReport) -> Result<bool> {
    match (report.axiom.as_str(), report.witness.as_slice()) {
        ("Q1", [g]) => {
            Ok(!g.is_zero() && spec.compare(g, &spec.zero())? == CompareResult::Equivalent)
        }
        ("Q2", [x, y, z]) => {
            let xz = spec.add(x, z)?;
            let yz = spec.add(y, z)?;
            Ok(spec.le(x, y)?
                && spec.compare(y, z)? != CompareResult::Equivalent
                && !spec.le(&xz, &yz)?)
        }
        (vm, [g]) if vm.starts_with("VM_") => {
            let n: i64 = vm[3..].parse().map_err(|_| {
                crate::error::CoreError::InvalidSpec(format!("bad axiom tag {vm}"))
            })?;
            let ng = spec.neg(g)?;
            let mg = spec.scale(n, g)?;
            Ok(spec.le(&ng, g)? && !spec.le(g, &mg)?)
        }
        ("transitivity", [x, y, z]) => {
            Ok(spec.le(x, y)? && spec.le(y, z)? && !spec.le(x, z)?)
        }
        _ => Ok(false),
    }
}

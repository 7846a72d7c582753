//! The archimedean coarsening of a compatible quasi-order.
//!
//! `g` is one coarse step below `h` when some nonzero multiples satisfy
//! `0 <~ n*g <~ m*h` with multipliers bounded by a configured constant; the
//! coarsening is the transitive closure of that step relation over the
//! window. On torsion-free compatible groups the closure is valuational and
//! identifies every element with its nonzero multiples.
//!
//! Bounding the multipliers makes the step relation an under-approximation;
//! the closure is reported as a window verdict, never a proof. One caution
//! holds even in exact arithmetic: the closure extends the quasi-order on
//! the cone above 0 only. A negative order-like element sits below 0 in the
//! quasi-order but shares the coarse class of its negation, so pointwise
//! containment of the original order in the coarsening can genuinely fail
//! (in the lexicographic plane, (-1,0) <~ (0,1) but their coarse classes
//! compare the other way).

use serde::Serialize;

use crate::axioms::ViolationReport;
use crate::element::Element;
use crate::error::{CoreError, Result};
use crate::spec::GroupSpec;
use crate::window::{universe, Window};

pub const DEFAULT_MULT_BOUND: i64 = 16;

#[derive(Clone, Debug, Serialize)]
pub struct ArchData {
    pub elems: Vec<Element>,
    /// Step relation, flattened row-major over `elems`.
    pub prime: Vec<bool>,
    /// Transitive closure of the step relation.
    pub star: Vec<bool>,
    /// Whether the closure relates every pair one way or the other.
    pub total: bool,
    /// Coarse class index per element, ascending in the closure order
    /// (class 0 is the bottom; 0 itself always sits alone there).
    pub rank: Vec<u32>,
    /// Classes in ascending order, each in enumeration order.
    pub classes: Vec<Vec<Element>>,
    pub mult_bound: i64,
}

impl ArchData {
    fn idx(&self, g: &Element) -> Option<usize> {
        self.elems.iter().position(|e| e == g)
    }

    pub fn prime_rel(&self, g: &Element, h: &Element) -> Option<bool> {
        let (i, j) = (self.idx(g)?, self.idx(h)?);
        Some(self.prime[i * self.elems.len() + j])
    }

    pub fn star_rel(&self, g: &Element, h: &Element) -> Option<bool> {
        let (i, j) = (self.idx(g)?, self.idx(h)?);
        Some(self.star[i * self.elems.len() + j])
    }

    /// The number of distinct nonzero coarse classes.
    pub fn nonzero_class_count(&self) -> usize {
        self.classes.len().saturating_sub(1)
    }

    /// Window check that the closure behaves like a valuation-induced
    /// quasi-order: 0 strictly minimal, every element equivalent to its
    /// negation, and the ultrametric law for in-window sums.
    pub fn check_valuational(&self, spec: &GroupSpec) -> Result<Option<ViolationReport>> {
        let n = self.elems.len();
        let at = |i: usize, j: usize| self.star[i * n + j];
        for (i, g) in self.elems.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let zero_idx = self
                .idx(&spec.zero())
                .ok_or_else(|| CoreError::StructureViolation("0 missing from window".into()))?;
            if at(i, zero_idx) {
                return Ok(Some(ViolationReport {
                    axiom: "coarse-zero-minimal".into(),
                    rendering: format!("{g} lies coarsely below 0"),
                    witness: vec![g.clone()],
                }));
            }
            let ng = spec.neg(g)?;
            if let Some(j) = self.idx(&ng) {
                if !at(i, j) || !at(j, i) {
                    return Ok(Some(ViolationReport {
                        axiom: "coarse-negation-symmetry".into(),
                        rendering: format!("{g} and {ng} fall in different coarse classes"),
                        witness: vec![g.clone(), ng],
                    }));
                }
            }
        }
        for (i, g) in self.elems.iter().enumerate() {
            for (j, h) in self.elems.iter().enumerate() {
                if !at(i, j) {
                    continue;
                }
                let s = spec.add(g, h)?;
                if let Some(k) = self.idx(&s) {
                    // Ultrametric in quasi-order form: g <~ h forces g+h <~ h.
                    if !at(k, j) {
                        return Ok(Some(ViolationReport {
                            axiom: "coarse-ultrametric".into(),
                            rendering: format!(
                                "{g} coarsely below {h}, yet {g}+{h}={s} is not"
                            ),
                            witness: vec![g.clone(), h.clone(), s],
                        }));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Computes the archimedean coarsening over the window.
pub fn archimedean_coarsening(
    spec: &GroupSpec,
    w: Window,
    mult_bound: i64,
) -> Result<ArchData> {
    if !spec.torsion_orders().is_empty() || spec.free_rank() == 0 {
        return Err(CoreError::UnsupportedSpec(
            "archimedean coarsening requires a torsion-free group of positive rank".into(),
        ));
    }
    if mult_bound < 1 {
        return Err(CoreError::InvalidSpec(
            "multiplier bound must be at least 1".into(),
        ));
    }
    let elems = universe(spec, w)?;
    let n = elems.len();
    let zero = spec.zero();
    // For each element: the least positive multiple and the greatest
    // multiple in the quasi-order, over nonzero multipliers up to the bound.
    // `0 <~ n*g <~ m*h` for some multipliers iff least(g) <~ greatest(h).
    let mut least: Vec<Element> = Vec::with_capacity(n);
    let mut greatest: Vec<Element> = Vec::with_capacity(n);
    for g in &elems {
        let mut lo: Option<Element> = None;
        let mut hi: Option<Element> = None;
        for k in 1..=mult_bound {
            for m in [k, -k] {
                let mg = spec.scale(m, g)?;
                if spec.le(&zero, &mg)? {
                    lo = Some(match lo {
                        None => mg.clone(),
                        Some(cur) => {
                            if spec.le(&mg, &cur)? {
                                mg.clone()
                            } else {
                                cur
                            }
                        }
                    });
                }
                hi = Some(match hi {
                    None => mg,
                    Some(cur) => {
                        if spec.le(&cur, &mg)? {
                            mg
                        } else {
                            cur
                        }
                    }
                });
            }
        }
        // A compatible total q.o puts some nonzero multiple above 0.
        let lo = lo.ok_or_else(|| {
            CoreError::StructureViolation(format!(
                "no positive multiple of {g} within the multiplier bound"
            ))
        })?;
        least.push(lo);
        greatest.push(hi.expect("multiplier range is nonempty"));
    }
    let mut prime = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            prime[i * n + j] = spec.le(&least[i], &greatest[j])?;
        }
    }
    // Transitive closure over bitset rows.
    let words = n.div_ceil(64);
    let mut rows = vec![0u64; n * words];
    for i in 0..n {
        for j in 0..n {
            if prime[i * n + j] {
                rows[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if rows[i * words + k / 64] & (1 << (k % 64)) != 0 {
                for wd in 0..words {
                    let v = rows[k * words + wd];
                    rows[i * words + wd] |= v;
                }
            }
        }
    }
    let mut star = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            star[i * n + j] = rows[i * words + j / 64] & (1 << (j % 64)) != 0;
        }
    }
    let mut total = true;
    'outer: for i in 0..n {
        for j in 0..n {
            if !star[i * n + j] && !star[j * n + i] {
                total = false;
                break 'outer;
            }
        }
    }
    // Coarse classes, ascending.
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if star[i * n + r] && star[r * n + i] {
                found = Some(c);
                break;
            }
        }
        class_of[i] = match found {
            Some(c) => c,
            None => {
                reps.push(i);
                reps.len() - 1
            }
        };
    }
    // Sort class representatives ascending in the closure.
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (reps[a], reps[b]);
        if star[ra * n + rb] && !star[rb * n + ra] {
            std::cmp::Ordering::Less
        } else if star[rb * n + ra] && !star[ra * n + rb] {
            std::cmp::Ordering::Greater
        } else {
            a.cmp(&b)
        }
    });
    let mut class_rank = vec![0u32; reps.len()];
    for (new_rank, &old) in order.iter().enumerate() {
        class_rank[old] = new_rank as u32;
    }
    let rank: Vec<u32> = class_of.iter().map(|&c| class_rank[c]).collect();
    let mut classes: Vec<Vec<Element>> = vec![Vec::new(); reps.len()];
    for (i, g) in elems.iter().enumerate() {
        classes[rank[i] as usize].push(g.clone());
    }
    Ok(ArchData {
        elems,
        prime,
        star,
        total,
        rank,
        classes,
        mult_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{CoordCond, QoDef, ValuationDef};

    fn e(cs: &[i64]) -> Element {
        Element::from_ints(cs)
    }

    #[test]
    fn z_coarsens_to_trivial() {
        let spec = GroupSpec::ordered_z();
        let a = archimedean_coarsening(&spec, Window::new(8), DEFAULT_MULT_BOUND).unwrap();
        assert!(a.total);
        assert_eq!(a.nonzero_class_count(), 1);
        assert!(a.check_valuational(&spec).unwrap().is_none());
        assert_eq!(a.star_rel(&e(&[-5]), &e(&[3])), Some(true));
        assert_eq!(a.star_rel(&e(&[3]), &e(&[-5])), Some(true));
        assert_eq!(a.star_rel(&e(&[3]), &e(&[0])), Some(false));
    }

    #[test]
    fn lex_plane_coarsens_to_two_classes() {
        let spec = GroupSpec::ordered_z_lex(2);
        let a = archimedean_coarsening(&spec, Window::new(4), DEFAULT_MULT_BOUND).unwrap();
        assert!(a.total);
        assert_eq!(a.nonzero_class_count(), 2);
        // The second axis is the small class.
        assert_eq!(a.star_rel(&e(&[0, 3]), &e(&[1, 0])), Some(true));
        assert_eq!(a.star_rel(&e(&[1, 0]), &e(&[0, 3])), Some(false));
        assert!(a.check_valuational(&spec).unwrap().is_none());
        // The coarsening extends the order on the positive cone only: the
        // negative first axis is below (0,1) in the order but coarsely above.
        assert_eq!(a.star_rel(&e(&[-1, 0]), &e(&[0, 1])), Some(false));
    }

    #[test]
    fn nontransitive_step_relation_matches_hand_computation() {
        // Z^2 valued in a three-point chain by second-coordinate parity and
        // first-coordinate vanishing.
        let spec = GroupSpec::new(
            2,
            vec![],
            false,
            QoDef::Valuation(ValuationDef::Levels(vec![
                vec![CoordCond::Any, CoordCond::Div(2)],
                vec![CoordCond::Zero, CoordCond::Div(2)],
            ])),
        )
        .unwrap();
        let a = archimedean_coarsening(&spec, Window::new(4), DEFAULT_MULT_BOUND).unwrap();
        let (f, g, h) = (e(&[0, 2]), e(&[1, 2]), e(&[0, 1]));
        assert_eq!(a.prime_rel(&g, &h), Some(true));
        assert_eq!(a.prime_rel(&h, &f), Some(true));
        assert_eq!(a.prime_rel(&g, &f), Some(false));
        // Closure restores transitivity.
        assert_eq!(a.star_rel(&g, &f), Some(true));
        assert!(a.check_valuational(&spec).unwrap().is_none());
        // Multiplying into deeper levels collapses the whole nonzero part.
        assert_eq!(a.nonzero_class_count(), 1);
        assert!(a.total);
    }
}

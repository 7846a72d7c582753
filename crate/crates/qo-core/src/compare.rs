//! Three-way comparison and element classification.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::element::{Coord, Element};
use crate::error::{CoreError, Result};
use crate::spec::{GroupSpec, QoDef, Val, ValuationDef};

/// Result of comparing `g` against `h` in the quasi-order: `g` strictly
/// below, equivalent to, or strictly above `h`. Totality of the order means
/// these three cases are exhaustive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum CompareResult {
    StrictBelow = 0,
    Equivalent = 1,
    StrictAbove = 2,
}

impl CompareResult {
    pub fn from_u8(b: u8) -> CompareResult {
        match b {
            0 => CompareResult::StrictBelow,
            1 => CompareResult::Equivalent,
            _ => CompareResult::StrictAbove,
        }
    }

    /// `g <= h` in the quasi-order.
    pub fn le(self) -> bool {
        self != CompareResult::StrictAbove
    }

    /// `g >= h` in the quasi-order.
    pub fn ge(self) -> bool {
        self != CompareResult::StrictBelow
    }

    pub fn flip(self) -> CompareResult {
        match self {
            CompareResult::StrictBelow => CompareResult::StrictAbove,
            CompareResult::Equivalent => CompareResult::Equivalent,
            CompareResult::StrictAbove => CompareResult::StrictBelow,
        }
    }

    fn from_ordering(o: Ordering) -> CompareResult {
        match o {
            Ordering::Less => CompareResult::StrictBelow,
            Ordering::Equal => CompareResult::Equivalent,
            Ordering::Greater => CompareResult::StrictAbove,
        }
    }
}

/// How an element sits in the order: the zero class, an order-like element
/// (its class is a singleton), or a torsion-like element equivalent to its
/// own inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Zero,
    OType,
    VType,
}

impl GroupSpec {
    /// Compares two elements in the quasi-order. Elements must be reduced
    /// (as produced by [`GroupSpec::reduce`] and the arithmetic methods).
    pub fn compare(&self, g: &Element, h: &Element) -> Result<CompareResult> {
        if g.dim() != self.dim() {
            return Err(CoreError::CoordinateMismatch {
                expected: self.dim(),
                got: g.dim(),
            });
        }
        if h.dim() != self.dim() {
            return Err(CoreError::CoordinateMismatch {
                expected: self.dim(),
                got: h.dim(),
            });
        }
        self.compare_slices(g.coords(), h.coords())
    }

    fn compare_slices(&self, g: &[Coord], h: &[Coord]) -> Result<CompareResult> {
        match self.qo() {
            QoDef::Table(t) => {
                let rg = t.rank(&Element(g.to_vec()))?;
                let rh = t.rank(&Element(h.to_vec()))?;
                Ok(CompareResult::from_ordering(rg.cmp(&rh)))
            }
            QoDef::Lex { .. } => Ok(lex_compare(g, h)),
            QoDef::Valuation(_) => {
                let vg = self.valuation_value(&Element(g.to_vec()))?;
                let vh = self.valuation_value(&Element(h.to_vec()))?;
                // Larger value means closer to zero, hence lower.
                Ok(CompareResult::from_ordering(vh.cmp(&vg)))
            }
            QoDef::SubgroupOrder { modulus } => {
                Ok(subgroup_order_compare(&g[0], &h[0], *modulus))
            }
            QoDef::Product { ordered, valued } => {
                let vd = valued.dim();
                let (gv, go) = g.split_at(vd);
                let (hv, ho) = h.split_at(vd);
                let hv_zero = hv.iter().all(Zero::is_zero);
                let gv_zero = gv.iter().all(Zero::is_zero);
                if hv_zero && gv_zero {
                    ordered.compare_slices(go, ho)
                } else if hv_zero {
                    // h sits in the ordered part, g does not: g is above.
                    Ok(CompareResult::StrictAbove)
                } else {
                    // h has torsion-like content; only values matter.
                    valued.compare_slices(gv, hv)
                }
            }
            QoDef::Hahn { components } => self.hahn_compare(components, g, h),
            QoDef::Quotient(q) => {
                let lg = q.lift(&Element(g.to_vec()));
                let lh = q.lift(&Element(h.to_vec()));
                let d = q.ambient.sub(&lg, &lh)?;
                if crate::spec::in_box(&q.inner, &d) {
                    Ok(CompareResult::Equivalent)
                } else {
                    q.ambient.compare(&lg, &lh)
                }
            }
        }
    }

    /// Comparison in a Hahn product over a finite chain. The order-like part
    /// is the lex product of component order-like parts; everything else is
    /// governed by the most significant component where an argument leaves
    /// its component's order-like part, compared there modulo that part.
    fn hahn_compare(
        &self,
        components: &[GroupSpec],
        g: &[Coord],
        h: &[Coord],
    ) -> Result<CompareResult> {
        let dg = self.hahn_v_support(components, g)?;
        let dh = self.hahn_v_support(components, h)?;
        match (dg, dh) {
            (None, None) => {
                // Both in the order-like part: lexicographic by component.
                let mut off = 0;
                for c in components {
                    let d = c.dim();
                    let r = c.compare_slices(&g[off..off + d], &h[off..off + d])?;
                    if r != CompareResult::Equivalent {
                        return Ok(r);
                    }
                    off += d;
                }
                Ok(CompareResult::Equivalent)
            }
            (None, Some(_)) => Ok(CompareResult::StrictBelow),
            (Some(_), None) => Ok(CompareResult::StrictAbove),
            (Some(i), Some(j)) => {
                if i < j {
                    return Ok(CompareResult::StrictAbove);
                }
                if j < i {
                    return Ok(CompareResult::StrictBelow);
                }
                // Same leading component: compare there, ignoring any
                // difference inside its order-like part.
                let c = &components[i];
                let off: usize = components[..i].iter().map(GroupSpec::dim).sum();
                let gi = Element(g[off..off + c.dim()].to_vec());
                let hi = Element(h[off..off + c.dim()].to_vec());
                let d = c.sub(&gi, &hi)?;
                if c.o_part_member(&d)? {
                    Ok(CompareResult::Equivalent)
                } else {
                    c.compare(&gi, &hi)
                }
            }
        }
    }

    /// Index of the most significant component where the projection of `g`
    /// falls outside that component's order-like part, if any.
    fn hahn_v_support(&self, components: &[GroupSpec], g: &[Coord]) -> Result<Option<usize>> {
        let mut off = 0;
        for (i, c) in components.iter().enumerate() {
            let d = c.dim();
            let gi = Element(g[off..off + d].to_vec());
            if !c.o_part_member(&gi)? {
                return Ok(Some(i));
            }
            off += d;
        }
        Ok(None)
    }

    /// Membership in the order-like part: zero, or an o-type element.
    pub fn o_part_member(&self, g: &Element) -> Result<bool> {
        Ok(matches!(
            self.classify(g)?,
            Classification::Zero | Classification::OType
        ))
    }

    pub fn classify(&self, g: &Element) -> Result<Classification> {
        if g.dim() != self.dim() {
            return Err(CoreError::CoordinateMismatch {
                expected: self.dim(),
                got: g.dim(),
            });
        }
        if g.is_zero() {
            return Ok(Classification::Zero);
        }
        let ng = self.neg(g)?;
        if self.compare(g, &ng)? == CompareResult::Equivalent {
            Ok(Classification::VType)
        } else {
            Ok(Classification::OType)
        }
    }

    /// `g <= h` in the quasi-order.
    pub fn le(&self, g: &Element, h: &Element) -> Result<bool> {
        Ok(self.compare(g, h)?.le())
    }

    /// `g` and `h` equivalent: both `g <= h` and `h <= g`.
    pub fn equivalent(&self, g: &Element, h: &Element) -> Result<bool> {
        Ok(self.compare(g, h)? == CompareResult::Equivalent)
    }

    /// `g` strictly below `h`.
    pub fn strictly_below(&self, g: &Element, h: &Element) -> Result<bool> {
        Ok(self.compare(g, h)? == CompareResult::StrictBelow)
    }
}

fn lex_compare(g: &[Coord], h: &[Coord]) -> CompareResult {
    for (x, y) in g.iter().zip(h.iter()) {
        match x.cmp(y) {
            Ordering::Less => return CompareResult::StrictBelow,
            Ordering::Greater => return CompareResult::StrictAbove,
            Ordering::Equal => {}
        }
    }
    CompareResult::Equivalent
}

fn subgroup_order_compare(g: &Coord, h: &Coord, modulus: u32) -> CompareResult {
    let m = Coord::from_integer(num_bigint::BigInt::from(modulus));
    let in_sub = |c: &Coord| (c / &m).denom() == &num_bigint::BigInt::from(1);
    match (in_sub(g), in_sub(h)) {
        (true, true) => CompareResult::from_ordering(g.cmp(h)),
        (true, false) => CompareResult::StrictBelow,
        (false, true) => CompareResult::StrictAbove,
        (false, false) => CompareResult::Equivalent,
    }
}

/// Equality of valuation values through the public API, for callers holding
/// two valuational specs.
pub fn value_of(spec: &GroupSpec, g: &Element) -> Result<Val> {
    match spec.qo() {
        QoDef::Valuation(ValuationDef::Trivial)
        | QoDef::Valuation(ValuationDef::Table { .. })
        | QoDef::Valuation(ValuationDef::Levels(_)) => spec.valuation_value(g),
        _ => Err(CoreError::UnsupportedSpec(
            "value_of requires a valuation spec".into(),
        )),
    }
}

//! Finite windows over (possibly infinite) groups.
//!
//! A window enumerates every element whose coordinates are small: integers of
//! absolute value at most `bound`, torsion representatives, and (for
//! divisible coordinates) reduced fractions with denominator up to
//! `den_bound`. Enumeration order is deterministic: coordinates vary
//! rightmost-fastest and each coordinate walks outward from zero
//! (`0, 1, -1, 2, -2, ...`; fractions after integers, by denominator).
//! Witness searches therefore return minimal witnesses first.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::compare::CompareResult;
use crate::element::{Coord, Element};
use crate::error::{CoreError, Result};
use crate::spec::{CoordType, GroupSpec};

/// Hard cap on window sizes, to fail fast instead of thrashing.
const MAX_WINDOW: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub bound: i64,
    pub den_bound: i64,
}

impl Window {
    pub fn new(bound: i64) -> Window {
        Window { bound, den_bound: 1 }
    }

    pub fn with_denominators(bound: i64, den_bound: i64) -> Window {
        Window { bound, den_bound }
    }

    /// Values a single coordinate ranges over, in spiral order.
    fn coord_values(&self, ty: CoordType) -> Vec<Coord> {
        match ty {
            CoordType::Torsion(n) => {
                (0..i64::from(n)).map(|k| BigRational::from_integer(BigInt::from(k))).collect()
            }
            CoordType::Free { divisible } => {
                let mut vals = Vec::new();
                let dens = if divisible { self.den_bound.max(1) } else { 1 };
                for den in 1..=dens {
                    for num in 0..=self.bound.max(0) {
                        if num.gcd(&den) != 1 && !(num == 0 && den == 1) {
                            continue;
                        }
                        if num == 0 && den > 1 {
                            continue;
                        }
                        vals.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
                        if num != 0 {
                            vals.push(BigRational::new(BigInt::from(-num), BigInt::from(den)));
                        }
                    }
                }
                vals
            }
        }
    }

    /// All window elements of `spec`, in deterministic order.
    pub fn elements(&self, spec: &GroupSpec) -> Result<Vec<Element>> {
        let per_coord: Vec<Vec<Coord>> = spec
            .layout()
            .iter()
            .map(|&ty| self.coord_values(ty))
            .collect();
        let mut total: usize = 1;
        for vals in &per_coord {
            if vals.is_empty() {
                return Ok(vec![]);
            }
            total = total.saturating_mul(vals.len());
            if total > MAX_WINDOW {
                return Err(CoreError::UnsupportedSpec(format!(
                    "window of more than {MAX_WINDOW} elements"
                )));
            }
        }
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; per_coord.len()];
        loop {
            let coords: Vec<Coord> = idx
                .iter()
                .zip(per_coord.iter())
                .map(|(&i, vals)| vals[i].clone())
                .collect();
            out.push(Element(coords));
            // Odometer step, rightmost coordinate fastest.
            let mut pos = per_coord.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < per_coord[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

/// Every element of a finite spec (window bounds are irrelevant there).
pub fn enumerate_torsion_box(spec: &GroupSpec) -> Vec<Element> {
    debug_assert!(spec.is_finite());
    Window::new(0)
        .elements(spec)
        .expect("finite groups enumerate without bounds")
}

/// The elements of `spec` the checks should range over: the whole group when
/// finite, otherwise the given window.
pub fn universe(spec: &GroupSpec, window: Window) -> Result<Vec<Element>> {
    if spec.is_finite() {
        Ok(enumerate_torsion_box(spec))
    } else {
        window.elements(spec)
    }
}

/// Precomputed comparison matrix over a closed set of elements, typically a
/// window together with its pairwise sums. Turns the inner loops of the
/// axiom checks into byte lookups.
pub struct CompareCache {
    pub elems: Vec<Element>,
    index: HashMap<Element, u32>,
    n: usize,
    matrix: Vec<u8>,
}

impl CompareCache {
    pub fn build(spec: &GroupSpec, elems: Vec<Element>) -> Result<CompareCache> {
        let n = elems.len();
        if n.saturating_mul(n) > 64_000_000 {
            return Err(CoreError::UnsupportedSpec(format!(
                "comparison cache over {n} elements is too large"
            )));
        }
        let index: HashMap<Element, u32> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let mut matrix = vec![0u8; n * n];
        for (i, g) in elems.iter().enumerate() {
            for (j, h) in elems.iter().enumerate() {
                matrix[i * n + j] = spec.compare(g, h)? as u8;
            }
        }
        Ok(CompareCache {
            elems,
            index,
            n,
            matrix,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn index_of(&self, g: &Element) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn cmp_idx(&self, i: u32, j: u32) -> CompareResult {
        CompareResult::from_u8(self.matrix[i as usize * self.n + j as usize])
    }

    pub fn le_idx(&self, i: u32, j: u32) -> bool {
        self.cmp_idx(i, j) != CompareResult::StrictAbove
    }
}

/// The set `{a + b : a, b in base}` united with `base` itself, deduplicated,
/// in first-seen order. Closure material for checks that add two window
/// elements before comparing.
pub fn sumset_closure(spec: &GroupSpec, base: &[Element]) -> Result<Vec<Element>> {
    let mut seen: HashMap<Element, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut push = |e: Element, out: &mut Vec<Element>| {
        if seen.insert(e.clone(), ()).is_none() {
            out.push(e);
        }
    };
    for a in base {
        push(a.clone(), &mut out);
    }
    for a in base {
        for b in base {
            push(spec.add(a, b)?, &mut out);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spiral_enumeration_order() {
        let spec = GroupSpec::ordered_z();
        let els = Window::new(2).elements(&spec).unwrap();
        let shown: Vec<String> = els.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["0", "1", "-1", "2", "-2"]);
    }

    #[test]
    fn rightmost_fastest_pairs() {
        let spec = GroupSpec::ordered_z_lex(2);
        let els = Window::new(1).elements(&spec).unwrap();
        let shown: Vec<String> = els.iter().map(|e| e.to_string()).collect();
        assert_eq!(
            shown,
            [
                "(0, 0)", "(0, 1)", "(0, -1)",
                "(1, 0)", "(1, 1)", "(1, -1)",
                "(-1, 0)", "(-1, 1)", "(-1, -1)"
            ]
        );
    }

    #[test]
    fn divisible_window_has_fractions() {
        let spec = GroupSpec::ordered_q();
        let els = Window::with_denominators(1, 2).elements(&spec).unwrap();
        let shown: Vec<String> = els.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown, ["0", "1", "-1", "1/2", "-1/2"]);
    }

    #[test]
    fn torsion_enumeration_is_whole_group() {
        let spec = GroupSpec::finite_padic(2, 2);
        assert_eq!(enumerate_torsion_box(&spec).len(), 4);
    }

    #[test]
    fn sumset_contains_sums() {
        let spec = GroupSpec::ordered_z();
        let base = Window::new(2).elements(&spec).unwrap();
        let closure = sumset_closure(&spec, &base).unwrap();
        let shown: Vec<String> = closure.iter().map(|e| e.to_string()).collect();
        assert!(shown.contains(&"4".to_string()));
        assert!(shown.contains(&"-4".to_string()));
        assert_eq!(closure.len(), 9);
    }
}

//! Balls of the induced C-relation and their cone dictionary.
//!
//! In a quasi-ordered abelian group the C-relation's cones are balls of
//! the group's own "ultrametric": the closed ball of radius `r` around
//! `c` is `{x : x−c ≼ r}` and the open ball is `{x : x−c ≺ r}`. The
//! cone at `a` over `b`, `{x : C(a, x, b)}`, coincides with the open
//! ball of radius `a−b` around `b`, and the thick cone `{x : ¬C(x, a, b)}`
//! with the closed ball of the same center and radius — exactly on the
//! classes where `0 ≺ a−b`, which [`dictionary_mismatch`] checks
//! pointwise.

use crate::crel::CRelationView;
use crate::error::Result;
use qo_core::{universe, Element, GroupSpec, Window};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Whether the boundary class belongs to the ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Open,
    Closed,
}

/// A ball `{x : x − center ≼ radius}` (closed) or `{x : x − center ≺ radius}`
/// (open). Centers and radii are group elements; the radius only matters
/// up to its equivalence class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ball {
    pub kind: BallKind,
    pub center: Element,
    pub radius: Element,
}

impl Ball {
    pub fn open(center: Element, radius: Element) -> Ball {
        Ball { kind: BallKind::Open, center, radius }
    }

    pub fn closed(center: Element, radius: Element) -> Ball {
        Ball { kind: BallKind::Closed, center, radius }
    }

    /// Exact membership test from the spec's comparison.
    pub fn contains(&self, spec: &GroupSpec, g: &Element) -> Result<bool> {
        let d = spec.sub(g, &self.center)?;
        Ok(match self.kind {
            BallKind::Closed => spec.le(&d, &self.radius)?,
            BallKind::Open => spec.strictly_below(&d, &self.radius)?,
        })
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            BallKind::Open => "open",
            BallKind::Closed => "closed",
        };
        write!(f, "{kind}({}, {})", self.center, self.radius)
    }
}

/// Every window element inside the ball, in universe order.
pub fn ball_members(spec: &GroupSpec, ball: &Ball, w: Window) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for g in universe(spec, w)? {
        if ball.contains(spec, &g)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Window members of the cone `{x : C(a, x, b)}`.
pub fn cone_members(
    cv: &CRelationView<'_>,
    a: &Element,
    b: &Element,
    w: Window,
) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for g in universe(cv.spec(), w)? {
        if cv.c(a, &g, b)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Window members of the thick cone `{x : ¬C(x, a, b)}`.
pub fn thick_cone_members(
    cv: &CRelationView<'_>,
    a: &Element,
    b: &Element,
    w: Window,
) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    for g in universe(cv.spec(), w)? {
        if !cv.c(&g, a, b)? {
            out.push(g);
        }
    }
    Ok(out)
}

/// Checks the cone/ball dictionary on a window: for every pair `(a, b)`
/// of window elements with `0 ≺ a−b`, the cone at `a` over `b` must have
/// exactly the members of `open(b, a−b)` and the thick cone exactly those
/// of `closed(b, a−b)`. In purely valuational specs `0 ≺ a−b` holds for
/// every `a ≠ b`, so the dictionary there is unrestricted. Degenerate
/// pairs `a = b` are pinned directly: the cone is empty, the thick cone
/// is `{a}`. Pairs with `a−b ≺ 0` are skipped: the correspondence is
/// only exact up to equivalence classes there, not pointwise (in the
/// ordered integers with `a < b`, `b` lies in its own thick cone but
/// outside `closed(b, a−b)`).
///
/// Returns the first mismatching pair, if any.
pub fn dictionary_mismatch(
    cv: &CRelationView<'_>,
    w: Window,
) -> Result<Option<(Element, Element)>> {
    let spec = cv.spec();
    let elems = universe(spec, w)?;
    let zero = spec.zero();
    for a in &elems {
        for b in &elems {
            if a == b {
                for g in &elems {
                    if cv.c(a, g, b)? {
                        return Ok(Some((a.clone(), b.clone())));
                    }
                    let in_thick = !cv.c(g, a, b)?;
                    if in_thick != (g == a) {
                        return Ok(Some((a.clone(), b.clone())));
                    }
                }
                continue;
            }
            let r = spec.sub(a, b)?;
            if !spec.strictly_below(&zero, &r)? {
                continue;
            }
            let open = Ball::open(b.clone(), r.clone());
            let closed = Ball::closed(b.clone(), r);
            for g in &elems {
                if cv.c(a, g, b)? != open.contains(spec, g)? {
                    return Ok(Some((a.clone(), b.clone())));
                }
                if (!cv.c(g, a, b)?) != closed.contains(spec, g)? {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crel::induce_c;
    use qo_core::QoDef;

    #[test]
    fn closed_ball_in_the_integers_is_a_final_segment_of_the_order() {
        // x − 0 ≼ 0 ⇔ x ≤ 0, so closed(0, 0) collects the non-positives.
        let spec = GroupSpec::ordered_z();
        let ball = Ball::closed(Element::from_ints(&[0]), Element::from_ints(&[0]));
        let members = ball_members(&spec, &ball, Window::new(3)).unwrap();
        let expected: Vec<Element> = [0, -1, -2, -3]
            .iter()
            .map(|&v| Element::from_ints(&[v]))
            .collect();
        assert_eq!(
            {
                let mut m = members.clone();
                m.sort();
                m
            },
            {
                let mut e = expected;
                e.sort();
                e
            }
        );
    }

    #[test]
    fn valuational_balls_collect_high_valuation_elements() {
        // Z/4 with the 2-adic valuation: closed(0, 2) = {x : v(x) ≥ v(2)} = {0, 2}.
        let spec = GroupSpec::finite_padic(2, 2);
        let ball = Ball::closed(Element::from_ints(&[0]), Element::from_ints(&[2]));
        let mut members = ball_members(&spec, &ball, Window::new(1)).unwrap();
        members.sort();
        assert_eq!(
            members,
            vec![Element::from_ints(&[0]), Element::from_ints(&[2])]
        );
        // The open ball drops the boundary class: only 0 has v > v(2).
        let open = Ball::open(Element::from_ints(&[0]), Element::from_ints(&[2]));
        assert_eq!(
            ball_members(&spec, &open, Window::new(1)).unwrap(),
            vec![Element::from_ints(&[0])]
        );
    }

    #[test]
    fn cones_match_balls_in_purely_valuational_specs() {
        for spec in [
            GroupSpec::finite_padic(2, 2),
            GroupSpec::finite_trivial(5),
            GroupSpec::z2_with_order(),
        ] {
            let cv = induce_c(&spec);
            assert_eq!(dictionary_mismatch(&cv, Window::new(1)).unwrap(), None);
        }
    }

    #[test]
    fn cones_match_balls_on_mixed_and_ordered_specs() {
        let mixed = GroupSpec::new(
            2,
            vec![],
            false,
            QoDef::Product {
                ordered: Box::new(GroupSpec::ordered_z()),
                valued: Box::new(
                    GroupSpec::new(
                        1,
                        vec![],
                        false,
                        QoDef::Valuation(qo_core::ValuationDef::Trivial),
                    )
                    .unwrap(),
                ),
            },
        )
        .unwrap();
        for (spec, n) in [
            (GroupSpec::ordered_z(), 4),
            (mixed, 2),
            (GroupSpec::subgroup_order(3), 5),
        ] {
            let cv = induce_c(&spec);
            assert_eq!(dictionary_mismatch(&cv, Window::new(n)).unwrap(), None);
        }
    }

    #[test]
    fn dictionary_needs_the_positivity_restriction_in_ordered_groups() {
        // In Z with b > a the cone {x : C(a, x, b)} is {x : x < a} ∪ …
        // nothing like the open ball around b of radius a−b, which is
        // {x : x−b ≺ a−b} = {x : x < a}. Here they agree; the failure is
        // on the thick cone side: ¬C(x, a, b) includes x = b itself while
        // closed(b, a−b) = {x : x ≤ a} misses it.
        let spec = GroupSpec::ordered_z();
        let cv = induce_c(&spec);
        let a = Element::from_ints(&[0]);
        let b = Element::from_ints(&[2]);
        let r = spec.sub(&a, &b).unwrap();
        let closed = Ball::closed(b.clone(), r);
        assert!(!cv.c(&b, &a, &b).unwrap(), "b sits in its own thick cone");
        assert!(!closed.contains(&spec, &b).unwrap(), "but outside the ball");
    }
}

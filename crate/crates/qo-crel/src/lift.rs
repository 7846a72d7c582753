//! Lifting ball formulas from a valued part into a product group.
//!
//! When `G = O ⊛ H` is the product of an ordered group with a purely
//! valuational one, a boolean combination of balls over `H` turns into a
//! boolean combination of balls over `G` that holds of `g` exactly when
//! the original held of the valued component of `g`. Radius-and-center
//! atoms embed coordinatewise; the two radius-zero cases are where the
//! translation earns its keep:
//!
//! * a closed ball of radius 0 over `H` is the singleton of its center,
//!   and lifts to the *open* ball around the embedded center whose radius
//!   is the ≼-minimum nonzero element of `H`;
//! * an open ball of radius 0 over `H` is empty, and lifts to an
//!   explicit contradiction (the same ball asserted and denied).
//!
//! The minimum exists for every finite nontrivial `H`; otherwise lifting
//! a radius-zero closed ball reports [`CrelError::NoMinimum`].

use crate::balls::Ball;
use crate::error::{CrelError, Result};
use qo_core::{int, universe, Coord, Element, GroupSpec, QoDef, Window};
use std::fmt;

/// A boolean combination of ball memberships.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BallFormula {
    Atom(Ball),
    Not(Box<BallFormula>),
    And(Box<BallFormula>, Box<BallFormula>),
    Or(Box<BallFormula>, Box<BallFormula>),
}

impl BallFormula {
    pub fn atom(ball: Ball) -> BallFormula {
        BallFormula::Atom(ball)
    }

    pub fn not(f: BallFormula) -> BallFormula {
        BallFormula::Not(Box::new(f))
    }

    pub fn and(a: BallFormula, b: BallFormula) -> BallFormula {
        BallFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: BallFormula, b: BallFormula) -> BallFormula {
        BallFormula::Or(Box::new(a), Box::new(b))
    }

    /// Evaluates membership of `g` exactly.
    pub fn holds(&self, spec: &GroupSpec, g: &Element) -> Result<bool> {
        Ok(match self {
            BallFormula::Atom(ball) => ball.contains(spec, g)?,
            BallFormula::Not(f) => !f.holds(spec, g)?,
            BallFormula::And(a, b) => a.holds(spec, g)? && b.holds(spec, g)?,
            BallFormula::Or(a, b) => a.holds(spec, g)? || b.holds(spec, g)?,
        })
    }

    /// Dimension sanity: every atom's center and radius must live in the
    /// given dimension.
    fn check_dim(&self, dim: usize) -> Result<()> {
        match self {
            BallFormula::Atom(ball) => {
                if ball.center.dim() != dim || ball.radius.dim() != dim {
                    return Err(CrelError::BadFormula(format!(
                        "ball {ball} does not live in dimension {dim}"
                    )));
                }
                Ok(())
            }
            BallFormula::Not(f) => f.check_dim(dim),
            BallFormula::And(a, b) | BallFormula::Or(a, b) => {
                a.check_dim(dim)?;
                b.check_dim(dim)
            }
        }
    }
}

impl fmt::Display for BallFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BallFormula::Atom(ball) => write!(f, "{ball}"),
            BallFormula::Not(g) => write!(f, "!({g})"),
            BallFormula::And(a, b) => write!(f, "({a} & {b})"),
            BallFormula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

/// The ≼-least nonzero element of a finite spec (for a valuational spec,
/// an element of maximal finite valuation), taken first in universe
/// order among ties. Infinite or trivial specs cannot certify one:
/// [`CrelError::NoMinimum`].
pub fn minimum_nonzero(spec: &GroupSpec) -> Result<Element> {
    if !spec.is_finite() {
        return Err(CrelError::NoMinimum(
            "cannot certify a least nonzero element of an infinite group".into(),
        ));
    }
    let elems = universe(spec, Window::new(0))?;
    'cand: for m in &elems {
        if m.is_zero() {
            continue;
        }
        for h in &elems {
            if !h.is_zero() && !spec.le(m, h)? {
                continue 'cand;
            }
        }
        return Ok(m.clone());
    }
    Err(CrelError::NoMinimum(
        "the group has no nonzero element below all others".into(),
    ))
}

/// Embeds an element of the valued part into the product: valued
/// coordinates first, zeros on the ordered block.
fn embed(h: &Element, g_dim: usize) -> Element {
    let mut coords: Vec<Coord> = h.coords().to_vec();
    coords.resize(g_dim, Coord::default());
    Element(coords)
}

/// Translates a ball formula over the valued part `H` of a product
/// `G = O ⊛ H` into one over `G` that holds of `g` exactly when the
/// original holds of the valued component of `g`.
///
/// Errors: [`CrelError::Unsupported`] when `g_spec` is not a product
/// whose valued block matches `h_spec`'s layout, [`CrelError::BadFormula`]
/// when an atom lives in the wrong dimension, and
/// [`CrelError::NoMinimum`] when a radius-zero closed atom needs the
/// least nonzero element of `H` and none can be certified.
pub fn lift_ball_formula(
    g_spec: &GroupSpec,
    h_spec: &GroupSpec,
    f: &BallFormula,
) -> Result<BallFormula> {
    let QoDef::Product { valued, .. } = g_spec.qo() else {
        return Err(CrelError::Unsupported(
            "ball formulas lift into products of an ordered and a valued group".into(),
        ));
    };
    let vd = valued.dim();
    if vd != h_spec.dim() || g_spec.layout()[..vd] != *h_spec.layout() {
        return Err(CrelError::Unsupported(
            "the product's valued block does not match the given valued part".into(),
        ));
    }
    f.check_dim(vd)?;
    lift_node(g_spec, h_spec, f)
}

fn lift_node(g_spec: &GroupSpec, h_spec: &GroupSpec, f: &BallFormula) -> Result<BallFormula> {
    let g_dim = g_spec.dim();
    Ok(match f {
        BallFormula::Atom(ball) => {
            let center = embed(&ball.center, g_dim);
            if ball.radius.is_zero() {
                match ball.kind {
                    crate::balls::BallKind::Closed => {
                        // {x : x−c ≼ 0} = {c}: exactly the g whose valued
                        // component is c, i.e. x−c strictly below the
                        // least nonzero valuation class.
                        let m = minimum_nonzero(h_spec)?;
                        BallFormula::Atom(Ball::open(center, embed(&m, g_dim)))
                    }
                    crate::balls::BallKind::Open => {
                        // {x : x−c ≺ 0} is empty; assert a contradiction.
                        let zero = Ball::open(
                            Element::zero_of_dim(g_dim),
                            Element::zero_of_dim(g_dim),
                        );
                        BallFormula::and(
                            BallFormula::Atom(zero.clone()),
                            BallFormula::not(BallFormula::Atom(zero)),
                        )
                    }
                }
            } else {
                BallFormula::Atom(Ball {
                    kind: ball.kind,
                    center,
                    radius: embed(&ball.radius, g_dim),
                })
            }
        }
        BallFormula::Not(g) => BallFormula::not(lift_node(g_spec, h_spec, g)?),
        BallFormula::And(a, b) => BallFormula::and(
            lift_node(g_spec, h_spec, a)?,
            lift_node(g_spec, h_spec, b)?,
        ),
        BallFormula::Or(a, b) => BallFormula::or(
            lift_node(g_spec, h_spec, a)?,
            lift_node(g_spec, h_spec, b)?,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::BallKind;
    use qo_core::ValuationDef;

    fn q_star_z4() -> (GroupSpec, GroupSpec) {
        let h = GroupSpec::finite_padic(2, 2);
        let g = GroupSpec::new(
            1,
            vec![4],
            true,
            QoDef::Product {
                ordered: Box::new(GroupSpec::ordered_q()),
                valued: Box::new(h.clone()),
            },
        )
        .unwrap();
        (g, h)
    }

    #[test]
    fn least_nonzero_elements_are_certified_or_refused() {
        // Z/4 with the 2-adic valuation: v(2) = 1 beats v(1) = v(3) = 0.
        assert_eq!(
            minimum_nonzero(&GroupSpec::finite_padic(2, 2)).unwrap(),
            Element::from_ints(&[2])
        );
        // Trivial valuation: all nonzero tie; first in universe order wins.
        assert_eq!(
            minimum_nonzero(&GroupSpec::finite_trivial(5)).unwrap(),
            Element::from_ints(&[1])
        );
        // Infinite groups cannot certify a minimum.
        assert!(matches!(
            minimum_nonzero(&GroupSpec::ordered_q()),
            Err(CrelError::NoMinimum(_))
        ));
        // Neither can the trivial group.
        assert!(matches!(
            minimum_nonzero(&GroupSpec::finite_trivial(1)),
            Err(CrelError::NoMinimum(_))
        ));
    }

    #[test]
    fn radius_zero_closed_balls_open_around_the_least_element() {
        let (g, h) = q_star_z4();
        let f = BallFormula::atom(Ball::closed(
            Element::from_ints(&[3]),
            Element::from_ints(&[0]),
        ));
        let lifted = lift_ball_formula(&g, &h, &f).unwrap();
        assert_eq!(
            lifted,
            BallFormula::atom(Ball::open(
                Element::from_ints(&[3, 0]),
                Element::from_ints(&[2, 0]),
            ))
        );
    }

    #[test]
    fn radius_zero_open_balls_become_contradictions() {
        let (g, h) = q_star_z4();
        let f = BallFormula::atom(Ball::open(
            Element::from_ints(&[1]),
            Element::from_ints(&[0]),
        ));
        let lifted = lift_ball_formula(&g, &h, &f).unwrap();
        for e in universe(&g, Window::new(2)).unwrap() {
            assert!(!lifted.holds(&g, &e).unwrap());
        }
    }

    #[test]
    fn nonzero_radius_balls_embed_unchanged() {
        let (g, h) = q_star_z4();
        let f = BallFormula::atom(Ball::closed(
            Element::from_ints(&[1]),
            Element::from_ints(&[2]),
        ));
        let lifted = lift_ball_formula(&g, &h, &f).unwrap();
        assert_eq!(
            lifted,
            BallFormula::atom(Ball::closed(
                Element::from_ints(&[1, 0]),
                Element::from_ints(&[2, 0]),
            ))
        );
    }

    #[test]
    fn lifting_preserves_membership_through_the_valued_component() {
        let (g, h) = q_star_z4();
        let shapes = [
            BallFormula::atom(Ball::closed(
                Element::from_ints(&[1]),
                Element::from_ints(&[2]),
            )),
            BallFormula::atom(Ball::open(
                Element::from_ints(&[0]),
                Element::from_ints(&[1]),
            )),
            BallFormula::atom(Ball::closed(
                Element::from_ints(&[2]),
                Element::from_ints(&[0]),
            )),
            BallFormula::atom(Ball::open(
                Element::from_ints(&[3]),
                Element::from_ints(&[0]),
            )),
        ];
        // All single atoms, plus a couple of boolean combinations.
        let mut formulas: Vec<BallFormula> = shapes.to_vec();
        formulas.push(BallFormula::and(
            shapes[0].clone(),
            BallFormula::not(shapes[2].clone()),
        ));
        formulas.push(BallFormula::or(
            BallFormula::not(shapes[1].clone()),
            shapes[3].clone(),
        ));

        let vd = h.dim();
        for f in &formulas {
            let lifted = lift_ball_formula(&g, &h, f).unwrap();
            for e in universe(&g, Window::with_denominators(2, 2)).unwrap() {
                let valued_part = Element(e.coords()[..vd].to_vec());
                assert_eq!(
                    lifted.holds(&g, &e).unwrap(),
                    f.holds(&h, &valued_part).unwrap(),
                    "formula {f} lifted to {lifted} diverges at {e}"
                );
            }
        }
    }

    #[test]
    fn lift_validates_spec_and_formula_shapes() {
        let (g, h) = q_star_z4();
        let f = BallFormula::atom(Ball::closed(
            Element::from_ints(&[1]),
            Element::from_ints(&[2]),
        ));
        // Not a product at all.
        assert!(matches!(
            lift_ball_formula(&GroupSpec::ordered_z(), &h, &f),
            Err(CrelError::Unsupported(_))
        ));
        // Valued block mismatch.
        let other = GroupSpec::new(1, vec![], false, QoDef::Valuation(ValuationDef::Trivial))
            .unwrap();
        assert!(matches!(
            lift_ball_formula(&g, &other, &f),
            Err(CrelError::Unsupported(_))
        ));
        // Atom in the wrong dimension.
        let bad = BallFormula::atom(Ball::closed(
            Element::from_ints(&[1, 0]),
            Element::from_ints(&[2, 0]),
        ));
        assert!(matches!(
            lift_ball_formula(&g, &h, &bad),
            Err(CrelError::BadFormula(_))
        ));
    }
}

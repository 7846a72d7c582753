//! Group elements as exact coordinate vectors.
//!
//! Coordinates are arbitrary-precision rationals so that no operation can
//! overflow; integer-valued groups simply keep every denominator at 1.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One coordinate of an element: an exact rational number.
pub type Coord = BigRational;

/// An element of a group presented by a [`crate::GroupSpec`].
///
/// Invariant: the coordinate count always equals the spec's dimension, and
/// torsion coordinates are integers reduced into `0..modulus`. The spec's
/// arithmetic methods maintain the reduction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<Coord>);

impl Element {
    pub fn from_ints(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }
}

/// Builds an integer coordinate.
pub fn int(n: i64) -> Coord {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds the rational coordinate `num/den`.
pub fn rat(num: i64, den: i64) -> Coord {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", fmt_coord(&self.0[0]));
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_coord(c))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_coord(c: &Coord) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Elements serialize as arrays whose entries are integers when the
/// denominator is 1 and `"p/q"` strings otherwise.
impl Serialize for Element {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.0.len()))?;
        for c in &self.0 {
            if c.denom().is_one() {
                if let Ok(n) = i64::try_from(c.numer().clone()) {
                    seq.serialize_element(&n)?;
                    continue;
                }
            }
            seq.serialize_element(&fmt_coord(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        let raw: Vec<Raw> = Vec::deserialize(de)?;
        let mut coords = Vec::with_capacity(raw.len());
        for r in raw {
            match r {
                Raw::Int(n) => coords.push(int(n)),
                Raw::Str(s) => coords.push(parse_coord(&s).map_err(D::Error::custom)?),
            }
        }
        Ok(Element(coords))
    }
}

/// Parses a coordinate written as `n` or `p/q`.
pub fn parse_coord(s: &str) -> Result<Coord, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("bad coordinate numerator {num:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("bad coordinate denominator {den:?}"))?;
    if d.is_zero() {
        return Err("coordinate denominator is zero".into());
    }
    Ok(BigRational::new(n, d))
}

/// Parses an element written as `a` or `(a, b, ...)`.
pub fn parse_element(s: &str) -> Result<Element, String> {
    let s = s.trim();
    let inner = if let Some(rest) = s.strip_prefix('(') {
        rest.strip_suffix(')')
            .ok_or_else(|| format!("unbalanced parentheses in element {s:?}"))?
    } else {
        s
    };
    let coords: Result<Vec<_>, _> = inner.split(',').map(parse_coord).collect();
    Ok(Element(coords?))
}

/// Total order used for deterministic tie-breaks: lexicographic over
/// coordinates with the zero-first value order 0, 1, -1, 2, -2, ...
pub fn spiral_cmp(a: &Element, b: &Element) -> std::cmp::Ordering {
    for (x, y) in a.0.iter().zip(b.0.iter()) {
        let c = spiral_key(x).cmp(&spiral_key(y));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    a.0.len().cmp(&b.0.len())
}

fn spiral_key(c: &Coord) -> (BigInt, BigInt, u8) {
    // Sort by |value| then by sign (nonnegative first), scaling away the
    // denominator so mixed-denominator windows still order deterministically.
    let scaled = c.numer().abs() * c.denom().signum();
    (c.denom().clone(), scaled.abs(), u8::from(c.is_negative()))
}

//! Canonical linear terms: integer combinations of variables and
//! parameters.

use std::collections::BTreeMap;
use std::fmt;

/// Identifier of a variable (`x1`, `x2`, ...) or parameter (`c1`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Var(u32),
    Param(u32),
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Var(i) => write!(f, "x{i}"),
            VarId::Param(i) => write!(f, "c{i}"),
        }
    }
}

/// A linear combination Σ nᵢ·idᵢ with integer coefficients, kept
/// canonical: zero coefficients are absent and identifiers sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    coeffs: BTreeMap<VarId, i64>,
}

impl Term {
    pub fn zero() -> Term {
        Term::default()
    }

    pub fn var(i: u32) -> Term {
        Term::monomial(VarId::Var(i), 1)
    }

    pub fn param(i: u32) -> Term {
        Term::monomial(VarId::Param(i), 1)
    }

    pub fn monomial(id: VarId, n: i64) -> Term {
        let mut coeffs = BTreeMap::new();
        if n != 0 {
            coeffs.insert(id, n);
        }
        Term { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, id: VarId) -> i64 {
        self.coeffs.get(&id).copied().unwrap_or(0)
    }

    /// The (identifier, coefficient) entries in sorted order.
    pub fn entries(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        self.coeffs.iter().map(|(&id, &n)| (id, n))
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn add(&self, other: &Term) -> Term {
        let mut out = self.clone();
        for (id, n) in other.entries() {
            let e = out.coeffs.entry(id).or_insert(0);
            *e += n;
            if *e == 0 {
                out.coeffs.remove(&id);
            }
        }
        out
    }

    pub fn neg(&self) -> Term {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Term) -> Term {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: i64) -> Term {
        if n == 0 {
            return Term::zero();
        }
        Term {
            coeffs: self.coeffs.iter().map(|(&id, &m)| (id, m * n)).collect(),
        }
    }

    /// The term with one identifier removed.
    pub fn without(&self, id: VarId) -> Term {
        let mut out = self.clone();
        out.coeffs.remove(&id);
        out
    }

    /// Renames a variable identifier wherever it occurs.
    pub fn rename_var(&self, from: u32, to: u32) -> Term {
        if from == to || self.coeff(VarId::Var(from)) == 0 {
            return self.clone();
        }
        let n = self.coeff(VarId::Var(from));
        self.without(VarId::Var(from)).add(&Term::monomial(VarId::Var(to), n))
    }

    /// Gcd of the absolute coefficients; zero for the zero term.
    pub fn content_gcd(&self) -> i64 {
        self.coeffs
            .values()
            .fold(0i64, |a, &b| num_gcd(a, b.abs()))
    }

    /// Divides every coefficient by `d`, which must divide the content.
    pub fn divide_exact(&self, d: i64) -> Term {
        assert!(d != 0, "division of a term by zero");
        Term {
            coeffs: self.coeffs.iter().map(|(&id, &m)| (id, m / d)).collect(),
        }
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (id, n)) in self.entries().enumerate() {
            let mag = n.abs();
            if k == 0 {
                if n < 0 {
                    write!(f, "-")?;
                }
            } else if n < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag == 1 {
                write!(f, "{id}")?;
            } else {
                write!(f, "{mag}*{id}")?;
            }
        }
        Ok(())
    }
}

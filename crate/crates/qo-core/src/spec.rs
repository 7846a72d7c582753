//! Group presentations and their quasi-order definitions.
//!
//! A [`GroupSpec`] describes a finitely presented abelian group (free part
//! plus cyclic torsion factors) together with a total quasi-order given by a
//! [`QoDef`]. Every variant yields a decidable three-way comparison; windows
//! only bound enumeration, never comparison.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::element::{Coord, Element};
use crate::error::{CoreError, Result};

/// The kind of a single coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordType {
    /// A free coordinate: ranges over the integers, or over the rationals
    /// when `divisible` is set.
    Free { divisible: bool },
    /// A torsion coordinate reduced modulo the given order.
    Torsion(u32),
}

/// Per-coordinate subgroup condition. A vector of these (one per coordinate)
/// carves out a box subgroup: the product of per-coordinate subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordCond {
    Any,
    Zero,
    Div(u32),
}

impl CoordCond {
    pub fn holds(&self, c: &Coord) -> bool {
        match self {
            CoordCond::Any => true,
            CoordCond::Zero => c.is_zero(),
            CoordCond::Div(m) => {
                c.denom().is_one() && (c.numer() % BigInt::from(*m)).is_zero()
            }
        }
    }

    /// Whether membership in `self` implies membership in `other`.
    fn implies(&self, other: &CoordCond) -> bool {
        match (self, other) {
            (_, CoordCond::Any) => true,
            (CoordCond::Zero, _) => true,
            (CoordCond::Div(m), CoordCond::Div(n)) => m % n == 0,
            _ => false,
        }
    }
}

/// Tests whether `g` lies in the box subgroup cut out by `conds`.
pub fn in_box(conds: &[CoordCond], g: &Element) -> bool {
    conds.len() == g.dim() && conds.iter().zip(g.coords()).all(|(c, x)| c.holds(x))
}

/// Finite rank table: assigns each element of a finite group a rank, with
/// `g <= h` iff `rank(g) <= rank(h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableQo {
    pub ranks: Vec<(Element, u64)>,
    map: HashMap<Element, u64>,
}

impl TableQo {
    pub fn rank(&self, g: &Element) -> Result<u64> {
        self.map.get(g).copied().ok_or_else(|| {
            CoreError::StructureViolation(format!("element {g} missing from rank table"))
        })
    }
}

/// Valuation payloads. All of them induce the quasi-order
/// `g <= h` iff `v(g) >= v(h)`, with `v(0)` infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum ValuationDef {
    /// Every nonzero element gets the same value.
    Trivial,
    /// Explicit finite table of values for nonzero elements.
    Table {
        entries: Vec<(Element, u32)>,
        map: HashMap<Element, u32>,
    },
    /// A descending chain of box subgroups; the value of `g` is the number
    /// of levels containing it. Nesting makes the ultrametric law automatic.
    Levels(Vec<Vec<CoordCond>>),
}

/// A valuation value: finite level or infinity (reserved for 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Val {
    Fin(u32),
    Inf,
}

/// Coordinate bookkeeping for quotient specs: how each quotient coordinate
/// projects from / lifts into the ambient group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QProj {
    /// Ambient coordinate passes through unchanged.
    Keep { pos: usize },
    /// Ambient value taken modulo `m`; quotient coordinate is torsion `m`.
    Mod { pos: usize, m: u32 },
    /// Ambient values are multiples of `m`; quotient coordinate is the free
    /// coordinate `value / m`.
    Scaled { pos: usize, m: u32 },
    /// Ambient values are multiples of `m` modulo `m * q`; quotient
    /// coordinate is torsion `q` holding `(value / m) mod q`.
    ScaledMod { pos: usize, m: u32, q: u32 },
}

/// A quotient of an ambient spec's box subgroup by a smaller box subgroup,
/// carrying the induced quasi-order
/// `g+H <= h+H` iff `g-h` in `H`, or `g-h` outside `H` and `g <= h`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientBox {
    pub ambient: Box<GroupSpec>,
    pub outer: Vec<CoordCond>,
    pub inner: Vec<CoordCond>,
    projs: Vec<QProj>,
}

impl QuotientBox {
    pub fn projections(&self) -> &[QProj] {
        &self.projs
    }

    /// Canonical ambient representative of a quotient element.
    pub fn lift(&self, g: &Element) -> Element {
        let mut coords = vec![Coord::zero(); self.ambient.dim()];
        for (qi, proj) in self.projs.iter().enumerate() {
            let x = &g.coords()[qi];
            match proj {
                QProj::Keep { pos } | QProj::Mod { pos, .. } => coords[*pos] = x.clone(),
                QProj::Scaled { pos, m } | QProj::ScaledMod { pos, m, .. } => {
                    coords[*pos] = x * BigRational::from_integer(BigInt::from(*m));
                }
            }
        }
        Element(coords)
    }

    /// Projects an ambient element of the outer box to quotient coordinates.
    pub fn project(&self, g: &Element) -> Result<Element> {
        if !in_box(&self.outer, g) {
            return Err(CoreError::StructureViolation(format!(
                "element {g} lies outside the quotient's outer subgroup"
            )));
        }
        let mut coords = Vec::with_capacity(self.projs.len());
        for proj in &self.projs {
            let x = |pos: usize| g.coords()[pos].clone();
            coords.push(match *proj {
                QProj::Keep { pos } => x(pos),
                QProj::Mod { pos, m } => modular(&x(pos), m),
                QProj::Scaled { pos, m } => x(pos) / BigRational::from_integer(BigInt::from(m)),
                QProj::ScaledMod { pos, m, q } => {
                    modular(&(x(pos) / BigRational::from_integer(BigInt::from(m))), q)
                }
            });
        }
        Ok(Element(coords))
    }
}

fn modular(c: &Coord, m: u32) -> Coord {
    let m = BigInt::from(m);
    let r = c.numer().mod_floor(&m);
    BigRational::from_integer(r)
}

/// The quasi-order definition attached to a [`GroupSpec`].
#[derive(Clone, Debug, PartialEq)]
pub enum QoDef {
    /// Finite total preorder given by a rank function.
    Table(TableQo),
    /// Lexicographic comparison of the coordinate vector, most significant
    /// coordinate first. Legal compatible shapes: torsion-free, or the
    /// explicitly flagged order on Z/2Z alone. The `mixed` escape hatch
    /// admits torsion coordinates for building non-compatible counterexample
    /// orders; such specs are expected to fail the axiom checks.
    Lex { degenerate_z2: bool, mixed: bool },
    /// Purely valuational quasi-order.
    Valuation(ValuationDef),
    /// The integers ordered on the subgroup of multiples of `modulus`, with
    /// everything outside that subgroup a single top equivalence class.
    SubgroupOrder { modulus: u32 },
    /// The compatible product: ordered part glued under a valued part.
    /// Coordinate layout is the valued block first, then the ordered block.
    Product {
        ordered: Box<GroupSpec>,
        valued: Box<GroupSpec>,
    },
    /// Compatible Hahn product over a finite chain; one coordinate block per
    /// component, most significant block first.
    Hahn { components: Vec<GroupSpec> },
    /// Quotient of box subgroups of an ambient spec.
    Quotient(QuotientBox),
}

/// A group together with a total quasi-order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    free_rank: usize,
    torsion_orders: Vec<u32>,
    divisible: bool,
    qo: QoDef,
    layout: Vec<CoordType>,
}

impl GroupSpec {
    /// Validating constructor. `torsion_orders` lists torsion coordinate
    /// moduli in coordinate order; for leaf quasi-order kinds the layout is
    /// the torsion block followed by the free block.
    pub fn new(
        free_rank: usize,
        torsion_orders: Vec<u32>,
        divisible: bool,
        qo: QoDef,
    ) -> Result<GroupSpec> {
        for &n in &torsion_orders {
            if n < 2 {
                return Err(CoreError::InvalidSpec(format!(
                    "torsion order {n} must be at least 2"
                )));
            }
        }
        let layout = derive_layout(free_rank, &torsion_orders, divisible, &qo)?;
        let spec = GroupSpec {
            free_rank,
            torsion_orders,
            divisible,
            qo,
            layout,
        };
        spec.validate_shape()?;
        Ok(spec)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[u32] {
        &self.torsion_orders
    }

    pub fn divisible(&self) -> bool {
        self.divisible
    }

    pub fn qo(&self) -> &QoDef {
        &self.qo
    }

    pub fn layout(&self) -> &[CoordType] {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.len()
    }

    pub fn is_finite(&self) -> bool {
        self.layout
            .iter()
            .all(|c| matches!(c, CoordType::Torsion(_)))
    }

    /// Number of elements of a finite spec.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(
            self.layout
                .iter()
                .map(|c| match c {
                    CoordType::Torsion(n) => u64::from(*n),
                    CoordType::Free { .. } => unreachable!(),
                })
                .product(),
        )
    }

    pub fn zero(&self) -> Element {
        Element(vec![Coord::zero(); self.dim()])
    }

    fn check_dim(&self, g: &Element) -> Result<()> {
        if g.dim() != self.dim() {
            return Err(CoreError::CoordinateMismatch {
                expected: self.dim(),
                got: g.dim(),
            });
        }
        Ok(())
    }

    /// Validates and canonicalizes an externally supplied element: checks the
    /// dimension, integrality of non-divisible coordinates, and reduces
    /// torsion coordinates into `0..modulus`.
    pub fn reduce(&self, g: &Element) -> Result<Element> {
        self.check_dim(g)?;
        let mut coords = Vec::with_capacity(self.dim());
        for (c, ty) in g.coords().iter().zip(self.layout.iter()) {
            match ty {
                CoordType::Free { divisible: true } => coords.push(c.clone()),
                CoordType::Free { divisible: false } => {
                    if !c.denom().is_one() {
                        return Err(CoreError::InvalidSpec(format!(
                            "coordinate {c} must be an integer in a non-divisible group"
                        )));
                    }
                    coords.push(c.clone());
                }
                CoordType::Torsion(n) => {
                    if !c.denom().is_one() {
                        return Err(CoreError::InvalidSpec(format!(
                            "torsion coordinate {c} must be an integer"
                        )));
                    }
                    coords.push(modular(c, *n));
                }
            }
        }
        Ok(Element(coords))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let mut coords = Vec::with_capacity(self.dim());
        for ((x, y), ty) in a.coords().iter().zip(b.coords()).zip(self.layout.iter()) {
            let s = x + y;
            coords.push(match ty {
                CoordType::Torsion(n) => modular(&s, *n),
                CoordType::Free { .. } => s,
            });
        }
        Ok(Element(coords))
    }

    pub fn neg(&self, a: &Element) -> Result<Element> {
        self.check_dim(a)?;
        let mut coords = Vec::with_capacity(self.dim());
        for (x, ty) in a.coords().iter().zip(self.layout.iter()) {
            let n = -x;
            coords.push(match ty {
                CoordType::Torsion(m) => modular(&n, *m),
                CoordType::Free { .. } => n,
            });
        }
        Ok(Element(coords))
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Result<Element> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn scale(&self, n: i64, a: &Element) -> Result<Element> {
        self.check_dim(a)?;
        let k = BigRational::from_integer(BigInt::from(n));
        let mut coords = Vec::with_capacity(self.dim());
        for (x, ty) in a.coords().iter().zip(self.layout.iter()) {
            let s = x * &k;
            coords.push(match ty {
                CoordType::Torsion(m) => modular(&s, *m),
                CoordType::Free { .. } => s,
            });
        }
        Ok(Element(coords))
    }

    /// Shape-level validation of the quasi-order definition; does not run
    /// the windowed axiom checks.
    fn validate_shape(&self) -> Result<()> {
        match &self.qo {
            QoDef::Table(t) => {
                if !self.is_finite() {
                    return Err(CoreError::InvalidSpec(
                        "table quasi-orders require a finite group".into(),
                    ));
                }
                let n = self.order().unwrap();
                if t.ranks.len() as u64 != n {
                    return Err(CoreError::InvalidSpec(format!(
                        "rank table lists {} elements, group has {n}",
                        t.ranks.len()
                    )));
                }
                for (g, _) in &t.ranks {
                    let r = self.reduce(g)?;
                    if &r != g {
                        return Err(CoreError::InvalidSpec(format!(
                            "rank table entry {g} is not reduced"
                        )));
                    }
                }
                if t.map.len() as u64 != n {
                    return Err(CoreError::InvalidSpec(
                        "rank table has duplicate entries".into(),
                    ));
                }
            }
            QoDef::Lex {
                degenerate_z2,
                mixed,
            } => {
                if *degenerate_z2 {
                    if self.free_rank != 0 || self.torsion_orders != [2] {
                        return Err(CoreError::InvalidSpec(
                            "degenerate_z2 lex order requires exactly the group Z/2Z".into(),
                        ));
                    }
                } else if !self.torsion_orders.is_empty() && !mixed {
                    return Err(CoreError::InvalidSpec(
                        "lex orders over torsion coordinates require the degenerate_z2 flag \
                         or the explicit mixed flag (the mixed form is not compatible)"
                            .into(),
                    ));
                }
            }
            QoDef::Valuation(v) => self.validate_valuation(v)?,
            QoDef::SubgroupOrder { modulus } => {
                if self.free_rank != 1 || !self.torsion_orders.is_empty() || self.divisible {
                    return Err(CoreError::InvalidSpec(
                        "subgroup_order requires the plain rank-1 free group".into(),
                    ));
                }
                if *modulus < 2 {
                    return Err(CoreError::InvalidSpec(
                        "subgroup_order modulus must be at least 2".into(),
                    ));
                }
            }
            QoDef::Product { ordered, valued } => {
                if !matches!(ordered.qo, QoDef::Lex { .. }) || !ordered.torsion_orders.is_empty() {
                    return Err(CoreError::InvalidSpec(
                        "the ordered factor of a product must be a torsion-free lex order".into(),
                    ));
                }
                if !valued.is_valuational_shape() {
                    return Err(CoreError::InvalidSpec(
                        "the valued factor of a product must be valuational".into(),
                    ));
                }
            }
            QoDef::Hahn { components } => {
                if components.is_empty() {
                    return Err(CoreError::InvalidSpec(
                        "hahn products need at least one component".into(),
                    ));
                }
            }
            QoDef::Quotient(q) => {
                let d = q.ambient.dim();
                if q.outer.len() != d || q.inner.len() != d {
                    return Err(CoreError::InvalidSpec(
                        "quotient box condition lists must match the ambient dimension".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn validate_valuation(&self, v: &ValuationDef) -> Result<()> {
        match v {
            ValuationDef::Trivial => Ok(()),
            ValuationDef::Table { entries, map } => {
                if !self.is_finite() {
                    return Err(CoreError::InvalidSpec(
                        "valuation tables require a finite group".into(),
                    ));
                }
                let n = self.order().unwrap();
                if entries.len() as u64 != n - 1 || map.len() as u64 != n - 1 {
                    return Err(CoreError::InvalidSpec(format!(
                        "valuation table must list each of the {} nonzero elements once",
                        n - 1
                    )));
                }
                for (g, _) in entries {
                    if g.is_zero() {
                        return Err(CoreError::InvalidSpec(
                            "valuation tables leave v(0) implicit; do not list 0".into(),
                        ));
                    }
                    let r = self.reduce(g)?;
                    if &r != g {
                        return Err(CoreError::InvalidSpec(format!(
                            "valuation table entry {g} is not reduced"
                        )));
                    }
                }
                // v(g) = v(-g) and the ultrametric law, checked exhaustively.
                let elems = crate::window::enumerate_torsion_box(self);
                for g in &elems {
                    let vg = self.valuation_value(g)?;
                    let ng = self.neg(g)?;
                    if vg != self.valuation_value(&ng)? {
                        return Err(CoreError::InvalidSpec(format!(
                            "valuation is not symmetric at {g}"
                        )));
                    }
                }
                for g in &elems {
                    for h in &elems {
                        let s = self.add(g, h)?;
                        let vs = self.valuation_value(&s)?;
                        let m = self.valuation_value(g)?.min(self.valuation_value(h)?);
                        if vs < m {
                            return Err(CoreError::InvalidSpec(format!(
                                "valuation violates the ultrametric law at {g}, {h}"
                            )));
                        }
                    }
                }
                Ok(())
            }
            ValuationDef::Levels(levels) => {
                for level in levels {
                    if level.len() != self.dim() {
                        return Err(CoreError::InvalidSpec(
                            "valuation level condition lists must match the dimension".into(),
                        ));
                    }
                    for (cond, ty) in level.iter().zip(self.layout.iter()) {
                        check_cond(cond, ty)?;
                    }
                }
                for w in levels.windows(2) {
                    let (outer, inner) = (&w[0], &w[1]);
                    let nested = inner
                        .iter()
                        .zip(outer.iter())
                        .all(|(i, o)| i.implies(o));
                    if !nested {
                        return Err(CoreError::InvalidSpec(
                            "valuation levels must form a descending subgroup chain".into(),
                        ));
                    }
                }
                Ok(())
            }
        }
    }

    /// Structural test: does this spec's quasi-order kind guarantee that all
    /// nonzero elements are torsion-like equivalence classes (v-type)?
    pub fn is_valuational_shape(&self) -> bool {
        match &self.qo {
            QoDef::Valuation(_) => true,
            QoDef::Hahn { components } => {
                components.iter().all(GroupSpec::is_valuational_shape)
            }
            QoDef::Lex { degenerate_z2, .. } => *degenerate_z2,
            QoDef::Table(t) => {
                // Finite table: valuational iff rank(g) = rank(-g) for all g
                // and 0 is the unique minimum.
                let zero = self.zero();
                let r0 = match t.rank(&zero) {
                    Ok(r) => r,
                    Err(_) => return false,
                };
                t.ranks.iter().all(|(g, r)| {
                    if g == &zero {
                        return true;
                    }
                    let ng = match self.neg(g) {
                        Ok(ng) => ng,
                        Err(_) => return false,
                    };
                    *r > r0 && t.rank(&ng).map(|rn| rn == *r).unwrap_or(false)
                })
            }
            QoDef::Quotient(_) | QoDef::Product { .. } | QoDef::SubgroupOrder { .. } => false,
        }
    }

    /// The value `v(g)` for valuational specs.
    pub fn valuation_value(&self, g: &Element) -> Result<Val> {
        self.check_dim(g)?;
        if g.is_zero() {
            return Ok(Val::Inf);
        }
        match &self.qo {
            QoDef::Valuation(ValuationDef::Trivial) => Ok(Val::Fin(0)),
            QoDef::Valuation(ValuationDef::Table { map, .. }) => map
                .get(g)
                .copied()
                .map(Val::Fin)
                .ok_or_else(|| {
                    CoreError::StructureViolation(format!("element {g} missing from valuation table"))
                }),
            QoDef::Valuation(ValuationDef::Levels(levels)) => {
                let mut v = 0;
                for level in levels {
                    if in_box(level, g) {
                        v += 1;
                    } else {
                        break;
                    }
                }
                Ok(Val::Fin(v))
            }
            _ => Err(CoreError::UnsupportedSpec(
                "valuation_value is only defined for valuation specs".into(),
            )),
        }
    }
}

fn check_cond(cond: &CoordCond, ty: &CoordType) -> Result<()> {
    match (cond, ty) {
        (CoordCond::Div(m), _) if *m < 2 => Err(CoreError::InvalidSpec(
            "divisibility conditions need a modulus of at least 2".into(),
        )),
        (CoordCond::Div(_), CoordType::Free { divisible: true }) => Err(CoreError::InvalidSpec(
            "divisibility conditions cut out no proper subgroup of a divisible coordinate".into(),
        )),
        (CoordCond::Div(m), CoordType::Torsion(n)) if n % m != 0 => Err(CoreError::InvalidSpec(
            format!("divisibility by {m} is not well defined modulo {n}"),
        )),
        _ => Ok(()),
    }
}

fn derive_layout(
    free_rank: usize,
    torsion_orders: &[u32],
    divisible: bool,
    qo: &QoDef,
) -> Result<Vec<CoordType>> {
    let layout = match qo {
        QoDef::Table(_) | QoDef::Lex { .. } | QoDef::Valuation(_) | QoDef::SubgroupOrder { .. } => {
            let mut l: Vec<CoordType> = torsion_orders.iter().map(|&n| CoordType::Torsion(n)).collect();
            l.extend((0..free_rank).map(|_| CoordType::Free { divisible }));
            l
        }
        QoDef::Product { ordered, valued } => {
            let mut l = valued.layout.clone();
            l.extend_from_slice(&ordered.layout);
            l
        }
        QoDef::Hahn { components } => {
            let mut l = Vec::new();
            for c in components {
                l.extend_from_slice(&c.layout);
            }
            l
        }
        QoDef::Quotient(q) => q
            .projs
            .iter()
            .map(|p| match *p {
                QProj::Keep { pos } => q.ambient.layout[pos],
                QProj::Mod { pos: _, m } => CoordType::Torsion(m),
                QProj::Scaled { .. } => CoordType::Free { divisible: false },
                QProj::ScaledMod { pos: _, m: _, q } => CoordType::Torsion(q),
            })
            .collect(),
    };
    // For composite kinds the declared counts must match the derived layout.
    let derived_free = layout
        .iter()
        .filter(|c| matches!(c, CoordType::Free { .. }))
        .count();
    let derived_torsion: Vec<u32> = layout
        .iter()
        .filter_map(|c| match c {
            CoordType::Torsion(n) => Some(*n),
            CoordType::Free { .. } => None,
        })
        .collect();
    if derived_free != free_rank || derived_torsion != torsion_orders {
        return Err(CoreError::InvalidSpec(format!(
            "declared free rank {free_rank} / torsion {torsion_orders:?} do not match the \
             layout derived from the quasi-order definition \
             (free {derived_free}, torsion {derived_torsion:?})"
        )));
    }
    let derived_div = layout
        .iter()
        .any(|c| matches!(c, CoordType::Free { divisible: true }));
    if matches!(
        qo,
        QoDef::Product { .. } | QoDef::Hahn { .. } | QoDef::Quotient(_)
    ) && divisible != derived_div
    {
        return Err(CoreError::InvalidSpec(
            "the divisible flag of a composite spec must match its factors".into(),
        ));
    }
    Ok(layout)
}

/// Builds a quotient spec from ambient boxes, deriving coordinate
/// projections. `outer` and `inner` must both be box subgroups with
/// `inner` contained in `outer`.
pub fn quotient_box(
    ambient: &GroupSpec,
    outer: &[CoordCond],
    inner: &[CoordCond],
) -> Result<GroupSpec> {
    let d = ambient.dim();
    if outer.len() != d || inner.len() != d {
        return Err(CoreError::InvalidSpec(
            "quotient box condition lists must match the ambient dimension".into(),
        ));
    }
    for (conds, name) in [(outer, "outer"), (inner, "inner")] {
        for (cond, ty) in conds.iter().zip(ambient.layout.iter()) {
            check_cond(cond, ty).map_err(|e| {
                CoreError::InvalidSpec(format!("{name} box: {e}"))
            })?;
        }
    }
    let mut projs = Vec::new();
    for pos in 0..d {
        if !inner[pos].implies(&outer[pos]) {
            return Err(CoreError::NotASubgroup(format!(
                "inner box is not contained in the outer box at coordinate {pos}"
            )));
        }
        let ty = ambient.layout[pos];
        let proj = match (outer[pos], inner[pos]) {
            (_, CoordCond::Any) => continue,
            (CoordCond::Zero, _) => continue,
            (CoordCond::Any, CoordCond::Zero) => QProj::Keep { pos },
            (CoordCond::Any, CoordCond::Div(m)) => QProj::Mod { pos, m },
            (CoordCond::Div(m), CoordCond::Zero) => match ty {
                CoordType::Free { .. } => QProj::Scaled { pos, m },
                CoordType::Torsion(n) => QProj::ScaledMod { pos, m, q: n / m },
            },
            (CoordCond::Div(m), CoordCond::Div(m2)) => QProj::ScaledMod { pos, m, q: m2 / m },
        };
        projs.push(proj);
    }
    let qb = QuotientBox {
        ambient: Box::new(ambient.clone()),
        outer: outer.to_vec(),
        inner: inner.to_vec(),
        projs,
    };
    let layout: Vec<CoordType> = qb
        .projs
        .iter()
        .map(|p| match *p {
            QProj::Keep { pos } => ambient.layout[pos],
            QProj::Mod { pos: _, m } => CoordType::Torsion(m),
            QProj::Scaled { .. } => CoordType::Free { divisible: false },
            QProj::ScaledMod { pos: _, m: _, q } => CoordType::Torsion(q),
        })
        .collect();
    let free_rank = layout
        .iter()
        .filter(|c| matches!(c, CoordType::Free { .. }))
        .count();
    let torsion: Vec<u32> = layout
        .iter()
        .filter_map(|c| match c {
            CoordType::Torsion(n) => Some(*n),
            CoordType::Free { .. } => None,
        })
        .collect();
    let divisible = layout
        .iter()
        .any(|c| matches!(c, CoordType::Free { divisible: true }));
    GroupSpec::new(free_rank, torsion, divisible, QoDef::Quotient(qb))
}

// --- convenience constructors -------------------------------------------------

impl GroupSpec {
    /// The integers with their usual order.
    pub fn ordered_z() -> GroupSpec {
        GroupSpec::new(
            1,
            vec![],
            false,
            QoDef::Lex {
                degenerate_z2: false,
                mixed: false,
            },
        )
        .expect("Z is a valid spec")
    }

    /// The rationals with their usual order.
    pub fn ordered_q() -> GroupSpec {
        GroupSpec::new(
            1,
            vec![],
            true,
            QoDef::Lex {
                degenerate_z2: false,
                mixed: false,
            },
        )
        .expect("Q is a valid spec")
    }

    /// `Z^rank` ordered lexicographically.
    pub fn ordered_z_lex(rank: usize) -> GroupSpec {
        GroupSpec::new(
            rank,
            vec![],
            false,
            QoDef::Lex {
                degenerate_z2: false,
                mixed: false,
            },
        )
        .expect("lex Z^r is a valid spec")
    }

    /// `Z/2Z` with `0 < 1`: the unique antisymmetric compatible case.
    pub fn z2_with_order() -> GroupSpec {
        GroupSpec::new(
            0,
            vec![2],
            false,
            QoDef::Lex {
                degenerate_z2: true,
                mixed: false,
            },
        )
        .expect("Z/2Z order is a valid spec")
    }

    /// `Z/nZ` with the trivial valuation.
    pub fn finite_trivial(n: u32) -> GroupSpec {
        GroupSpec::new(0, vec![n], false, QoDef::Valuation(ValuationDef::Trivial))
            .expect("trivial valuation is a valid spec")
    }

    /// `Z/(p^k)Z` with the `p`-adic valuation, expressed as a level chain.
    pub fn finite_padic(p: u32, k: u32) -> GroupSpec {
        let n = p.pow(k);
        let levels = (1..k).map(|i| vec![CoordCond::Div(p.pow(i))]).collect();
        GroupSpec::new(
            0,
            vec![n],
            false,
            QoDef::Valuation(ValuationDef::Levels(levels)),
        )
        .expect("p-adic valuation is a valid spec")
    }

    /// The integers ordered on multiples of `modulus`, one top class outside.
    pub fn subgroup_order(modulus: u32) -> GroupSpec {
        GroupSpec::new(1, vec![], false, QoDef::SubgroupOrder { modulus })
            .expect("subgroup order is a valid spec")
    }

    /// Builds a rank table spec over a finite torsion box.
    pub fn table(torsion_orders: Vec<u32>, ranks: Vec<(Element, u64)>) -> Result<GroupSpec> {
        let map = ranks.iter().cloned().collect();
        GroupSpec::new(0, torsion_orders, false, QoDef::Table(TableQo { ranks, map }))
    }

    /// Builds a finite valuation-table spec.
    pub fn valuation_table(
        torsion_orders: Vec<u32>,
        entries: Vec<(Element, u32)>,
    ) -> Result<GroupSpec> {
        let map = entries.iter().cloned().collect();
        GroupSpec::new(
            0,
            torsion_orders,
            false,
            QoDef::Valuation(ValuationDef::Table { entries, map }),
        )
    }
}

// --- JSON form ---------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    free_rank: usize,
    torsion_orders: Vec<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    divisible: bool,
    qo: RawQo,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawQo {
    Table {
        ranks: Vec<(Element, u64)>,
    },
    Lex {
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        degenerate_z2: bool,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        mixed: bool,
    },
    Valuation {
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        trivial: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        table: Option<Vec<(Element, u32)>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        levels: Option<Vec<Vec<CoordCond>>>,
    },
    SubgroupOrder {
        modulus: u32,
    },
    Product {
        ordered: Box<RawSpec>,
        valued: Box<RawSpec>,
    },
    Hahn {
        components: Vec<RawSpec>,
    },
    QuotientBox {
        ambient: Box<RawSpec>,
        outer: Vec<CoordCond>,
        inner: Vec<CoordCond>,
    },
}

impl TryFrom<RawSpec> for GroupSpec {
    type Error = CoreError;

    fn try_from(raw: RawSpec) -> Result<GroupSpec> {
        let qo = match raw.qo {
            RawQo::Table { ranks } => {
                let map = ranks.iter().cloned().collect();
                QoDef::Table(TableQo { ranks, map })
            }
            RawQo::Lex {
                degenerate_z2,
                mixed,
            } => QoDef::Lex {
                degenerate_z2,
                mixed,
            },
            RawQo::Valuation {
                trivial,
                table,
                levels,
            } => {
                let chosen = usize::from(trivial) + usize::from(table.is_some()) + usize::from(levels.is_some());
                if chosen != 1 {
                    return Err(CoreError::InvalidSpec(
                        "valuation payload must be exactly one of trivial, table, levels".into(),
                    ));
                }
                if trivial {
                    QoDef::Valuation(ValuationDef::Trivial)
                } else if let Some(entries) = table {
                    let map = entries.iter().cloned().collect();
                    QoDef::Valuation(ValuationDef::Table { entries, map })
                } else {
                    QoDef::Valuation(ValuationDef::Levels(levels.unwrap()))
                }
            }
            RawQo::SubgroupOrder { modulus } => QoDef::SubgroupOrder { modulus },
            RawQo::Product { ordered, valued } => QoDef::Product {
                ordered: Box::new(GroupSpec::try_from(*ordered)?),
                valued: Box::new(GroupSpec::try_from(*valued)?),
            },
            RawQo::Hahn { components } => QoDef::Hahn {
                components: components
                    .into_iter()
                    .map(GroupSpec::try_from)
                    .collect::<Result<_>>()?,
            },
            RawQo::QuotientBox {
                ambient,
                outer,
                inner,
            } => {
                let ambient = GroupSpec::try_from(*ambient)?;
                return quotient_box(&ambient, &outer, &inner).and_then(|q| {
                    if q.free_rank != raw.free_rank || q.torsion_orders != raw.torsion_orders {
                        return Err(CoreError::InvalidSpec(
                            "declared quotient shape does not match the derived quotient".into(),
                        ));
                    }
                    Ok(q)
                });
            }
        };
        GroupSpec::new(raw.free_rank, raw.torsion_orders, raw.divisible, qo)
    }
}

impl From<&GroupSpec> for RawSpec {
    fn from(spec: &GroupSpec) -> RawSpec {
        let qo = match &spec.qo {
            QoDef::Table(t) => RawQo::Table {
                ranks: t.ranks.clone(),
            },
            QoDef::Lex {
                degenerate_z2,
                mixed,
            } => RawQo::Lex {
                degenerate_z2: *degenerate_z2,
                mixed: *mixed,
            },
            QoDef::Valuation(ValuationDef::Trivial) => RawQo::Valuation {
                trivial: true,
                table: None,
                levels: None,
            },
            QoDef::Valuation(ValuationDef::Table { entries, .. }) => RawQo::Valuation {
                trivial: false,
                table: Some(entries.clone()),
                levels: None,
            },
            QoDef::Valuation(ValuationDef::Levels(levels)) => RawQo::Valuation {
                trivial: false,
                table: None,
                levels: Some(levels.clone()),
            },
            QoDef::SubgroupOrder { modulus } => RawQo::SubgroupOrder { modulus: *modulus },
            QoDef::Product { ordered, valued } => RawQo::Product {
                ordered: Box::new(RawSpec::from(ordered.as_ref())),
                valued: Box::new(RawSpec::from(valued.as_ref())),
            },
            QoDef::Hahn { components } => RawQo::Hahn {
                components: components.iter().map(RawSpec::from).collect(),
            },
            QoDef::Quotient(q) => RawQo::QuotientBox {
                ambient: Box::new(RawSpec::from(q.ambient.as_ref())),
                outer: q.outer.clone(),
                inner: q.inner.clone(),
            },
        };
        RawSpec {
            free_rank: spec.free_rank,
            torsion_orders: spec.torsion_orders.clone(),
            divisible: spec.divisible,
            qo,
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpec::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSpec::deserialize(de)?;
        GroupSpec::try_from(raw).map_err(D::Error::custom)
    }
}

impl GroupSpec {
    pub fn from_json(s: &str) -> Result<GroupSpec> {
        serde_json::from_str(s).map_err(|e| CoreError::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_product() {
        let spec = GroupSpec::new(
            1,
            vec![4],
            false,
            QoDef::Product {
                ordered: Box::new(GroupSpec::ordered_z()),
                valued: Box::new(GroupSpec::finite_padic(2, 2)),
            },
        )
        .unwrap();
        let js = spec.to_json();
        let back = GroupSpec::from_json(&js).unwrap();
        assert_eq!(spec, back);
        assert_eq!(back.dim(), 2);
        assert_eq!(back.layout()[0], CoordType::Torsion(4));
        assert_eq!(back.layout()[1], CoordType::Free { divisible: false });
    }

    #[test]
    fn loader_rejects_unknown_fields() {
        let js = r#"{"free_rank":1,"torsion_orders":[],"qo":{"kind":"lex"},"extra":1}"#;
        assert!(GroupSpec::from_json(js).is_err());
    }

    #[test]
    fn loader_rejects_mismatched_counts() {
        let js = r#"{"free_rank":2,"torsion_orders":[],"qo":{"kind":"product",
            "ordered":{"free_rank":1,"torsion_orders":[],"qo":{"kind":"lex"}},
            "valued":{"free_rank":0,"torsion_orders":[5],"qo":{"kind":"valuation","trivial":true}}}}"#;
        assert!(GroupSpec::from_json(js).is_err());
    }

    #[test]
    fn lex_torsion_needs_flag() {
        assert!(GroupSpec::new(
            1,
            vec![2],
            false,
            QoDef::Lex {
                degenerate_z2: false,
                mixed: false
            }
        )
        .is_err());
        assert!(GroupSpec::new(
            1,
            vec![2],
            false,
            QoDef::Lex {
                degenerate_z2: false,
                mixed: true
            }
        )
        .is_ok());
    }

    #[test]
    fn torsion_arithmetic_reduces() {
        let spec = GroupSpec::finite_padic(2, 2);
        let a = Element::from_ints(&[3]);
        let b = Element::from_ints(&[2]);
        assert_eq!(spec.add(&a, &b).unwrap(), Element::from_ints(&[1]));
        assert_eq!(spec.neg(&a).unwrap(), Element::from_ints(&[1]));
    }

    #[test]
    fn valuation_table_must_be_total_and_symmetric() {
        // Missing entries rejected.
        assert!(GroupSpec::valuation_table(vec![3], vec![(Element::from_ints(&[1]), 0)]).is_err());
        // Asymmetric values rejected: v(1) != v(2) = v(-1).
        assert!(GroupSpec::valuation_table(
            vec![3],
            vec![(Element::from_ints(&[1]), 0), (Element::from_ints(&[2]), 1)]
        )
        .is_err());
        // The trivial shape passes.
        assert!(GroupSpec::valuation_table(
            vec![3],
            vec![(Element::from_ints(&[1]), 0), (Element::from_ints(&[2]), 0)]
        )
        .is_ok());
    }

    #[test]
    fn quotient_box_layout() {
        // Z quotient by 5Z: one torsion-5 coordinate.
        let z = GroupSpec::subgroup_order(5);
        let q = quotient_box(&z, &[CoordCond::Any], &[CoordCond::Div(5)]).unwrap();
        assert_eq!(q.layout(), &[CoordType::Torsion(5)]);
        let qb = match q.qo() {
            QoDef::Quotient(qb) => qb,
            _ => unreachable!(),
        };
        assert_eq!(qb.lift(&Element::from_ints(&[3])), Element::from_ints(&[3]));
        assert_eq!(
            qb.project(&Element::from_ints(&[13])).unwrap(),
            Element::from_ints(&[3])
        );
        // 2Z inside Z, quotient of the subgroup 2Z by 6Z: scaled torsion.
        let z2 = quotient_box(&GroupSpec::ordered_z(), &[CoordCond::Div(2)], &[CoordCond::Div(6)])
            .unwrap();
        assert_eq!(z2.layout(), &[CoordType::Torsion(3)]);
        let qb2 = match z2.qo() {
            QoDef::Quotient(qb) => qb,
            _ => unreachable!(),
        };
        assert_eq!(qb2.lift(&Element::from_ints(&[2])), Element::from_ints(&[4]));
    }
}

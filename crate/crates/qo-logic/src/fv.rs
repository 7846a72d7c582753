//! Feferman–Vaught decomposition for products of an ordered group with
//! a valuationally quasi-ordered group.
//!
//! [`fv_decompose`] turns a formula `φ(x̄)` into pairs
//! `(φ₁ᵒ, φ₁ᵛ), …, (φₙᵒ, φₙᵛ)` such that over any product `G = G° ⊛ H`
//! and any tuple split `ḡ = ḡₒ + ḡᵥ`:
//!
//! > `G ⊨ φ(ḡ)` iff for some `i`, `G° ⊨ φᵢᵒ(ḡₒ)` and `H ⊨ φᵢᵥ(ḡᵥ)`.
//!
//! The construction is a straight structural induction. Negation goes
//! through a power-set step, so the pair list grows exponentially in
//! the number of child pairs; the list is always computed exactly
//! (dropping pairs would break the iff), and a warning is attached when
//! it exceeds the configured cap. No simplification is applied by
//! default; [`FvPairs::dedup`] removes syntactic duplicates on request,
//! which is harmless because the contract is an existential over the
//! list.

use crate::formula::{self, Formula};
use std::collections::HashSet;

/// Default bound above which [`fv_decompose`] attaches a size warning.
pub const DEFAULT_PAIR_CAP: u64 = 1 << 20;

/// Result of a product decomposition.
#[derive(Clone, Debug)]
pub struct FvPairs {
    /// The pairs `(φᵢᵒ, φᵢᵛ)`, in construction order.
    pub pairs: Vec<(Formula, Formula)>,
    /// Present when the pair count exceeded the cap in force.
    pub warning: Option<String>,
}

impl FvPairs {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Removes syntactically duplicate pairs. The decomposition
    /// contract is "some pair holds", so dropping exact repeats never
    /// changes the described set.
    pub fn dedup(&mut self) {
        let mut seen: HashSet<(Formula, Formula)> = HashSet::new();
        self.pairs.retain(|p| seen.insert(p.clone()));
    }
}

/// The cap in force: `QOAG_PAIR_CAP` when set to an integer, otherwise
/// [`DEFAULT_PAIR_CAP`].
pub fn pair_cap() -> u64 {
    std::env::var("QOAG_PAIR_CAP")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(DEFAULT_PAIR_CAP)
}

/// Decomposes `f` using the cap from [`pair_cap`].
pub fn fv_decompose(f: &Formula) -> FvPairs {
    fv_decompose_capped(f, pair_cap())
}

/// Decomposes `f`, attaching a warning when the result is larger than
/// `cap`. The list itself is always complete.
pub fn fv_decompose_capped(f: &Formula, cap: u64) -> FvPairs {
    let pairs = decompose(f);
    let warning = (pairs.len() as u64 > cap).then(|| {
        format!(
            "decomposition produced {} pairs, above the configured cap of {cap}",
            pairs.len()
        )
    });
    FvPairs { pairs, warning }
}

fn decompose(f: &Formula) -> Vec<(Formula, Formula)> {
    match f {
        // t = 0 splits coordinatewise: both components must vanish.
        Formula::Eq0(_) => vec![(f.clone(), f.clone())],
        // p <~ q holds in the product in exactly two ways: the valued
        // components decide it (q nonzero there), or both valued
        // components vanish and the ordered components decide it.
        Formula::Le(p, q) => vec![
            (
                formula::truth(),
                formula::and(
                    formula::not(formula::eq0(q.clone())),
                    formula::le(p.clone(), q.clone()),
                ),
            ),
            (
                formula::le(p.clone(), q.clone()),
                formula::and(formula::eq0(q.clone()), formula::eq0(p.clone())),
            ),
        ],
        Formula::Or(a, b) => {
            let mut out = decompose(a);
            out.extend(decompose(b));
            out
        }
        // Both conjuncts speak about the same component split, so a
        // pair of witnesses for the two sides conjoins componentwise.
        Formula::And(a, b) => {
            let da = decompose(a);
            let db = decompose(b);
            let mut out = Vec::with_capacity(da.len() * db.len());
            for (ao, av) in &da {
                for (bo, bv) in &db {
                    out.push((
                        formula::and(ao.clone(), bo.clone()),
                        formula::and(av.clone(), bv.clone()),
                    ));
                }
            }
            out
        }
        // A witness in the product is a sum of component witnesses.
        Formula::Exists(v, g) => decompose(g)
            .into_iter()
            .map(|(o, w)| (formula::exists(*v, o), formula::exists(*v, w)))
            .collect(),
        Formula::ForAll(v, g) => decompose(&formula::not(formula::exists(
            *v,
            formula::not((**g).clone()),
        ))),
        // ¬ψ holds iff every child pair fails on at least one side;
        // index the ways by the subset I of pairs failing on the
        // ordered side.
        Formula::Not(g) => {
            let inner = decompose(g);
            let k = inner.len();
            assert!(
                k < 64,
                "negation over {k} pairs is beyond any materializable size"
            );
            let mut out = Vec::with_capacity(1usize << k);
            for mask in 0u64..(1u64 << k) {
                let mut o_side = Vec::new();
                let mut v_side = Vec::new();
                for (i, (po, pv)) in inner.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        o_side.push(formula::not(po.clone()));
                    } else {
                        v_side.push(formula::not(pv.clone()));
                    }
                }
                out.push((formula::big_and(o_side), formula::big_and(v_side)));
            }
            out
        }
    }
}

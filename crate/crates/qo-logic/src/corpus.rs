//! Deterministic random corpora of formulas and sentences.
//!
//! Equivalence checking at bounded quantifier rank needs a fixed,
//! reproducible battery of sentences; soundness checks for the product
//! decomposition and for quantifier elimination need batches of random
//! formulas. Everything here is seeded, so a corpus is a pure function
//! of `(seed, count, profile)` — the shipped corpus files are
//! regenerated and diffed in tests to catch drift.

use crate::formula::{self, Formula};
use crate::parser;
use crate::term::{Term, VarId};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;

/// Tunable shape of a generated corpus.
#[derive(Clone, Debug)]
pub struct CorpusProfile {
    /// Maximum quantifier nesting depth.
    pub max_rank: u32,
    /// Free variables `x1..=x{free_vars}` the formulas may mention.
    pub free_vars: u32,
    /// Parameters `c1..=c{params}` the formulas may mention.
    pub params: u32,
    /// Whether `ALL` quantifiers may appear (otherwise only `EX`).
    pub allow_forall: bool,
    /// Coefficient magnitudes are drawn from `1..=coeff_bound`.
    pub coeff_bound: i64,
    /// Maximum connective depth on top of atoms.
    pub max_depth: u32,
    /// Reject formulas whose product decomposition would exceed this
    /// many pairs (None = no filter).
    pub max_pairs: Option<u128>,
}

impl CorpusProfile {
    /// Closed sentences with quantifier rank at most `max_rank`.
    pub fn sentences(max_rank: u32) -> CorpusProfile {
        CorpusProfile {
            max_rank,
            free_vars: 0,
            params: 0,
            allow_forall: true,
            coeff_bound: 3,
            max_depth: 3,
            max_pairs: None,
        }
    }

    /// Formulas in the free variables `x1..=x{free_vars}`.
    pub fn formulas(max_rank: u32, free_vars: u32) -> CorpusProfile {
        CorpusProfile {
            free_vars,
            ..CorpusProfile::sentences(max_rank)
        }
    }

    /// Restricts generation so the product decomposition of every kept
    /// formula stays below `cap` pairs.
    pub fn pair_capped(mut self, cap: u128) -> CorpusProfile {
        self.max_pairs = Some(cap);
        self
    }

    /// Allows parameters `c1..=c{n}`.
    pub fn with_params(mut self, n: u32) -> CorpusProfile {
        self.params = n;
        self
    }

    /// Forbids universal quantifiers.
    pub fn existential_only(mut self) -> CorpusProfile {
        self.allow_forall = false;
        self
    }
}

/// Draws `count` distinct formulas (distinct printed form) from the
/// profile. Deterministic in `seed`. If the profile is so tight that
/// `count` distinct formulas cannot be found in a bounded number of
/// attempts, the shorter list is returned.
pub fn sample(seed: u64, count: usize, profile: &CorpusProfile) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let max_attempts = count.saturating_mul(200).max(1000);
    for _ in 0..max_attempts {
        if out.len() == count {
            break;
        }
        let f = random_formula(&mut rng, profile);
        if let Some(cap) = profile.max_pairs {
            if projected_pair_count(&f) > cap {
                continue;
            }
        }
        if seen.insert(f.to_string()) {
            out.push(f);
        }
    }
    out
}

/// One random formula from the profile.
pub fn random_formula(rng: &mut (impl Rng + ?Sized), profile: &CorpusProfile) -> Formula {
    let mut scope = Vec::new();
    let mut next_var = profile.free_vars + 1;
    gen(
        rng,
        profile,
        profile.max_depth,
        profile.max_rank,
        &mut scope,
        &mut next_var,
    )
}

fn gen(
    rng: &mut (impl Rng + ?Sized),
    p: &CorpusProfile,
    depth: u32,
    rank: u32,
    scope: &mut Vec<u32>,
    next_var: &mut u32,
) -> Formula {
    let have_ids = !scope.is_empty() || p.free_vars > 0 || p.params > 0;
    // Without anything to talk about, atoms are trivial; spend the rank
    // budget first.
    let force_quant = !have_ids && rank > 0;
    if depth == 0 && !force_quant {
        return atom(rng, p, scope);
    }
    let roll = rng.random_range(0..100u32);
    if force_quant || (rank > 0 && roll < 35) {
        let v = *next_var;
        *next_var += 1;
        scope.push(v);
        let body = gen(rng, p, depth.saturating_sub(1), rank - 1, scope, next_var);
        scope.pop();
        return if p.allow_forall && rng.random_bool(0.3) {
            formula::forall(v, body)
        } else {
            formula::exists(v, body)
        };
    }
    match roll {
        0..=54 => atom(rng, p, scope),
        55..=69 => formula::not(gen(rng, p, depth - 1, rank, scope, next_var)),
        70..=84 => formula::and(
            gen(rng, p, depth - 1, rank, scope, next_var),
            gen(rng, p, depth - 1, rank, scope, next_var),
        ),
        _ => formula::or(
            gen(rng, p, depth - 1, rank, scope, next_var),
            gen(rng, p, depth - 1, rank, scope, next_var),
        ),
    }
}

fn atom(rng: &mut (impl Rng + ?Sized), p: &CorpusProfile, scope: &[u32]) -> Formula {
    let ids = available_ids(p, scope);
    if ids.is_empty() {
        return formula::truth();
    }
    match rng.random_range(0..100u32) {
        0..=44 => {
            let (a, b) = two_sides(rng, p, &ids);
            formula::le(a, b)
        }
        45..=69 => formula::eq0(random_term(rng, p, &ids)),
        70..=84 => {
            let (a, b) = two_sides(rng, p, &ids);
            formula::lt(a, b)
        }
        _ => {
            let (a, b) = two_sides(rng, p, &ids);
            formula::sim(a, b)
        }
    }
}

fn two_sides(rng: &mut (impl Rng + ?Sized), p: &CorpusProfile, ids: &[VarId]) -> (Term, Term) {
    let a = random_term(rng, p, ids);
    // Comparisons against 0 are common and informative; mix them in.
    let b = if rng.random_bool(0.35) {
        Term::zero()
    } else {
        random_term(rng, p, ids)
    };
    if rng.random_bool(0.5) {
        (a, b)
    } else {
        (b, a)
    }
}

fn random_term(rng: &mut (impl Rng + ?Sized), p: &CorpusProfile, ids: &[VarId]) -> Term {
    let n = 1 + usize::from(ids.len() > 1 && rng.random_bool(0.4));
    let mut t = Term::zero();
    let mut used = Vec::new();
    while used.len() < n {
        let id = ids[rng.random_range(0..ids.len())];
        if used.contains(&id) {
            continue;
        }
        used.push(id);
        let mag = rng.random_range(1..=p.coeff_bound);
        let c = if rng.random_bool(0.5) { mag } else { -mag };
        t = t.add(&Term::monomial(id, c));
    }
    t
}

fn available_ids(p: &CorpusProfile, scope: &[u32]) -> Vec<VarId> {
    let mut ids: Vec<VarId> = scope.iter().map(|&v| VarId::Var(v)).collect();
    ids.extend((1..=p.free_vars).map(VarId::Var));
    ids.extend((1..=p.params).map(VarId::Param));
    ids
}

/// Seed of the shipped rank-2 sentence corpus.
pub const SHIPPED_SENTENCE_SEED: u64 = 11;
/// Size of the shipped rank-2 sentence corpus.
pub const SHIPPED_SENTENCE_COUNT: usize = 120;
/// Seed of the shipped one-free-variable corpus.
pub const SHIPPED_ONEVAR_SEED: u64 = 12;
/// Size of the shipped one-free-variable corpus.
pub const SHIPPED_ONEVAR_COUNT: usize = 100;

/// Profile of the shipped sentence corpus: rank ≤ 2, closed, and small
/// enough that the product decomposition of every sentence stays
/// tractable.
pub fn shipped_sentence_profile() -> CorpusProfile {
    CorpusProfile::sentences(2).pair_capped(4096)
}

/// Profile of the shipped one-free-variable corpus used for definable
/// set extraction: rank ≤ 2 in the single free variable `x1`.
pub fn shipped_onevar_profile() -> CorpusProfile {
    CorpusProfile::formulas(2, 1).pair_capped(1024)
}

/// The shipped rank-2 sentence corpus, regenerated in memory. The
/// checked-in file under `fixtures/corpus/` must match this exactly.
pub fn shipped_sentences() -> Vec<Formula> {
    sample(
        SHIPPED_SENTENCE_SEED,
        SHIPPED_SENTENCE_COUNT,
        &shipped_sentence_profile(),
    )
}

/// The shipped one-free-variable corpus, regenerated in memory.
pub fn shipped_onevar() -> Vec<Formula> {
    sample(
        SHIPPED_ONEVAR_SEED,
        SHIPPED_ONEVAR_COUNT,
        &shipped_onevar_profile(),
    )
}

/// Size the product decomposition of `f` would have, computed without
/// materializing it (saturating at `u128::MAX`).
pub fn projected_pair_count(f: &Formula) -> u128 {
    fn pow2(n: u128) -> u128 {
        if n >= 128 {
            u128::MAX
        } else {
            1u128 << n
        }
    }
    match f {
        Formula::Eq0(_) => 1,
        Formula::Le(..) => 2,
        Formula::Or(a, b) => projected_pair_count(a).saturating_add(projected_pair_count(b)),
        Formula::And(a, b) => projected_pair_count(a).saturating_mul(projected_pair_count(b)),
        Formula::Not(g) => pow2(projected_pair_count(g)),
        Formula::Exists(_, g) => projected_pair_count(g),
        Formula::ForAll(_, g) => pow2(pow2(projected_pair_count(g))),
    }
}

/// Parses a corpus file: one formula per line, blank lines and lines
/// starting with `#` ignored.
pub fn load_lines(path: &Path) -> crate::error::Result<Vec<Formula>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        crate::error::LogicError::Syntax {
            pos: 0,
            message: format!("cannot read {}: {e}", path.display()),
        }
    })?;
    parse_lines(&text)
}

/// Parses corpus text in the same line format as [`load_lines`].
pub fn parse_lines(text: &str) -> crate::error::Result<Vec<Formula>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parser::parse)
        .collect()
}

/// Renders formulas in the corpus line format.
pub fn render_lines(formulas: &[Formula]) -> String {
    let mut out = String::new();
    for f in formulas {
        out.push_str(&f.to_string());
        out.push('\n');
    }
    out
}

/// A second, independent generator used only to shuffle assignment
/// grids in tests; kept here so test crates share one seeding story.
pub fn shuffle_rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_in_the_seed() {
        let p = CorpusProfile::sentences(2);
        let a = sample(7, 30, &p);
        let b = sample(7, 30, &p);
        assert_eq!(render_lines(&a), render_lines(&b));
        let c = sample(8, 30, &p);
        assert_ne!(render_lines(&a), render_lines(&c));
    }

    #[test]
    fn sentences_have_no_free_variables() {
        for f in sample(1, 40, &CorpusProfile::sentences(2)) {
            assert!(f.free_vars().is_empty(), "free vars in {f}");
            assert!(f.quantifier_rank() <= 2, "rank too high in {f}");
        }
    }

    #[test]
    fn formula_profile_respects_the_variable_budget() {
        for f in sample(2, 40, &CorpusProfile::formulas(2, 3)) {
            for id in f.free_vars() {
                match id {
                    VarId::Var(v) => assert!(v <= 3, "unexpected free {id} in {f}"),
                    VarId::Param(_) => panic!("params are off in this profile"),
                }
            }
        }
    }

    #[test]
    fn generated_formulas_survive_a_parse_round_trip() {
        for f in sample(3, 40, &CorpusProfile::formulas(2, 2).with_params(1)) {
            let printed = f.to_string();
            let back = parser::parse(&printed).unwrap();
            assert_eq!(back.to_string(), printed);
        }
    }

    #[test]
    fn pair_cap_filter_bounds_the_projected_count() {
        let p = CorpusProfile::formulas(2, 3).pair_capped(1 << 12);
        let fs = sample(4, 60, &p);
        assert!(!fs.is_empty());
        for f in &fs {
            assert!(projected_pair_count(f) <= 1 << 12);
        }
    }

    #[test]
    fn projected_count_matches_the_construction_rules() {
        let le = parser::parse("x1 <~ x2").unwrap();
        assert_eq!(projected_pair_count(&le), 2);
        let all = parser::parse("ALL x1. x1 <~ x2").unwrap();
        assert_eq!(projected_pair_count(&all), 16);
        let not = parser::parse("!(x1 <~ x2 & x1 = 0)").unwrap();
        assert_eq!(projected_pair_count(&not), 4);
    }
}

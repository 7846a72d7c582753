//! Sentence decision and corpus-based elementary-equivalence checks.
//!
//! Full elementary equivalence is undecidable in general, so
//! [`equiv_rank_k`] works with a *fixed sentence corpus* at bounded
//! quantifier rank: two structures are reported indistinguishable when
//! no corpus sentence separates them with definite verdicts. This is a
//! surrogate for rank-`k` equivalence, and the report says so.
//!
//! [`decide`] tries a sequence of sound strategies, each returning an
//! exact verdict on its own turf, and reports `Unknown` rather than
//! guessing when none of them applies:
//!
//! 1. finite groups — exhaustive evaluation;
//! 2. divisible ordered groups — quantifier elimination to a variable-free
//!    formula, then syntactic evaluation;
//! 3. products of a divisible ordered group with a finite valued group —
//!    product decomposition, eliminating quantifiers on the ordered
//!    side and exhausting the finite valued side;
//! 4. windowed evaluation — witness-based verdicts are exact even on
//!    infinite groups;
//! 5. propositional refinement — torsion-free coefficient reduction
//!    followed by a truth-table check of the prenex matrix under
//!    reflexivity and totality of the quasi-order.

use crate::error::{LogicError, Result};
use crate::eval::{eval, Assignment, Truth3};
use crate::formula::{self, Formula};
use crate::qe::qe_doag_over;
use qo_core::{GroupSpec, QoDef, Window};
use std::collections::HashMap;

/// Decides a sentence over a spec as exactly as the strategies allow.
///
/// Definite verdicts are sound: `True`/`False` hold in the actual
/// structure, not merely on the window. `Unknown` means no strategy
/// settled the sentence. `f` must be a sentence (parameters count as
/// free variables here).
pub fn decide(spec: &GroupSpec, f: &Formula, w: Window) -> Result<Truth3> {
    if let Some(id) = f.free_vars().into_iter().next() {
        return Err(LogicError::UnboundVariable(id.to_string()));
    }
    let empty = Assignment::new();

    // Finite groups: the window already enumerates everything.
    if spec.free_rank() == 0 {
        return eval(spec, f, &empty, w);
    }

    // Divisible ordered groups: eliminate quantifiers, read the result.
    match qe_doag_over(spec, f) {
        Ok(g) => {
            let v = eval_ground(&g);
            if v.is_definite() {
                return Ok(v);
            }
        }
        Err(LogicError::NotOrderFragment(_)) => {}
        Err(e) => return Err(e),
    }

    // Products with a finite valued part: decompose and decide each
    // component exactly.
    if let QoDef::Product { ordered, valued } = spec.qo() {
        if valued.free_rank() == 0 {
            if let Some(v) = decide_product(ordered, valued, f, w)? {
                return Ok(v);
            }
        }
    }

    // Windowed evaluation: witnesses make existentials/refutations exact.
    let v = eval(spec, f, &empty, w)?;
    if v.is_definite() {
        return Ok(v);
    }

    // Propositional refinement of the prenex matrix.
    let reduced = if spec.torsion_orders().is_empty() {
        reduce_torsion_free(f)
    } else {
        f.clone()
    };
    let (_prefix, matrix) = reduced.prenex();
    Ok(propositional_verdict(&matrix))
}

/// Exact decision over `ordered ⊛ valued` via the product
/// decomposition. Returns `None` when the ordered side is outside the
/// elimination fragment.
fn decide_product(
    ordered: &GroupSpec,
    valued: &GroupSpec,
    f: &Formula,
    w: Window,
) -> Result<Option<Truth3>> {
    let empty = Assignment::new();
    let pairs = crate::fv::fv_decompose(f);
    for (o_f, v_f) in &pairs.pairs {
        let o_verdict = match qe_doag_over(ordered, o_f) {
            Ok(g) => eval_ground(&g),
            Err(LogicError::NotOrderFragment(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        match o_verdict {
            Truth3::Unknown => return Ok(None),
            Truth3::False => continue,
            Truth3::True => {}
        }
        match eval(valued, v_f, &empty, w)? {
            Truth3::True => return Ok(Some(Truth3::True)),
            Truth3::False => continue,
            Truth3::Unknown => return Ok(None),
        }
    }
    Ok(Some(Truth3::False))
}

/// Evaluates a formula with no remaining quantifiers or variables.
/// Atoms decide syntactically: identical sides are `<~`-related by
/// reflexivity, and the zero term is `= 0`; anything else is `Unknown`.
pub fn eval_ground(f: &Formula) -> Truth3 {
    match f {
        Formula::Le(a, b) => {
            if a == b {
                Truth3::True
            } else {
                Truth3::Unknown
            }
        }
        Formula::Eq0(t) => {
            if t.is_zero() {
                Truth3::True
            } else {
                Truth3::Unknown
            }
        }
        Formula::Not(g) => eval_ground(g).not(),
        Formula::And(a, b) => eval_ground(a).and(eval_ground(b)),
        Formula::Or(a, b) => eval_ground(a).or(eval_ground(b)),
        Formula::Exists(..) | Formula::ForAll(..) => Truth3::Unknown,
    }
}

/// In a torsion-free group `n·t = 0` is equivalent to `t = 0`, so
/// equality atoms drop the common coefficient factor. Comparison atoms
/// are left alone — scaling interacts with the order.
fn reduce_torsion_free(f: &Formula) -> Formula {
    match f {
        Formula::Eq0(t) => {
            let g = t.content_gcd();
            if g > 1 {
                formula::eq0(t.divide_exact(g))
            } else {
                f.clone()
            }
        }
        Formula::Le(..) => f.clone(),
        Formula::Not(g) => formula::not(reduce_torsion_free(g)),
        Formula::And(a, b) => formula::and(reduce_torsion_free(a), reduce_torsion_free(b)),
        Formula::Or(a, b) => formula::or(reduce_torsion_free(a), reduce_torsion_free(b)),
        Formula::Exists(v, g) => formula::exists(*v, reduce_torsion_free(g)),
        Formula::ForAll(v, g) => formula::forall(*v, reduce_torsion_free(g)),
    }
}

/// Truth-table check of a quantifier-free matrix. If the matrix is
/// true under every admissible valuation of its atoms, the whole
/// prenexed sentence is true (domains are nonempty); if false under
/// every admissible valuation, it is false. Admissible means:
/// reflexive atoms (`t <~ t`, `0 = 0`) are true, and a pair of
/// converse comparisons is never both false (totality).
fn propositional_verdict(matrix: &Formula) -> Truth3 {
    let atoms = matrix.atoms();
    let mut free: Vec<Formula> = Vec::new();
    let mut val: HashMap<Formula, bool> = HashMap::new();
    for a in &atoms {
        match forced_value(a) {
            Some(b) => {
                val.insert(a.clone(), b);
            }
            None => free.push(a.clone()),
        }
    }
    if free.len() > 12 {
        return Truth3::Unknown;
    }
    // Indices of converse comparison pairs among the undetermined atoms.
    let mut converse: Vec<(usize, usize)> = Vec::new();
    for (i, a) in free.iter().enumerate() {
        if let Formula::Le(s, t) = a {
            let swapped = formula::le(t.clone(), s.clone());
            if let Some(j) = free.iter().position(|b| *b == swapped) {
                if i < j {
                    converse.push((i, j));
                }
            }
        }
    }
    let mut any_true = false;
    let mut any_false = false;
    'masks: for mask in 0u32..(1u32 << free.len()) {
        for &(i, j) in &converse {
            if mask & (1 << i) == 0 && mask & (1 << j) == 0 {
                continue 'masks;
            }
        }
        for (i, a) in free.iter().enumerate() {
            val.insert(a.clone(), mask & (1 << i) != 0);
        }
        if prop_eval(matrix, &val) {
            any_true = true;
        } else {
            any_false = true;
        }
        if any_true && any_false {
            return Truth3::Unknown;
        }
    }
    match (any_true, any_false) {
        (true, false) => Truth3::True,
        (false, true) => Truth3::False,
        _ => Truth3::Unknown,
    }
}

fn forced_value(atom: &Formula) -> Option<bool> {
    match atom {
        Formula::Le(a, b) if a == b => Some(true),
        Formula::Eq0(t) if t.is_zero() => Some(true),
        _ => None,
    }
}

fn prop_eval(f: &Formula, val: &HashMap<Formula, bool>) -> bool {
    match f {
        Formula::Le(..) | Formula::Eq0(..) => val[f],
        Formula::Not(g) => !prop_eval(g, val),
        Formula::And(a, b) => prop_eval(a, val) && prop_eval(b, val),
        Formula::Or(a, b) => prop_eval(a, val) || prop_eval(b, val),
        Formula::Exists(..) | Formula::ForAll(..) => {
            unreachable!("propositional check runs on a prenex matrix")
        }
    }
}

/// One sentence that separated the two structures.
#[derive(Clone, Debug)]
pub struct EquivWitness {
    pub sentence: String,
    pub left: Truth3,
    pub right: Truth3,
}

/// One sentence left undecided on at least one side.
#[derive(Clone, Debug)]
pub struct EquivUnknown {
    pub sentence: String,
    pub left: Truth3,
    pub right: Truth3,
}

/// Outcome of a corpus equivalence check.
#[derive(Clone, Debug)]
pub struct EquivReport {
    /// Quantifier-rank bound of the corpus actually used.
    pub rank: u32,
    /// Sentences with definite opposite verdicts.
    pub witnesses: Vec<EquivWitness>,
    /// Sentences undecided on at least one side — never silently dropped.
    pub unknowns: Vec<EquivUnknown>,
    /// Number of corpus sentences checked.
    pub checked: usize,
}

impl EquivReport {
    pub fn distinguished(&self) -> bool {
        !self.witnesses.is_empty()
    }

    /// Verdict string: this is corpus-based, so indistinguishability is
    /// always relative to the sentences actually checked.
    pub fn verdict(&self) -> String {
        if self.distinguished() {
            "distinguished".to_string()
        } else {
            format!("indistinguishable at rank {} on the checked corpus", self.rank)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "verdict": self.verdict(),
            "witnesses": self.witnesses.iter().map(|w| serde_json::json!({
                "sentence": w.sentence,
                "left": w.left.to_string(),
                "right": w.right.to_string(),
            })).collect::<Vec<_>>(),
            "unknowns": self.unknowns.iter().map(|u| serde_json::json!({
                "sentence": u.sentence,
                "left": u.left.to_string(),
                "right": u.right.to_string(),
            })).collect::<Vec<_>>(),
            "checked": self.checked,
        })
    }
}

/// Checks two specs against every corpus sentence of quantifier rank at
/// most `k` (higher-rank or open formulas in the corpus are skipped).
/// A sentence separates the specs only when both verdicts are definite
/// and different; undecided sentences are reported, not dropped.
pub fn equiv_rank_k(
    g1: &GroupSpec,
    g2: &GroupSpec,
    k: u32,
    corpus: &[Formula],
    w: Window,
) -> Result<EquivReport> {
    let mut report = EquivReport {
        rank: k,
        witnesses: Vec::new(),
        unknowns: Vec::new(),
        checked: 0,
    };
    for f in corpus {
        if f.quantifier_rank() > k || !f.free_vars().is_empty() {
            continue;
        }
        report.checked += 1;
        let left = decide(g1, f, w)?;
        let right = decide(g2, f, w)?;
        if left.is_definite() && right.is_definite() {
            if left != right {
                report.witnesses.push(EquivWitness {
                    sentence: f.to_string(),
                    left,
                    right,
                });
            }
        } else {
            report.unknowns.push(EquivUnknown {
                sentence: f.to_string(),
                left,
                right,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn ground_evaluation_reads_off_syntax() {
        assert_eq!(eval_ground(&parse("0 = 0").unwrap()), Truth3::True);
        assert_eq!(eval_ground(&parse("!(0 = 0)").unwrap()), Truth3::False);
        assert_eq!(eval_ground(&parse("c1 = 0").unwrap()), Truth3::Unknown);
        assert_eq!(
            eval_ground(&parse("0 = 0 | c1 = 0").unwrap()),
            Truth3::True
        );
    }

    #[test]
    fn divisible_path_decides_density_sentences() {
        let q = GroupSpec::ordered_q();
        let w = Window::new(2);
        // Between any two strictly comparable points there is a third.
        let dense = parse(
            "ALL x1. ALL x2. !(x1 <~ x2 & !(x2 <~ x1)) | (EX x3. x1 << x3 & x3 << x2)",
        )
        .unwrap();
        assert_eq!(decide(&q, &dense, w).unwrap(), Truth3::True);
        // No least element.
        let least = parse("EX x1. ALL x2. x1 <~ x2").unwrap();
        assert_eq!(decide(&q, &least, w).unwrap(), Truth3::False);
    }

    #[test]
    fn torsion_sentence_splits_the_integers_from_the_mixed_product() {
        let torsion = parse("EX x1. 5*x1 = 0 & !(x1 = 0)").unwrap();
        let w = Window::new(3);
        let z = GroupSpec::ordered_z();
        assert_eq!(decide(&z, &torsion, w).unwrap(), Truth3::False);
        let product = GroupSpec::new(
            1,
            vec![5],
            false,
            QoDef::Product {
                ordered: Box::new(GroupSpec::ordered_z()),
                valued: Box::new(GroupSpec::finite_trivial(5)),
            },
        )
        .unwrap();
        assert_eq!(decide(&product, &torsion, w).unwrap(), Truth3::True);
    }

    #[test]
    fn totality_is_visible_to_the_propositional_refinement() {
        let z = GroupSpec::ordered_z();
        let f = parse("ALL x1. ALL x2. x1 <~ x2 | x2 <~ x1").unwrap();
        assert_eq!(decide(&z, &f, Window::new(2)).unwrap(), Truth3::True);
    }

    #[test]
    fn identical_finite_structures_are_indistinguishable() {
        let a = GroupSpec::finite_trivial(5);
        let b = GroupSpec::finite_trivial(5);
        let corpus = crate::corpus::sample(11, 25, &crate::corpus::CorpusProfile::sentences(2));
        let report = equiv_rank_k(&a, &b, 2, &corpus, Window::new(2)).unwrap();
        assert!(!report.distinguished(), "witnesses: {:?}", report.witnesses);
        assert!(report.unknowns.is_empty());
        assert_eq!(report.checked, corpus.len());
        assert!(report.verdict().starts_with("indistinguishable"));
    }

    #[test]
    fn report_json_has_the_contract_keys() {
        let report = EquivReport {
            rank: 2,
            witnesses: vec![EquivWitness {
                sentence: "EX x1. 5*x1 = 0 & !(x1 = 0)".into(),
                left: Truth3::False,
                right: Truth3::True,
            }],
            unknowns: vec![],
            checked: 1,
        };
        let json = report.to_json();
        assert_eq!(json["verdict"], "distinguished");
        assert_eq!(json["witnesses"][0]["left"], "false");
        assert_eq!(json["unknowns"].as_array().unwrap().len(), 0);
        assert_eq!(json["checked"], 1);
    }
}

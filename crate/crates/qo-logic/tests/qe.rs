//! Quantifier elimination over divisible ordered groups: the output
//! must be quantifier-free and agree with the input everywhere.

use qo_logic::{eval, qe_doag, qe_doag_over, sample, Assignment, CorpusProfile, LogicError, VarId};
use qo_core::{GroupSpec, Window};

/// All assignments of window elements to the free variables and params of `f`.
fn assignments(
    spec: &GroupSpec,
    ids: &[VarId],
    w: Window,
) -> Vec<Assignment> {
    let elems = qo_core::universe(spec, w).unwrap();
    let mut out = vec![Assignment::new()];
    for id in ids {
        let mut next = Vec::new();
        for a in &out {
            for e in &elems {
                let mut a2 = a.clone();
                a2.insert(*id, e.clone());
                next.push(a2);
            }
        }
        out = next;
    }
    out
}

#[test]
fn eliminated_formulas_are_quantifier_free_and_pointwise_equal() {
    let spec = GroupSpec::ordered_q();
    let w = Window::with_denominators(2, 2);
    let profile = CorpusProfile::formulas(2, 2);
    let corpus = sample(41, 60, &profile);
    let mut compared = 0usize;
    for f in &corpus {
        let g = qe_doag_over(&spec, f).unwrap();
        assert!(g.is_quantifier_free(), "QE left a quantifier in {}", g);

        let mut ids: Vec<VarId> = f.free_vars().into_iter().collect();
        ids.sort();
        // Keep the grid small: two id slots at most in this profile.
        for assign in assignments(&spec, &ids, w) {
            let lhs = eval(&spec, f, &assign, w).unwrap();
            let rhs = eval(&spec, &g, &assign, w).unwrap();
            // The original may be Unknown under a window; the
            // quantifier-free result is always exact. Whenever the
            // window is decisive they must agree.
            assert!(rhs.is_definite(), "qf formula {} came back Unknown", g);
            if lhs.is_definite() {
                assert_eq!(lhs, rhs, "QE changed {} (became {})", f, g);
                compared += 1;
            }
        }
    }
    assert!(compared > 100, "too few decisive comparisons: {}", compared);
}

#[test]
fn sentences_eliminate_to_ground_truth_values() {
    let spec = GroupSpec::ordered_q();
    let w = Window::new(1);
    for f in sample(42, 40, &CorpusProfile::sentences(2)) {
        let g = qe_doag_over(&spec, &f).unwrap();
        assert!(
            g.free_vars().is_empty() && g.is_quantifier_free(),
            "sentence {} eliminated to non-ground {}",
            f,
            g
        );
        let lhs = eval(&spec, &f, &Assignment::new(), w).unwrap();
        let rhs = eval(&spec, &g, &Assignment::new(), w).unwrap();
        assert!(rhs.is_definite());
        if lhs.is_definite() {
            assert_eq!(lhs, rhs, "sentence {} eliminated to {}", f, g);
        }
    }
}

#[test]
fn fragment_gate_rejects_everything_but_divisible_torsion_free_lex() {
    let f = qo_logic::parse("EX x1. x1 <~ c1").unwrap();
    for bad in [
        GroupSpec::ordered_z(),          // not divisible
        GroupSpec::finite_trivial(4),    // no free part
        GroupSpec::z2_with_order(),      // torsion + degenerate order
        GroupSpec::subgroup_order(3),    // not an order at all
    ] {
        match qe_doag_over(&bad, &f) {
            Err(LogicError::NotOrderFragment(_)) => {}
            other => panic!("expected NotOrderFragment, got {:?}", other),
        }
    }
    assert!(qe_doag_over(&GroupSpec::ordered_q(), &f).is_ok());
}

#[test]
fn raw_elimination_matches_gated_entry_point() {
    let f = qo_logic::parse("ALL x1. EX x2. x1 <~ x2 & !(x2 <~ x1)").unwrap();
    let spec = GroupSpec::ordered_q();
    assert_eq!(
        qe_doag(&f).unwrap().to_string(),
        qe_doag_over(&spec, &f).unwrap().to_string()
    );
}

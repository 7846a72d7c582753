//! Product decomposition: the pair list is sound over real products
//! and its size matches the syntactic projection.

use qo_logic::{
    eval, fv_decompose, fv_decompose_capped, parse, projected_pair_count, sample, Assignment,
    CorpusProfile, Truth3, VarId,
};
use qo_core::{universe, Element, GroupSpec, QoDef, Window};

fn product(valued: GroupSpec) -> GroupSpec {
    let torsion = valued.torsion_orders().to_vec();
    let free = valued.free_rank() + 1;
    GroupSpec::new(
        free,
        torsion,
        false,
        QoDef::Product {
            ordered: Box::new(GroupSpec::ordered_z()),
            valued: Box::new(valued),
        },
    )
    .unwrap()
}

/// Evaluates the decomposition's existential contract on the two
/// factors with Kleene connectives.
fn pairs_verdict(
    o_spec: &GroupSpec,
    v_spec: &GroupSpec,
    pairs: &[(qo_logic::Formula, qo_logic::Formula)],
    assign_o: &Assignment,
    assign_v: &Assignment,
    w: Window,
) -> Truth3 {
    let mut acc = Truth3::False;
    for (fo, fv) in pairs {
        let vo = eval(o_spec, fo, assign_o, w).unwrap();
        let vv = eval(v_spec, fv, assign_v, w).unwrap();
        acc = acc.or(vo.and(vv));
    }
    acc
}

#[test]
fn decomposition_agrees_with_direct_evaluation_on_products() {
    let valued_parts = [GroupSpec::finite_trivial(3), GroupSpec::finite_padic(2, 2)];
    let o_spec = GroupSpec::ordered_z();
    let w = Window::new(1);
    let corpus = sample(61, 40, &CorpusProfile::formulas(1, 1).pair_capped(256));
    let mut compared = 0usize;
    for valued in &valued_parts {
        let g = product(valued.clone());
        let vd = valued.dim();
        for f in &corpus {
            let pairs = fv_decompose(f);
            assert!(pairs.warning.is_none());
            for e in universe(&g, w).unwrap() {
                // Valued coordinates come first in the product layout.
                let (ev, eo) = e.0.split_at(vd);
                let mut assign = Assignment::new();
                assign.insert(VarId::Var(1), e.clone());
                let mut assign_o = Assignment::new();
                assign_o.insert(VarId::Var(1), Element(eo.to_vec()));
                let mut assign_v = Assignment::new();
                assign_v.insert(VarId::Var(1), Element(ev.to_vec()));
                let direct = eval(&g, f, &assign, w).unwrap();
                let split = pairs_verdict(&o_spec, valued, &pairs.pairs, &assign_o, &assign_v, w);
                if direct.is_definite() && split.is_definite() {
                    assert_eq!(
                        direct, split,
                        "decomposition of {} disagrees at {:?} over {:?}",
                        f, e, valued.qo()
                    );
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 200, "only {} decisive comparisons", compared);
}

#[test]
fn pair_counts_match_the_syntactic_projection() {
    let corpus = sample(62, 40, &CorpusProfile::formulas(2, 2).pair_capped(4096));
    assert!(corpus.len() >= 30);
    for f in &corpus {
        let n = projected_pair_count(f);
        let out = fv_decompose(f);
        assert_eq!(out.len() as u128, n, "projection off for {}", f);
    }
}

#[test]
fn universal_over_two_pairs_projects_to_sixteen() {
    let f = parse("ALL x1. x1 <~ x2").unwrap();
    assert_eq!(projected_pair_count(&f), 16);
    assert_eq!(fv_decompose(&f).len(), 16);
}

#[test]
fn cap_env_override_is_respected() {
    // Env-var tests must not run concurrently with each other; this is
    // the only test in the suite touching QOAG_PAIR_CAP.
    let f = parse("x1 <~ x2 & x1 <~ x2 & x1 <~ x2").unwrap();
    std::env::set_var("QOAG_PAIR_CAP", "4");
    let out = fv_decompose(&f);
    std::env::remove_var("QOAG_PAIR_CAP");
    assert_eq!(out.len(), 8);
    assert!(out.warning.is_some());
    let relaxed = fv_decompose_capped(&f, 8);
    assert!(relaxed.warning.is_none());
}

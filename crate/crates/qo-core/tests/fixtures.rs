//! The shipped fixture specs, pinned to their documented behavior.

use qo_core::{
    check_q1, check_q2, extract_valuation, int, is_convex, o_part, quotient_qo, Classification,
    CompareResult, CoordCond, Element, ExtractedVal, GroupSpec, SubgroupDesc, Window,
};

fn fixture(name: &str) -> GroupSpec {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"));
    GroupSpec::from_json(&text).unwrap_or_else(|e| panic!("parsing {path}: {e}"))
}

fn e(cs: &[i64]) -> Element {
    Element::from_ints(cs)
}

#[test]
fn all_fixtures_parse_and_round_trip() {
    for name in [
        "example-a",
        "example-b",
        "z2",
        "remark-counterexample",
        "preqo-nontransitive",
        "q-tensor-z4",
        "notproduct-g2",
    ] {
        let spec = fixture(name);
        let json = spec.to_json();
        let back = GroupSpec::from_json(&json).unwrap();
        assert_eq!(spec, back, "{name} JSON round trip");
    }
}

#[test]
fn example_a_pinned_comparisons() {
    let spec = fixture("example-a");
    // First coordinate carries the collapsing valuation, second the order.
    assert_eq!(
        spec.compare(&e(&[0, 1]), &e(&[0, 2])).unwrap(),
        CompareResult::StrictBelow
    );
    assert_eq!(
        spec.compare(&e(&[1, 7]), &e(&[-3, 0])).unwrap(),
        CompareResult::Equivalent
    );
    let g = e(&[2, -4]);
    assert_eq!(spec.compare(&g, &g).unwrap(), CompareResult::Equivalent);
    assert_eq!(spec.classify(&e(&[0, 3])).unwrap(), Classification::OType);
    assert_eq!(spec.classify(&e(&[1, 5])).unwrap(), Classification::VType);
    assert_eq!(spec.classify(&e(&[0, 0])).unwrap(), Classification::Zero);
}

#[test]
fn example_a_is_window_compatible_and_split_by_first_coordinate() {
    let spec = fixture("example-a");
    let w = Window::new(4);
    assert!(check_q1(&spec, w).unwrap().is_none());
    assert!(check_q2(&spec, w).unwrap().is_none());
    let part = o_part(&spec, w).unwrap();
    assert!(part.elements.iter().all(|g| g.coords()[0] == int(0)));
    assert_eq!(part.elements.len(), 9);
    assert_eq!(
        part.description,
        Some(SubgroupDesc::Box(vec![CoordCond::Zero, CoordCond::Any]))
    );
    // The order-like part is convex and contains exactly the order-like
    // elements.
    let report = is_convex(
        &spec,
        &SubgroupDesc::Box(vec![CoordCond::Zero, CoordCond::Any]),
        w,
    )
    .unwrap();
    assert!(report.convex);
    assert_eq!(report.subgroup_inside_o_part, Some(true));
    assert_eq!(report.o_part_inside_subgroup, Some(true));
}

#[test]
fn example_b_valuation_has_two_point_chain() {
    let spec = fixture("example-b");
    let w = Window::new(10);
    assert!(check_q2(&spec, w).unwrap().is_none());
    let part = o_part(&spec, w).unwrap();
    let mut got: Vec<String> = part.elements.iter().map(|g| g.to_string()).collect();
    got.sort();
    let mut want: Vec<String> = ["0", "5", "-5", "10", "-10"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    want.sort();
    assert_eq!(got, want);

    let v = extract_valuation(&spec, w).unwrap();
    assert_eq!(v.chain_len, 1);
    assert_eq!(v.value(&e(&[5])), Some(ExtractedVal::Gamma0));
    assert_eq!(v.value(&e(&[-10])), Some(ExtractedVal::Gamma0));
    assert_eq!(v.value(&e(&[3])), Some(ExtractedVal::Gamma(0)));
    assert_eq!(v.value(&e(&[7])), Some(ExtractedVal::Gamma(0)));
    assert_eq!(v.value(&e(&[0])), Some(ExtractedVal::Infty));

    let report = is_convex(&spec, &SubgroupDesc::Box(vec![CoordCond::Div(5)]), w).unwrap();
    assert!(report.convex);
}

#[test]
fn example_b_quotient_by_multiples_is_trivially_valued_z5() {
    let spec = fixture("example-b");
    let q = quotient_qo(
        &spec,
        &SubgroupDesc::Box(vec![CoordCond::Div(5)]),
        Window::new(8),
    )
    .unwrap();
    assert_eq!(q, GroupSpec::finite_trivial(5));
}

#[test]
fn z2_fixture_is_the_flagged_two_element_order() {
    let spec = fixture("z2");
    let w = Window::new(1);
    assert!(check_q1(&spec, w).unwrap().is_none());
    assert!(check_q2(&spec, w).unwrap().is_none());
    // 1 = -1, so the only nonzero element is valuation-like even though the
    // order is antisymmetric.
    assert_eq!(spec.classify(&e(&[1])).unwrap(), Classification::VType);
    assert_eq!(
        spec.compare(&e(&[0]), &e(&[1])).unwrap(),
        CompareResult::StrictBelow
    );
    let v = extract_valuation(&spec, w).unwrap();
    assert_eq!(v.chain_len, 1);
}

#[test]
fn remark_counterexample_fails_q2_at_documented_witness() {
    let spec = fixture("remark-counterexample");
    let w = Window::new(3);
    assert!(check_q1(&spec, w).unwrap().is_none());
    let report = check_q2(&spec, w).unwrap().expect("Q2 must fail");
    let shown: Vec<String> = report.witness.iter().map(|g| g.to_string()).collect();
    assert_eq!(shown, ["(0, 0)", "(1, 0)", "(1, 1)"]);
}

#[test]
fn q_tensor_z4_is_window_compatible() {
    let spec = fixture("q-tensor-z4");
    let w = Window::with_denominators(2, 2);
    assert!(check_q1(&spec, w).unwrap().is_none());
    assert!(check_q2(&spec, w).unwrap().is_none());
    // Torsion valued part dominates the divisible ordered part.
    assert_eq!(
        spec.compare(&e(&[1, 0]), &Element(vec![qo_core::rat(0, 1), qo_core::rat(1, 2)]))
            .unwrap(),
        CompareResult::StrictAbove
    );
    let part = o_part(&spec, w).unwrap();
    assert_eq!(
        part.description,
        Some(SubgroupDesc::Box(vec![CoordCond::Zero, CoordCond::Any]))
    );
}

#[test]
fn preqo_fixture_is_valuational_and_compatible() {
    let spec = fixture("preqo-nontransitive");
    let w = Window::new(3);
    assert!(check_q2(&spec, w).unwrap().is_none());
    let part = o_part(&spec, w).unwrap();
    assert_eq!(part.elements.len(), 1);
    let v = extract_valuation(&spec, w).unwrap();
    // Three finite values: generic, second coordinate even, and first zero
    // with second even.
    assert_eq!(v.chain_len, 3);
    assert_eq!(v.value(&e(&[0, 1])), Some(ExtractedVal::Gamma(0)));
    assert_eq!(v.value(&e(&[1, 2])), Some(ExtractedVal::Gamma(1)));
    assert_eq!(v.value(&e(&[0, 2])), Some(ExtractedVal::Gamma(2)));
}

#[test]
fn notproduct_g2_puts_torsion_classes_above_the_free_part() {
    let spec = fixture("notproduct-g2");
    let w = Window::new(6);
    assert!(check_q1(&spec, w).unwrap().is_none());
    assert!(check_q2(&spec, w).unwrap().is_none());
    assert_eq!(spec.classify(&e(&[1, 0])).unwrap(), Classification::VType);
    assert_eq!(spec.classify(&e(&[0, 2])).unwrap(), Classification::OType);
    // Nonzero torsion classes sit above every free element.
    assert_eq!(
        spec.compare(&e(&[0, 6]), &e(&[3, 0])).unwrap(),
        CompareResult::StrictBelow
    );
    assert_eq!(
        spec.compare(&e(&[1, -2]), &e(&[4, 5])).unwrap(),
        CompareResult::Equivalent
    );
}

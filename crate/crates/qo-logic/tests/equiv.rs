//! Corpus-based elementary-equivalence probes: a torsion sentence
//! separates Z-with-subgroup-order from a genuine product with the same
//! parts, while relabeling a valuation table separates nothing.

use qo_logic::{decide, equiv_rank_k, load_lines, shipped_sentences, Truth3};
use qo_core::{Element, GroupSpec, QoDef, Window};
use std::path::PathBuf;

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn subgroup_five() -> GroupSpec {
    GroupSpec::subgroup_order(5)
}

/// Z ⊕ Z/5 with the product of the usual order and the trivial
/// valuation: same order part and same quotient as `subgroup_five`,
/// but with honest 5-torsion.
fn product_five() -> GroupSpec {
    GroupSpec::new(
        1,
        vec![5],
        false,
        QoDef::Product {
            ordered: Box::new(GroupSpec::ordered_z()),
            valued: Box::new(GroupSpec::finite_trivial(5)),
        },
    )
    .unwrap()
}

#[test]
fn torsion_sentence_separates_the_group_from_the_product_of_its_parts() {
    let witness = load_lines(&fixture("sentences/torsion-witness.txt")).unwrap();
    assert_eq!(witness.len(), 1);
    let w = Window::new(6);

    let f = &witness[0];
    assert_eq!(decide(&subgroup_five(), f, w).unwrap(), Truth3::False);
    assert_eq!(decide(&product_five(), f, w).unwrap(), Truth3::True);

    let mut corpus = shipped_sentences();
    corpus.extend(witness);
    let report = equiv_rank_k(&subgroup_five(), &product_five(), 2, &corpus, w).unwrap();
    assert!(report.distinguished());
    assert_eq!(report.verdict(), "distinguished");
    assert!(
        report
            .witnesses
            .iter()
            .any(|wit| wit.sentence == "EX x1. 5*x1 = 0 & !(x1 = 0)"),
        "the 5-torsion sentence must appear among the witnesses"
    );
}

#[test]
fn the_two_structural_parts_are_separately_indistinguishable() {
    // Order parts: both are Z with its usual order. Quotients: both are
    // Z/5 with the trivial valuation. The separation above is therefore
    // a genuine failure of the product to capture the group.
    let corpus = shipped_sentences();
    let w = Window::new(6);

    let orders = equiv_rank_k(&GroupSpec::ordered_z(), &GroupSpec::ordered_z(), 2, &corpus, w)
        .unwrap();
    assert!(!orders.distinguished());

    let quotients = equiv_rank_k(
        &GroupSpec::finite_trivial(5),
        &GroupSpec::finite_trivial(5),
        2,
        &corpus,
        w,
    )
    .unwrap();
    assert!(!quotients.distinguished());
    assert!(quotients.unknowns.is_empty(), "finite groups decide exactly");
    assert_eq!(quotients.checked, corpus.len());
}

#[test]
fn relabeling_the_valuation_values_changes_no_verdict() {
    // Q ⊛ (Z/4 with the 2-adic valuation) against Q ⊛ (Z/4 with the
    // same chain under doubled values): only the relative order of
    // values matters, so every sentence must agree — decided exactly
    // through the product path, with nothing left unknown.
    let padic = GroupSpec::finite_padic(2, 2);
    let relabeled = GroupSpec::valuation_table(
        vec![4],
        vec![
            (Element::from_ints(&[1]), 0),
            (Element::from_ints(&[2]), 2),
            (Element::from_ints(&[3]), 0),
        ],
    )
    .unwrap();
    let make = |valued: GroupSpec| {
        GroupSpec::new(
            1,
            vec![4],
            true,
            QoDef::Product {
                ordered: Box::new(GroupSpec::ordered_q()),
                valued: Box::new(valued),
            },
        )
        .unwrap()
    };
    let g1 = make(padic);
    let g2 = make(relabeled);

    let corpus = shipped_sentences();
    let report = equiv_rank_k(&g1, &g2, 2, &corpus, Window::new(3)).unwrap();
    assert!(!report.distinguished(), "witnesses: {:?}", report.witnesses);
    assert!(
        report.unknowns.is_empty(),
        "product path should decide everything, left {} unknown",
        report.unknowns.len()
    );
    assert_eq!(report.checked, corpus.len());
}

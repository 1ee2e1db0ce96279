//! Relation-table verification and the report's external interface.

use jtqes_core::fock::{BracketKind, FockSpace, LadderKind, Mode};
use jtqes_core::superalgebra::{build_generators, relation_table, verify_relations};
use proptest::prelude::*;

#[test]
fn report_serializes_relation_residual_pass_triples() {
    let space = FockSpace::new(4).unwrap();
    let gens = build_generators(&space);
    let report = verify_relations(&gens, &space, 1).unwrap();
    let value: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    let relations = value["relations"].as_array().unwrap();
    assert_eq!(relations.len(), 26);
    for r in relations {
        assert!(r.get("relation").is_some());
        assert!(r.get("residual").is_some());
        assert!(r.get("pass").is_some());
    }
    // the three print-variant notes are recorded
    let noted: Vec<&serde_json::Value> = relations
        .iter()
        .filter(|r| r.get("printed_form").is_some())
        .collect();
    assert_eq!(noted.len(), 3);
}

#[test]
fn number_operator_commutes_with_su11() {
    let space = FockSpace::new(5).unwrap();
    let gens = build_generators(&space);
    let proj = space.interior_projection(1).unwrap();
    for other in [&gens.jplus, &gens.jminus, &gens.jzero] {
        let comm = gens.nop.bracket(other, BracketKind::Commutator).unwrap();
        let residual = proj.mul(&comm).unwrap().mul(&proj).unwrap().max_abs();
        assert!(residual < 1e-12);
    }
}

#[test]
fn relation_names_are_unique() {
    let table = relation_table();
    let mut names: Vec<String> = table.iter().map(|e| e.name()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 26);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transpose_reverses_products(cutoff in 2usize..5) {
        // (AB)^T = B^T A^T for the ladder operators
        let space = FockSpace::new(cutoff).unwrap();
        let a = space.ladder_operator(Mode::One, LadderKind::Create);
        let b = space.ladder_operator(Mode::Two, LadderKind::Annihilate);
        let lhs = a.mul(&b).unwrap().transpose();
        let rhs = b.transpose().mul(&a.transpose()).unwrap();
        prop_assert_eq!(lhs.entries(), rhs.entries());
    }

    #[test]
    fn creation_is_transpose_of_annihilation(cutoff in 2usize..6) {
        let space = FockSpace::new(cutoff).unwrap();
        for mode in [Mode::One, Mode::Two] {
            let a = space.ladder_operator(mode, LadderKind::Annihilate);
            let adag_t = space.ladder_operator(mode, LadderKind::Create).transpose();
            prop_assert_eq!(adag_t.entries(), a.entries());
        }
    }
}

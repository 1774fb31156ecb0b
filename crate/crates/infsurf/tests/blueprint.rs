mod common;

use infsurf::blueprint::{self, examples, BlockKind, EndAutomaton, Equivalence, GenusProfile};
use infsurf::cantor_basis::TriadicInterval;
use proptest::prelude::*;

fn w(s: &str) -> TriadicInterval {
    TriadicInterval::parse(s).unwrap()
}

#[test]
fn corpus_files_match_builtins() {
    for name in common::CORPUS {
        let a = common::corpus(name);
        let b = common::builtin(name);
        assert_eq!(a.to_json(), b.to_json(), "{name}");
    }
}

#[test]
fn cantor_slice_is_full_tree() {
    let a = examples::cantor();
    for n in 0..7 {
        let s = blueprint::expand(&a, n);
        assert_eq!(s.entries.len(), (1 << (n + 1)) - 1);
        assert!(s.entries.values().all(|e| e.xi == 1 && e.chi == 0));
    }
}

#[test]
fn flute_slice_labels() {
    let s = blueprint::expand(&examples::flute(), 3);
    assert_eq!(blueprint::building_block(&s, &w("")).unwrap(), BlockKind::Pants);
    assert_eq!(blueprint::building_block(&s, &w("22")).unwrap(), BlockKind::Pants);
    assert_eq!(blueprint::building_block(&s, &w("0")).unwrap(), BlockKind::Cylinder);
    assert_eq!(blueprint::building_block(&s, &w("200")).unwrap(), BlockKind::Cylinder);
    assert!(s.get(&w("02")).is_none());
    assert_eq!(s.restrict(1).entries.len(), 3);
}

#[test]
fn normalize_splits_branching_genus() {
    let a = EndAutomaton::from_table(0, "s", &[("s", 2, Some("s"), Some("s"))]).unwrap();
    assert!(!blueprint::is_normalized(&a));
    let n = blueprint::normalize(&a);
    assert!(blueprint::is_normalized(&n));
    assert_eq!(n.len(), 2);
    let g = n.start();
    assert_eq!(n.chi(g), 2);
    assert_eq!(n.out_degree(g), 1);
    assert!(n.name(g).ends_with(blueprint::GENUS_SPLIT_SUFFIX));
    let p = n.step(g, infsurf::Digit::Zero).unwrap();
    assert_eq!((n.chi(p), n.out_degree(p)), (0, 2));
}

#[test]
fn invariants_of_the_examples() {
    use GenusProfile::*;
    let table: [(&str, bool, Option<u64>, GenusProfile); 7] = [
        ("cantor", false, None, Finite(0)),
        ("flute", false, None, Finite(0)),
        ("flute_alternating", false, None, Finite(0)),
        ("genus_cylinder", false, Some(1), Infinite),
        ("plain_cylinder", true, Some(1), Finite(0)),
        ("planar_and_nonplanar", false, Some(2), Infinite),
        ("pants_with_handle", true, Some(2), Finite(1)),
    ];
    for (name, finite, ends, genus) in table {
        let a = common::builtin(name);
        assert_eq!(blueprint::is_finite_type(&a), finite, "{name}");
        assert_eq!(blueprint::end_count(&a), ends, "{name}");
        assert_eq!(blueprint::total_genus(&a), genus, "{name}");
    }
}

#[test]
fn rejects_bad_tables() {
    assert!(EndAutomaton::from_table(0, "s", &[("s", 1, Some("s"), None)]).is_err());
    assert!(EndAutomaton::from_table(0, "s", &[("s", 3, Some("s"), None)]).is_err());
    assert!(EndAutomaton::from_table(0, "s", &[("s", 0, Some("t"), None)]).is_err());
    assert!(EndAutomaton::from_table(0, "s", &[("s", 0, None, None)]).is_err());
    assert!(EndAutomaton::from_table(0, "s", &[("s", 0, Some("s"), None), ("s", 0, Some("s"), None)]).is_err());
}

#[test]
fn json_round_trip() {
    for name in common::CORPUS {
        let a = common::builtin(name);
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back = EndAutomaton::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, a);
    }
}

#[test]
fn equivalence_verdicts() {
    let v = blueprint::blueprint_equivalent(&examples::flute(), &examples::flute_alternating(), 8);
    assert!(matches!(v, Equivalence::Equivalent { .. }));
    let v = blueprint::blueprint_equivalent(&examples::cantor(), &examples::flute(), 8);
    assert!(matches!(v, Equivalence::Distinct { .. }));
    let v = blueprint::blueprint_equivalent(&examples::genus_cylinder(), &examples::plain_cylinder(), 8);
    assert!(matches!(v, Equivalence::Distinct { .. }));
    let v = blueprint::blueprint_equivalent(&examples::planar_and_nonplanar(), &examples::pants_with_handle(), 8);
    assert!(matches!(v, Equivalence::Distinct { .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let a = common::random_automaton(&mut rng, 6);
        let n = blueprint::normalize(&a);
        prop_assert!(blueprint::is_normalized(&n));
        prop_assert_eq!(blueprint::normalize(&n), n.clone());
        prop_assert_eq!(blueprint::is_finite_type(&n), blueprint::is_finite_type(&a));
        prop_assert_eq!(blueprint::total_genus(&n), blueprint::total_genus(&a));
        prop_assert_eq!(blueprint::end_count(&n), blueprint::end_count(&a));
    }

    #[test]
    fn self_equivalence_is_never_distinct(seed in any::<u64>()) {
        let a = common::random_normalized(seed, 6);
        let v = blueprint::blueprint_equivalent(&a, &a, 6);
        prop_assert!(!matches!(v, Equivalence::Distinct { .. }), "distinct from itself: {:?}", v);
    }
}

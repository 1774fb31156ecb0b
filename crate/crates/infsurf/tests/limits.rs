mod common;

use infsurf::blueprint::{self, examples};
use infsurf::cantor_basis::TriadicInterval;
use infsurf::ideal_boundary::EndPath;
use infsurf::lagrangians::{self as lg, EndClass, GeneratorObject, Side};
use infsurf::limits::{self, LimitError, Presentation};
use infsurf::surface_builder::Site;
use proptest::prelude::*;

fn o(s: &str) -> GeneratorObject {
    s.parse().unwrap()
}

fn e(s: &str) -> EndPath {
    s.parse().unwrap()
}

fn w(s: &str) -> TriadicInterval {
    TriadicInterval::parse(s).unwrap()
}

#[test]
fn closed_objects_restrict_to_themselves() {
    let a = examples::genus_cylinder();
    let t = limits::viterbo_restrict(&a, &o("X[0]"), 3).unwrap();
    assert_eq!(t.object, Some(o("X[0]")));
    assert!(t.marks.is_empty());
    assert_eq!(limits::viterbo_restrict(&a, &o("X[000]"), 3).unwrap().object, None);
}

#[test]
fn arcs_leave_through_two_marks() {
    let a = examples::flute();
    let t = limits::viterbo_restrict(&a, &o("arc(0(0), 2(2))"), 2).unwrap();
    let circles: Vec<String> = t.marks.iter().map(|m| m.circle.word()).collect();
    assert_eq!(circles, vec!["00", "22"]);
    let twisted = o("arc(0(0), 2(2); twists: S[222]:1)");
    assert_eq!(
        limits::viterbo_restrict(&a, &twisted, 2).unwrap(),
        limits::viterbo_restrict(&a, &o("arc(0(0), 2(2))"), 2).unwrap()
    );
    assert_ne!(
        limits::viterbo_restrict(&a, &twisted, 3).unwrap(),
        limits::viterbo_restrict(&a, &o("arc(0(0), 2(2))"), 3).unwrap()
    );
}

#[test]
fn extension_with_own_rays_is_identity() {
    let a = examples::planar_and_nonplanar();
    let obj = o("arc((0), (2)+)");
    let t = limits::viterbo_restrict(&a, &obj, 3).unwrap();
    let rays = limits::own_rays(&a, &t).unwrap();
    let ext = limits::extend(&a, &t, &rays).unwrap();
    assert_eq!(ext.object, obj);
    assert!(ext.corrections.is_empty());
}

#[test]
fn other_class_is_flagged() {
    let a = examples::planar_and_nonplanar();
    let t = limits::viterbo_restrict(&a, &o("arc((0), (2)+)"), 3).unwrap();
    let mut rays = limits::own_rays(&a, &t).unwrap();
    rays[1].1 = EndClass { end: e("(2)"), side: Side::Minus };
    let ext = limits::extend(&a, &t, &rays).unwrap();
    assert_eq!(ext.object, o("arc((0), (2)-)"));
    assert_eq!(ext.corrections, vec![e("(2)")]);
}

#[test]
fn extension_errors() {
    let a = examples::flute();
    let t = limits::viterbo_restrict(&a, &o("arc(0(0), 2(2))"), 2).unwrap();
    let rays = limits::own_rays(&a, &t).unwrap();
    assert!(matches!(limits::extend(&a, &t, &rays[..1]), Err(LimitError::RayMismatch(_))));
    let mut wrong = rays.clone();
    wrong[0].0 = w("02");
    assert!(matches!(limits::extend(&a, &t, &wrong), Err(LimitError::RayMismatch(_))));
    let empty = limits::viterbo_restrict(&a, &o("L[222]"), 2).unwrap();
    assert!(matches!(limits::extend(&a, &empty, &[]), Err(LimitError::EmptyRestriction)));
    assert!(matches!(limits::restrict_truncated(&a, &t, 3), Err(LimitError::LevelOrder { .. })));
}

#[test]
fn dehn_twists() {
    let a = examples::cantor();
    let arc = o("arc((0), (2))");
    let s = w("00");
    let once = limits::dehn_twist(&a, &arc, &s, 1).unwrap();
    assert_eq!(limits::dehn_twist(&a, &once, &s, -1).unwrap(), arc);
    let twice = limits::dehn_twist(&a, &once, &s, 1).unwrap();
    assert_eq!(twice.twists().unwrap()[&s], 2);
    let site = Site::Interval(s.clone());
    assert_eq!(lg::crosses_circle(&a, &twice, &site).unwrap(), lg::crosses_circle(&a, &arc, &site).unwrap() + 4);
    assert_eq!(limits::viterbo_restrict(&a, &twice, 1).unwrap(), limits::viterbo_restrict(&a, &arc, 1).unwrap());
    assert!(matches!(limits::dehn_twist(&a, &arc, &w(""), 1), Err(LimitError::NoCrossing { .. })));
    assert!(limits::dehn_twist(&a, &o("L[]"), &s, 1).is_err());
}

#[test]
fn cantor_tower() {
    let a = examples::cantor();
    let fam = limits::twist_tower(&a, &e("(0)"), &e("(2)"), 5).unwrap();
    let support: Vec<String> = fam.support.iter().map(|s| s.word()).collect();
    assert_eq!(support, vec!["0", "00", "000", "0000", "00000"]);
    assert_eq!(fam.levels.len(), 6);
    assert_eq!(fam.presentation, Presentation::Periodic { end: e("(0)"), from: 1 });
    assert!(limits::compatibility_checks(&a, &fam).unwrap().iter().all(|c| c.holds));
    assert!(!limits::has_sectorial_preimage(&fam));
    let zero = limits::twist_tower(&a, &e("(0)"), &e("(2)"), 0).unwrap();
    assert_eq!(zero.levels, vec![o("arc((0), (2))")]);
}

#[test]
fn genus_cylinder_tower_uses_both_classes() {
    let a = examples::genus_cylinder();
    let fam = limits::twist_tower(&a, &e("(0)"), &e("(0)"), 4).unwrap();
    assert_eq!(fam.levels[0], o("arc((0)+, (0)-)"));
    assert_eq!(fam.support.len(), 4);
    let report = limits::tower_report(&a, &fam).unwrap();
    assert!(report.compatible && !report.sectorial_preimage);
    assert!(limits::twist_tower(&examples::flute(), &e("(2)"), &e("(2)"), 2).is_err());
}

#[test]
fn finite_type_has_no_tower() {
    for a in [examples::plain_cylinder(), examples::pants_with_handle()] {
        for p in infsurf::ideal_boundary::eventually_periodic_ends(&a, 3) {
            assert!(matches!(limits::twist_tower(&a, &p, &p, 3), Err(LimitError::CylindricalEnd(_))));
        }
    }
}

#[test]
fn finite_support_families() {
    let a = examples::flute();
    let mut obj = o("arc(0(0), 2(2))");
    assert!(limits::has_sectorial_preimage(&limits::family_from_object(&obj).unwrap()));
    for k in 1..=7 {
        obj = limits::dehn_twist(&a, &obj, &w(&"2".repeat(k)), 1).unwrap();
    }
    let fam = limits::family_from_object(&obj).unwrap();
    assert_eq!(fam.support.len(), 7);
    assert!(limits::has_sectorial_preimage(&fam));
    assert!(limits::tower_report(&a, &fam).unwrap().compatible);
}

fn corpus_objects() -> Vec<(String, infsurf::EndAutomaton, GeneratorObject)> {
    let mut out = Vec::new();
    for name in common::CORPUS {
        let a = blueprint::normalize(&common::builtin(name));
        if let Ok(g) = lg::generator_set(&a, 3) {
            out.extend(g.into_iter().map(|x| (name.to_string(), a.clone(), x)));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn restriction_composes(idx in any::<prop::sample::Index>(), i in 0usize..=8, j in 0usize..=8, k in 0usize..=8) {
        let objs = corpus_objects();
        let (_, a, x) = &objs[idx.index(objs.len())];
        let mut l = [i, j, k];
        l.sort();
        let [i, j, k] = l;
        let tk = limits::viterbo_restrict(a, x, k).unwrap();
        let tj = limits::restrict_truncated(a, &tk, j).unwrap();
        prop_assert_eq!(limits::restrict_truncated(a, &tj, i).unwrap(), limits::restrict_truncated(a, &tk, i).unwrap());
        prop_assert_eq!(tj, limits::viterbo_restrict(a, x, j).unwrap());
    }
}

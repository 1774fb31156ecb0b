mod common;

use infsurf::dsl::{self, BlueprintDoc, DslError, SemanticKind};
use proptest::prelude::*;

#[test]
fn corpus_files_match_builtins() {
    for name in common::CORPUS {
        let (doc, a) = dsl::load(&common::corpus_text(name)).unwrap();
        assert_eq!(doc.name, name);
        assert_eq!(BlueprintDoc::from_automaton(name, &a), BlueprintDoc::from_automaton(name, &common::builtin(name)), "{name}");
    }
}

#[test]
fn printing_round_trips() {
    for name in common::CORPUS {
        let doc = dsl::parse(&common::corpus_text(name)).unwrap();
        let printed = dsl::print(&doc);
        let again = dsl::parse(&printed).unwrap();
        assert_eq!(again, doc, "{name}");
        assert_eq!(dsl::print(&again), printed);
    }
}

#[test]
fn layout_and_comments_are_ignored() {
    let a = dsl::parse("blueprint c{base_genus 0;state s{chi 0;on 0->s;on 2->s;}start s;}").unwrap();
    let b = dsl::parse("// one\nblueprint c {\n\n  base_genus 0; // two\n  state s {\n    chi 0;\n    on 2 -> s;\n    on 0 -> s;\n  }\n  start s;\n}\n").unwrap();
    assert_eq!(a, b);
}

fn semantic_kind(src: &str) -> SemanticKind {
    match dsl::load(src).unwrap_err() {
        DslError::Semantic { kind, .. } => kind,
        other => panic!("expected a semantic error, got {other:?}"),
    }
}

#[test]
fn semantic_errors() {
    assert_eq!(
        semantic_kind("blueprint x { base_genus 0; state s { chi 1; on 0 -> s; } start s; }"),
        SemanticKind::NonOrientable { state: "s".into() }
    );
    assert_eq!(
        semantic_kind("blueprint x { base_genus 0; state s { chi 0; on 0 -> t; } start s; }"),
        SemanticKind::UndeclaredState { state: "t".into() }
    );
    assert_eq!(
        semantic_kind("blueprint x { base_genus 0; state s { chi 0; on 0 -> s; } state s { chi 0; on 0 -> s; } start s; }"),
        SemanticKind::DuplicateState { state: "s".into() }
    );
    assert_eq!(
        semantic_kind("blueprint x { base_genus 0; state s { chi 0; on 0 -> s; on 0 -> s; } start s; }"),
        SemanticKind::DuplicateTransition { state: "s".into(), digit: 0 }
    );
    assert!(matches!(
        dsl::parse("blueprint x { base_genus 0; state s { chi 0; } start s; }"),
        Err(DslError::Parse { .. })
    ));
}

#[test]
fn syntax_errors_are_positioned() {
    let e = dsl::parse("blueprint x {\n  base_genus 0;\n  state s { chi 3; on 0 -> s; }\n  start s;\n}").unwrap_err();
    assert_eq!(e.position(), (3, 17));
    assert!(matches!(e, DslError::Parse { .. }));
    let e = dsl::parse("blueprint x {\n  base_genus 0;\n  state s { chi 0; on 1 -> s; }\n  start s;\n}").unwrap_err();
    assert_eq!(e.position().0, 3);
    let e = dsl::parse("blueprint x { base_genus 0; state s { chi 0; on 0 -> s; } start s;").unwrap_err();
    assert!(e.to_string().contains("expected"));
}

#[test]
fn invalid_utf8_is_positioned() {
    let mut bytes = b"blueprint x {\n  base_ge".to_vec();
    bytes.push(0xff);
    let e = dsl::parse_bytes(&bytes).unwrap_err();
    assert_eq!(e.position(), (2, 10));
}

#[test]
fn random_automata_round_trip_through_text() {
    for seed in 0..200 {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let a = common::random_automaton(&mut rng, 6);
        let doc = BlueprintDoc::from_automaton("r", &a);
        let (back, b) = dsl::load(&dsl::print(&doc)).unwrap();
        assert_eq!(back, doc);
        assert_eq!(BlueprintDoc::from_automaton("r", &b), doc);
    }
}

const ALPHABET: &[&str] = &[
    "blueprint", "state", "chi", "on", "start", "base_genus", "->", "{", "}", ";", "0", "1", "2", "s", "t", " ", "\n", "//", "é",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parser_never_panics_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..1024)) {
        let _ = dsl::parse_bytes(&bytes);
    }

    #[test]
    fn parser_never_panics_on_tokens(toks in prop::collection::vec(prop::sample::select(ALPHABET), 0..200)) {
        let src = toks.join(" ");
        if let Ok(doc) = dsl::parse(&src) {
            prop_assert_eq!(dsl::parse(&dsl::print(&doc)).unwrap(), doc);
        }
    }
}

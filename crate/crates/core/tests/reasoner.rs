use std::collections::BTreeSet;

use cnlwiki::lexicon::{Lexicon, Word, WordCategory};
use cnlwiki::logic::{Axiom, AxiomKind, ClassExpr, Drs};
use cnlwiki::reasoner::{KnowledgeBase, Position, ReasonerError};
use proptest::prelude::*;

fn sub_class(a: &str, b: &str) -> Axiom {
    Axiom::new(AxiomKind::SubClassOf(ClassExpr::concept(a), ClassExpr::concept(b)))
}

fn member(c: &str, i: &str) -> Axiom {
    Axiom::new(AxiomKind::ClassAssertion(ClassExpr::concept(c), i.into()))
}

fn fact(r: &str, a: &str, b: &str) -> Axiom {
    Axiom::new(AxiomKind::RoleAssertion(r.into(), a.into(), b.into()))
}

fn range(r: &str, c: &str) -> Axiom {
    Axiom::new(AxiomKind::RoleRange(r.into(), ClassExpr::concept(c)))
}

fn domain(r: &str, c: &str) -> Axiom {
    Axiom::new(AxiomKind::RoleDomain(r.into(), ClassExpr::concept(c)))
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn words(category: WordCategory, surfaces: &[&str]) -> Vec<Word> {
    let lex = Lexicon::from_entries(surfaces.iter().map(|s| (category, *s))).unwrap();
    surfaces.iter().map(|s| lex.lookup(s).unwrap().clone()).collect()
}

fn surfaces(ranked: &[Word]) -> Vec<&str> {
    ranked.iter().map(|w| w.surface.as_str()).collect()
}

#[test]
fn hierarchy_is_transitive() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(sub_class("canal", "waterbody"));
    kb.assert_axiom(sub_class("waterbody", "area"));
    assert_eq!(kb.ancestors("canal"), set(&["area", "canal", "waterbody"]));
    assert_eq!(kb.ancestors("area"), set(&["area"]));
}

#[test]
fn memberships_propagate_upwards() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(member("city", "Zurich"));
    kb.assert_axiom(sub_class("city", "place"));
    assert!(kb.instances_of("place").contains("Zurich"));
    assert_eq!(kb.types_of("Zurich"), set(&["city", "place"]));
}

#[test]
fn ranges_and_domains_fire_on_role_facts() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(range("flows-through", "city"));
    kb.assert_axiom(domain("flows-through", "river"));
    kb.assert_axiom(fact("flows-through", "Limmat", "Zurich"));
    assert_eq!(kb.instances_of("city"), set(&["Zurich"]));
    assert_eq!(kb.instances_of("river"), set(&["Limmat"]));
}

#[test]
fn subroles_carry_facts_and_ranges() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(Axiom::new(AxiomKind::SubRoleOf("protects".into(), "shelters".into())));
    kb.assert_axiom(range("shelters", "animal"));
    kb.assert_axiom(fact("protects", "Ann", "Rex"));
    assert!(kb.role_facts("shelters").contains(&("Ann".into(), "Rex".into())));
    assert_eq!(kb.instances_of("animal"), set(&["Rex"]));
    assert_eq!(kb.expected_classes("protects", Position::Object), set(&["animal"]));
}

#[test]
fn conjunctive_ranges_give_every_conjunct() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(Axiom::new(AxiomKind::RoleRange(
        "flows-through".into(),
        ClassExpr::and(ClassExpr::concept("city"), ClassExpr::concept("place")),
    )));
    kb.assert_axiom(fact("flows-through", "Limmat", "Zurich"));
    assert_eq!(kb.types_of("Zurich"), set(&["city", "place"]));
}

#[test]
fn retraction_restores_the_smaller_fixpoint() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(sub_class("canal", "waterbody"));
    kb.retract_axiom(&sub_class("canal", "waterbody")).unwrap();
    assert!(kb.axioms().is_empty());
    assert_eq!(kb.ancestors("canal"), BTreeSet::new());
    assert_eq!(kb.dump(), KnowledgeBase::new().dump());

    kb.assert_axiom(sub_class("canal", "waterbody"));
    kb.assert_axiom(sub_class("canal", "waterbody"));
    assert_eq!(kb.axioms().len(), 1);
    kb.retract_axiom(&sub_class("canal", "waterbody")).unwrap();
    assert!(!kb.contains(&sub_class("canal", "waterbody")));

    assert!(matches!(
        kb.retract_axiom(&sub_class("city", "place")),
        Err(ReasonerError::UnknownAxiom(_))
    ));
}

#[test]
fn red_and_negative_axioms_are_inert() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(Axiom::new(AxiomKind::NotOwl(Drs::default())));
    assert!(kb.axioms().is_empty());
    kb.assert_axiom(Axiom::new(AxiomKind::NegativeClassAssertion("woman".into(), "Bob-Dylan".into())));
    kb.assert_axiom(Axiom::new(AxiomKind::DisjointClasses("city".into(), "mountain".into())));
    assert_eq!(kb.axioms().len(), 2);
    assert!(kb.types_of("Bob-Dylan").is_empty());
    assert_eq!(kb.ancestors("city"), BTreeSet::new());
}

#[test]
fn unknown_names_have_no_instances() {
    let kb = KnowledgeBase::new();
    assert!(kb.instances_of("Thing").is_empty());
    assert!(kb.instances_of("nothing-like-this").is_empty());
}

#[test]
fn individuals_in_the_range_come_first() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(range("flows-through", "city"));
    kb.assert_axiom(member("city", "Zurich"));
    let candidates = words(WordCategory::ProperName, &["Aare-river", "Zurich"]);
    let ranked = kb.rank_individuals("flows-through", Position::Object, &candidates);
    assert_eq!(surfaces(&ranked), ["Zurich", "Aare-river"]);
}

#[test]
fn ranking_without_axioms_is_alphabetical() {
    let kb = KnowledgeBase::new();
    let candidates = words(WordCategory::ProperName, &["Berlin", "aarau", "Chur"]);
    let ranked = kb.rank_individuals("flows-through", Position::Object, &candidates);
    assert_eq!(surfaces(&ranked), ["aarau", "Berlin", "Chur"]);
}

#[test]
fn ranking_within_a_single_partition_is_alphabetical() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(domain("flows-through", "river"));
    kb.assert_axiom(member("river", "Rhine"));
    kb.assert_axiom(member("river", "Aare"));
    let candidates = words(WordCategory::ProperName, &["Rhine", "Aare"]);
    let ranked = kb.rank_individuals("flows-through", Position::Subject, &candidates);
    assert_eq!(surfaces(&ranked), ["Aare", "Rhine"]);
}

#[test]
fn subsumed_concepts_come_first() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(range("flows-through", "city"));
    kb.assert_axiom(sub_class("capital", "city"));
    let candidates = words(WordCategory::Noun, &["mountain", "capital", "city"]);
    let ranked = kb.rank_concepts("flows-through", Position::Object, &candidates);
    assert_eq!(surfaces(&ranked), ["capital", "city", "mountain"]);
    let ranked = kb.rank_concepts("unknown-role", Position::Object, &candidates);
    assert_eq!(surfaces(&ranked), ["capital", "city", "mountain"]);
}

#[test]
fn any_declared_range_counts() {
    let mut kb = KnowledgeBase::new();
    kb.assert_axiom(range("flows-through", "city"));
    kb.assert_axiom(range("flows-through", "lake"));
    kb.assert_axiom(member("lake", "Zurichsee"));
    kb.assert_axiom(member("city", "Zurich"));
    let candidates = words(WordCategory::ProperName, &["Matterhorn", "Zurichsee", "Zurich"]);
    let ranked = kb.rank_individuals("flows-through", Position::Object, &candidates);
    assert_eq!(surfaces(&ranked), ["Zurich", "Zurichsee", "Matterhorn"]);
}

#[derive(Debug, Clone)]
enum Op {
    Assert(Axiom),
    Retract(usize),
}

fn name(prefix: &'static str, n: usize) -> impl Strategy<Value = String> {
    (0..n).prop_map(move |k| format!("{prefix}{k}"))
}

fn axiom() -> impl Strategy<Value = Axiom> {
    let c = || name("c", 6);
    let r = || name("r", 3);
    let i = || name("i", 5);
    prop_oneof![
        3 => (c(), c()).prop_map(|(a, b)| sub_class(&a, &b)),
        2 => (c(), i()).prop_map(|(a, b)| member(&a, &b)),
        2 => (r(), i(), i()).prop_map(|(r, a, b)| fact(&r, &a, &b)),
        1 => (r(), r()).prop_map(|(r, s)| Axiom::new(AxiomKind::SubRoleOf(r, s))),
        1 => (r(), c()).prop_map(|(r, c)| range(&r, &c)),
        1 => (r(), c()).prop_map(|(r, c)| domain(&r, &c)),
        1 => (c(), r(), c()).prop_map(|(a, r, b)| Axiom::new(AxiomKind::SubClassOf(
            ClassExpr::some(&r, ClassExpr::concept(&a)),
            ClassExpr::concept(&b),
        ))),
    ]
}

fn ops() -> impl Strategy<Value = Vec<Op>> {
    prop::collection::vec(
        prop_oneof![4 => axiom().prop_map(Op::Assert), 1 => (0usize..32).prop_map(Op::Retract)],
        0..40,
    )
}

proptest! {
    #[test]
    fn incremental_state_matches_a_rebuild(ops in ops()) {
        let mut kb = KnowledgeBase::new();
        for op in ops {
            match op {
                Op::Assert(a) => kb.assert_axiom(a),
                Op::Retract(k) => {
                    if let Some(a) = kb.axioms().get(k % kb.axioms().len().max(1)).cloned() {
                        kb.retract_axiom(&a).unwrap();
                    }
                }
            }
            let rebuilt = KnowledgeBase::from_axioms(kb.axioms());
            prop_assert_eq!(kb.dump(), rebuilt.dump());
        }
    }

    #[test]
    fn assertion_order_does_not_matter(axioms in prop::collection::vec(axiom(), 0..30)) {
        let forward = KnowledgeBase::from_axioms(&axioms);
        let backward = KnowledgeBase::from_axioms(axioms.iter().rev());
        prop_assert_eq!(forward.dump(), backward.dump());
        let dump = forward.dump();
        let derived = |label: &str| -> usize {
            dump.lines()
                .filter(|l| l.starts_with(label))
                .map(|l| l.split_once(':').unwrap().1.split_whitespace().count())
                .sum()
        };
        let (concepts, roles, individuals) = (6, 3, 5);
        prop_assert!(derived("ancestors ") <= concepts * concepts);
        prop_assert!(derived("role-ancestors ") <= roles * roles);
        prop_assert!(derived("types ") <= individuals * concepts);
        prop_assert!(dump.lines().filter(|l| l.starts_with("fact ")).count() <= roles * individuals * individuals);
    }

    #[test]
    fn ranking_permutes_its_candidates(axioms in prop::collection::vec(axiom(), 0..20), picks in prop::collection::vec(0usize..5, 0..5)) {
        let kb = KnowledgeBase::from_axioms(&axioms);
        let mut chosen: Vec<String> = picks.iter().map(|k| format!("i{k}")).collect();
        chosen.sort();
        chosen.dedup();
        let refs: Vec<&str> = chosen.iter().map(String::as_str).collect();
        let candidates = words(WordCategory::ProperName, &refs);
        for position in [Position::Subject, Position::Object] {
            let ranked = kb.rank_individuals("r0", position, &candidates);
            let mut sorted = ranked.clone();
            sorted.sort();
            let mut expected = candidates.clone();
            expected.sort();
            prop_assert_eq!(sorted, expected);
        }
    }

    #[test]
    fn unrelated_axioms_keep_the_order(axioms in prop::collection::vec(axiom(), 0..20)) {
        let candidates = words(WordCategory::ProperName, &["i0", "i1", "i2", "i3", "i4"]);
        let kb = KnowledgeBase::from_axioms(&axioms);
        let before = kb.rank_individuals("r0", Position::Object, &candidates);
        let mut more = axioms.clone();
        more.push(sub_class("unrelated-a", "unrelated-b"));
        more.push(member("unrelated-a", "elsewhere"));
        let after = KnowledgeBase::from_axioms(&more).rank_individuals("r0", Position::Object, &candidates);
        prop_assert_eq!(before, after);
    }
}

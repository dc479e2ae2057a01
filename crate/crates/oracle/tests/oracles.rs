use cnlwiki::grammar::{tokens_from_surfaces, Grammar, Token};
use cnlwiki::lexicon::{Lexicon, WordCategory as C};
use cnlwiki::logic::{Axiom, AxiomKind, ClassExpr};
use cnlwiki_oracle::audit::audit_prediction;
use cnlwiki_oracle::language::Language;
use cnlwiki_oracle::owl::{parse_statement, Class, Statement};
use cnlwiki_oracle::saturation::Saturation;
use cnlwiki_oracle::semantics::{Interpretation, Signature};

fn lexicon() -> Lexicon {
    Lexicon::from_entries([
        (C::ProperName, "Ann"),
        (C::Noun, "man"),
        (C::Noun, "apple"),
        (C::TransitiveVerb, "likes"),
        (C::OfConstruct, "owner"),
    ])
    .unwrap()
}

fn tokens(text: &str, lexicon: &Lexicon) -> Vec<Token> {
    let surfaces: Vec<&str> = text.split_whitespace().collect();
    tokens_from_surfaces(&surfaces, lexicon).unwrap()
}

#[test]
fn recognizer_accepts_and_rejects() {
    let lex = lexicon();
    let language = Language::new(&lex);
    for good in [
        "Ann is a man .",
        "every man likes an apple .",
        "it is false that Ann is an owner of Ann .",
        "if something X likes something Y then Y is an apple .",
        "something X likes an apple Y and is not an owner of Y .",
        "if a man X likes Ann then X is an owner of Ann .",
        "Ann likes something X or is a man .",
        "no man who likes everything is an apple .",
    ] {
        assert!(language.accepts(&tokens(good, &lex)), "{good}");
    }
    for bad in [
        "Ann is an man .",
        "every man likes X .",
        "if something X likes something X then X is a man .",
        "Ann likes something X or X is a man .",
        "Ann does not likes something X and likes X .",
        "Ann likes something X or likes an apple and likes X .",
        "every man .",
        "a man X likes Ann .",
        "Ann is a man",
    ] {
        assert!(!language.accepts(&tokens(bad, &lex)), "{bad}");
    }
}

#[test]
fn enumeration_agrees_with_the_recognizer() {
    let lex = Lexicon::from_entries([(C::ProperName, "Ann"), (C::Noun, "man"), (C::TransitiveVerb, "likes")]).unwrap();
    let language = Language::new(&lex);
    let sentences = language.sentences(6);
    assert!(sentences.iter().all(|s| language.accepts(s)));
    assert!(sentences.iter().any(|s| s.len() == 4));
    let start = language.continuations(&language.start());
    let surfaces: std::collections::BTreeSet<&str> = start.iter().map(Token::surface).collect();
    let firsts: std::collections::BTreeSet<&str> = sentences.iter().map(|s| s[0].surface()).collect();
    assert!(surfaces.is_superset(&firsts));
    assert!(surfaces.contains("if") && !firsts.contains("if"));
    assert!(surfaces.is_superset(&["Ann", "a", "every", "no", "something", "everything"].into()));
    assert!(!surfaces.contains("an"));
}

#[test]
fn audit_is_clean_for_a_small_lexicon() {
    let lex = lexicon();
    let audit = audit_prediction(&Grammar::standard(), &lex, 10, 9);
    assert!(audit.is_clean(), "{:?} {:?}", audit.dead_entries, audit.missing);
    assert_eq!(audit.sentences, Language::new(&lex).sentences(9).len() as u128);
    assert!(audit.states > 100);
    assert!(audit.prefixes > 10_000);
}

#[test]
fn audit_handles_lexicons_without_sentences() {
    let lex = Lexicon::from_entries([(C::ProperName, "Ann")]).unwrap();
    let audit = audit_prediction(&Grammar::standard(), &lex, 10, 12);
    assert!(audit.is_clean());
    assert_eq!(audit.sentences, 0);
}

#[test]
fn enumeration_covers_each_interpretation_class_once() {
    let signature = Signature {
        constants: vec!["Ann".into()],
        concepts: vec!["man".into()],
        roles: vec!["likes".into()],
    };
    assert_eq!(signature.count(2), 2 * 4 * 16);
    for size in 1..=3 {
        let mut covered = 0;
        let mut classes = 0;
        signature.for_each_class(size, |_, orbit| {
            covered += orbit;
            classes += 1;
        });
        assert_eq!(covered, signature.count(size));
        assert!(classes < signature.count(size) || size == 1);
    }
}

fn model<'a>(signature: &'a Signature, size: usize, ann: usize, man: u64, likes: u64) -> Interpretation<'a> {
    Interpretation {
        signature,
        size,
        constants: vec![ann],
        concepts: vec![man],
        roles: vec![likes],
    }
}

#[test]
fn reference_truth_values() {
    let lex = Lexicon::from_entries([(C::ProperName, "Ann"), (C::Noun, "man"), (C::TransitiveVerb, "likes")]).unwrap();
    let grammar = Grammar::standard();
    let signature = Signature {
        constants: vec!["Ann".into()],
        concepts: vec!["man".into()],
        roles: vec!["likes".into()],
    };
    // Two individuals: Ann = 0 is a man, 1 is not. Ann likes 1; 1 likes itself.
    let m = model(&signature, 2, 0, 0b01, (1 << 1) | (1 << 3));
    let truth = |text: &str| m.satisfies(&grammar.parse(&tokens(text, &lex), &lex).unwrap());
    assert!(truth("Ann is a man ."));
    assert!(!truth("every man likes Ann ."));
    assert!(truth("no man likes Ann ."));
    assert!(truth("something likes something ."));
    assert!(!truth("something likes everything ."));
    assert!(!truth("everything likes a man ."));
    assert!(!truth("if something X is a man then X likes something Y and does not likes Y ."));
    assert!(truth("if something X is a man and X likes something Y then Y likes Y ."));
    assert!(!truth("if something X likes something Y then Y likes X ."));
    assert!(truth("if something X likes something Y then Y is not a man ."));
    assert!(truth("every man who likes something X likes X ."));
    assert!(truth("it is false that Ann likes Ann ."));
    assert!(truth("Ann is a man or likes Ann ."));
    assert!(!truth("Ann likes Ann or is a man and does not likes something ."));
}

#[test]
fn axiom_notation_is_read_and_sort_checked() {
    let signature = Signature {
        constants: vec!["Zurich".into()],
        concepts: vec!["person".into(), "author".into()],
        roles: vec!["writes".into(), "part-of".into()],
    };
    let parsed = parse_statement("SubClassOf(and(person, some(writes, Thing)), author)", &signature).unwrap();
    assert_eq!(
        parsed,
        Statement::SubClassOf(
            Class::And(
                Box::new(Class::Named("person".into())),
                Box::new(Class::Some("writes".into(), Box::new(Class::Thing)))
            ),
            Class::Named("author".into())
        )
    );
    assert!(parse_statement("ClassAssertion(someValue(part-of, Zurich), Zurich)", &signature).is_ok());
    assert!(parse_statement("ClassAssertion(person, writes)", &signature).is_err());
    assert!(parse_statement("SubRoleOf(writes, person)", &signature).is_err());
    assert!(parse_statement("DisjointClasses(person, not(author))", &signature).is_err());
    assert!(parse_statement("SubClassOf(person)", &signature).is_err());
    assert!(parse_statement("SubClassOf(person, author) x", &signature).is_err());
}

#[test]
fn axioms_evaluate_in_models() {
    let signature = Signature {
        constants: vec!["Ann".into()],
        concepts: vec!["man".into()],
        roles: vec!["likes".into()],
    };
    let m = model(&signature, 2, 0, 0b01, (1 << 1) | (1 << 3));
    let holds = |text: &str| m.holds(&parse_statement(text, &signature).unwrap());
    assert!(holds("ClassAssertion(man, Ann)"));
    assert!(holds("RoleRange(likes, not(man))"));
    assert!(!holds("RoleDomain(likes, man)"));
    assert!(holds("SubClassOf(man, some(likes, Thing))"));
    assert!(holds("AnonymousAssertion(and(not(man), some(likes, not(man))))"));
    assert!(!holds("ClassAssertion(someValue(likes, Ann), Ann)"));
    assert!(holds("NegativeRoleAssertion(likes, Ann, Ann)"));
}

fn axiom(kind: AxiomKind) -> Axiom {
    Axiom::new(kind)
}

#[test]
fn saturation_examples() {
    let axioms = [
        axiom(AxiomKind::SubClassOf(ClassExpr::concept("canal"), ClassExpr::concept("waterbody"))),
        axiom(AxiomKind::SubClassOf(ClassExpr::concept("waterbody"), ClassExpr::concept("area"))),
        axiom(AxiomKind::RoleRange("flows-through".into(), ClassExpr::concept("city"))),
        axiom(AxiomKind::SubRoleOf("flows-through".into(), "touches".into())),
        axiom(AxiomKind::RoleDomain("touches".into(), ClassExpr::concept("area"))),
        axiom(AxiomKind::RoleAssertion("flows-through".into(), "Limmat".into(), "Zurich".into())),
        axiom(AxiomKind::DisjointClasses("city".into(), "canal".into())),
    ];
    let s = Saturation::of(&axioms);
    assert_eq!(
        s.dump(),
        "\
ancestors area: area
ancestors canal: area canal waterbody
ancestors city: city
ancestors waterbody: area waterbody
role-ancestors flows-through: flows-through touches
role-ancestors touches: touches
types Limmat: area
types Zurich: city
domain touches: area
range flows-through: city
fact flows-through Limmat Zurich
fact touches Limmat Zurich
"
    );
}

#[test]
fn saturation_splits_assertions_all_or_nothing() {
    let mixed = ClassExpr::and(ClassExpr::concept("city"), ClassExpr::some("near", ClassExpr::Thing));
    let plain = ClassExpr::and(ClassExpr::concept("city"), ClassExpr::SomeValue("near".into(), "Bern".into()));
    let s = Saturation::of(&[
        axiom(AxiomKind::ClassAssertion(mixed, "Zurich".into())),
        axiom(AxiomKind::ClassAssertion(plain, "Basel".into())),
    ]);
    assert_eq!(
        s.dump(),
        "ancestors city: city\nrole-ancestors near: near\ntypes Basel: city\ntypes Bern:\nfact near Basel Bern\n"
    );
}

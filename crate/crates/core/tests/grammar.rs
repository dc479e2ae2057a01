use cnlwiki::grammar::{
    render, tokens_from_surfaces, verbalize, ClauseSubject, Conditional, FunctionWord, Grammar, Object, ParseError,
    PredList, Predicate, SentenceAst, Simple, Subject, ThenClause, ThenSubject, Token, Var,
};
use cnlwiki::lexicon::{Lexicon, WordCategory};
use cnlwiki::logic::{pattern_of, SentencePattern};
use proptest::prelude::*;
use std::sync::LazyLock;

fn geography() -> Lexicon {
    use WordCategory::*;
    Lexicon::from_entries([
        (ProperName, "Zurich"),
        (ProperName, "Limmat"),
        (ProperName, "Winston-Churchill"),
        (ProperName, "Denmark"),
        (Noun, "canal"),
        (Noun, "waterbody"),
        (Noun, "city"),
        (Noun, "author"),
        (TransitiveVerb, "protects"),
        (TransitiveVerb, "shelters"),
        (TransitiveVerb, "flows-through"),
        (OfConstruct, "prime-minister"),
    ])
    .unwrap()
}

fn surfaces(text: &str) -> Vec<&str> {
    text.split_whitespace().collect()
}

fn phrases(prediction: &cnlwiki::grammar::Prediction) -> Vec<String> {
    prediction.function_menu.iter().map(|p| p.to_string()).collect()
}

#[test]
fn parses_a_concept_inclusion() {
    let lex = geography();
    let (_, ast) = Grammar::standard().parse_text("every canal is a waterbody .", &lex).unwrap();
    let canal = lex.lookup("canal").unwrap().clone();
    let waterbody = lex.lookup("waterbody").unwrap().clone();
    assert_eq!(
        ast,
        SentenceAst::Simple(Simple {
            subject: Subject::Every(canal, None),
            predicates: PredList::single(Predicate::IsA(waterbody)),
        })
    );
}

#[test]
fn parses_a_role_inclusion_conditional() {
    let lex = geography();
    let (_, ast) = Grammar::standard()
        .parse_text("if something X protects something Y then X shelters Y .", &lex)
        .unwrap();
    let protects = lex.lookup("protects").unwrap().clone();
    let shelters = lex.lookup("shelters").unwrap().clone();
    assert_eq!(
        ast,
        SentenceAst::Conditional(Conditional {
            conditions: vec![cnlwiki::grammar::Clause {
                subject: ClauseSubject::Something(Some(Var::X)),
                predicates: PredList::single(Predicate::Verb(protects, Object::Something(Some(Var::Y)))),
            }],
            consequent: ThenClause {
                subject: ThenSubject::VarRef(Var::X),
                predicates: PredList::single(Predicate::Verb(shelters, Object::VarRef(Var::Y))),
            },
        })
    );
}

#[test]
fn rejects_dangling_references_and_unknown_words() {
    let lex = geography();
    let grammar = Grammar::standard();
    let err = grammar.parse_text("Zurich protects Y .", &lex).unwrap_err();
    assert_eq!(err, ParseError::UnboundVariable { position: 2 });
    let err = grammar.parse_text("if something X protects Zurich then Y shelters Zurich .", &lex).unwrap_err();
    assert_eq!(err.code(), "UnboundVariable");
    let err = grammar.parse_text("Zurich is a Atlantis .", &lex).unwrap_err();
    assert_eq!(err, ParseError::Lexical { position: 3, token: "Atlantis".into() });
    let err = grammar.parse_text("canal every is .", &lex).unwrap_err();
    assert_eq!((err.code(), err.position()), ("SyntaxError", Some(0)));
}

#[test]
fn rejects_reintroduced_variables() {
    let lex = geography();
    let err = Grammar::standard()
        .parse_text("if something X protects something X then X shelters X .", &lex)
        .unwrap_err();
    assert_eq!(err.position(), Some(5));
}

#[test]
fn predicts_sentence_openings() {
    let lex = geography();
    let prediction = Grammar::standard().predict(&[], &lex).unwrap();
    let menu = phrases(&prediction);
    for opening in ["every", "no", "a", "something", "everything", "if", "it is false that"] {
        assert!(menu.contains(&opening.to_string()), "{opening} missing from {menu:?}");
    }
    assert!(!menu.contains(&"is".to_string()));
    let names: Vec<&str> = prediction.category_menus[&WordCategory::ProperName]
        .iter()
        .map(|w| w.surface.as_str())
        .collect();
    assert_eq!(names, ["Denmark", "Limmat", "Winston-Churchill", "Zurich"]);
    assert!(!prediction.category_menus.contains_key(&WordCategory::Noun));
    assert!(!prediction.can_finish);
    assert!(prediction.var_ref_menu.is_empty());
}

#[test]
fn predicts_objects_after_a_verb() {
    let lex = geography();
    let prefix = tokens_from_surfaces(&surfaces("Limmat flows-through"), &lex).unwrap();
    let prediction = Grammar::standard().predict(&prefix, &lex).unwrap();
    assert_eq!(prediction.category_menus[&WordCategory::ProperName].len(), 4);
    let menu = phrases(&prediction);
    for entry in ["a", "something", "everything"] {
        assert!(menu.contains(&entry.to_string()), "{entry} missing from {menu:?}");
    }
    assert!(!prediction.can_finish);
}

#[test]
fn complete_statements_can_finish() {
    let lex = geography();
    let prefix = tokens_from_surfaces(&surfaces("Zurich is a city"), &lex).unwrap();
    let prediction = Grammar::standard().predict(&prefix, &lex).unwrap();
    assert!(prediction.can_finish);
    assert!(prediction.offers(&Token::Period));
    let menu = phrases(&prediction);
    assert!(menu.contains(&"and".to_string()) && menu.contains(&"or".to_string()));
}

#[test]
fn offers_only_bound_references() {
    let lex = geography();
    let prefix = tokens_from_surfaces(&surfaces("if something X protects something Y then"), &lex).unwrap();
    let prediction = Grammar::standard().predict(&prefix, &lex).unwrap();
    assert_eq!(prediction.var_ref_menu, [Var::X, Var::Y]);
    assert!(prediction.var_intro_menu.is_empty());
}

#[test]
fn article_follows_the_noun() {
    let mut lex = geography();
    lex.add_word(WordCategory::Noun, "island").unwrap();
    let prefix = tokens_from_surfaces(&surfaces("Zurich is"), &lex).unwrap();
    let prediction = Grammar::standard().predict(&prefix, &lex).unwrap();
    let menu = phrases(&prediction);
    assert!(menu.contains(&"a".to_string()) && menu.contains(&"an".to_string()));
    let grammar = Grammar::standard();
    assert!(grammar.parse_text("Zurich is an island .", &lex).is_ok());
    assert!(grammar.parse_text("Zurich is a island .", &lex).is_err());
    assert!(grammar.parse_text("Zurich is an city .", &lex).is_err());
}

#[test]
fn dead_prefixes_are_reported() {
    let lex = geography();
    let prefix = tokens_from_surfaces(&["is"], &lex).unwrap();
    let err = Grammar::standard().predict(&prefix, &lex).unwrap_err();
    assert_eq!(err, ParseError::DeadPrefix { position: 0 });
}

#[test]
fn verbalizes_to_the_surface_form() {
    let lex = geography();
    let grammar = Grammar::standard();
    for text in [
        "Zurich is a city .",
        "it is false that Winston-Churchill is a prime-minister of Denmark .",
        "every city that protects something is a waterbody or is not a canal and shelters Limmat .",
        "no canal does not flows-through everything .",
    ] {
        let (tokens, ast) = grammar.parse_text(text, &lex).unwrap();
        assert_eq!(verbalize(&ast), tokens);
        assert_eq!(render(&tokens), text);
        assert_eq!(grammar.derivation_count(&tokens), 1, "{text}");
    }
}

#[test]
fn mixed_connectives_stay_flat() {
    let lex = geography();
    let (_, ast) = Grammar::standard()
        .parse_text("Zurich is a city or is a canal and is a waterbody .", &lex)
        .unwrap();
    let SentenceAst::Simple(simple) = ast else { panic!("not simple") };
    let connectives: Vec<_> = simple.predicates.rest.iter().map(|(c, _)| *c).collect();
    assert_eq!(connectives.len(), 2);
    assert_eq!(simple.predicates.predicates().count(), 3);
}

#[test]
fn restricted_grammars_accept_their_patterns_only() {
    let lex = geography();
    let assignments = Grammar::standard().restrict([SentencePattern::IndividualAssignment]).unwrap();
    assert!(assignments.parse_text("Zurich is a city .", &lex).is_ok());
    assert!(assignments.parse_text("every canal is a waterbody .", &lex).is_err());

    let hierarchy = Grammar::standard().restrict([SentencePattern::ConceptInclusion]).unwrap();
    let prediction = hierarchy.predict(&[], &lex).unwrap();
    assert_eq!(phrases(&prediction), ["every"]);
    assert!(prediction.category_menus.is_empty());
    let prefix = tokens_from_surfaces(&surfaces("every canal is a"), &lex).unwrap();
    let prediction = hierarchy.predict(&prefix, &lex).unwrap();
    assert!(prediction.function_menu.is_empty());
    assert_eq!(prediction.category_menus.keys().collect::<Vec<_>>(), [&WordCategory::Noun]);

    assert_eq!(
        Grammar::standard().restrict([]).unwrap_err(),
        ParseError::EmptyPatternSet
    );
}

#[test]
fn restricted_prediction_stays_inside_the_pattern() {
    let lex = geography();
    let ranges = Grammar::standard().restrict([SentencePattern::RangeRestriction]).unwrap();
    let prefix = tokens_from_surfaces(&surfaces("if something flows-through something Y then Y is a"), &lex).unwrap();
    let prediction = ranges.predict(&prefix, &lex).unwrap();
    assert!(prediction.function_menu.is_empty());
    assert!(prediction.category_menus.contains_key(&WordCategory::Noun));
    assert!(!prediction.category_menus.contains_key(&WordCategory::OfConstruct));
    let prefix = tokens_from_surfaces(&surfaces("if something flows-through something Y then"), &lex).unwrap();
    let prediction = ranges.predict(&prefix, &lex).unwrap();
    assert_eq!(prediction.var_ref_menu, [Var::Y]);
}

/// Builds a sentence by repeatedly taking a menu entry chosen by `choices`,
/// finishing as soon as `stop` says so and the prefix allows it.
fn walk(grammar: &Grammar, lex: &Lexicon, choices: &[usize], stop: usize) -> Vec<Token> {
    let mut prefix = Vec::new();
    for (step, &choice) in choices.iter().enumerate() {
        let prediction = grammar.predict(&prefix, lex).expect("menus only lead to live prefixes");
        let entries: Vec<Vec<Token>> = prediction
            .entries()
            .into_iter()
            .filter(|e| e != &[Token::Period])
            .collect();
        if prediction.can_finish && (step >= stop || entries.is_empty()) {
            break;
        }
        prefix.extend(entries[choice % entries.len()].iter().cloned());
    }
    let prediction = grammar.predict(&prefix, lex).unwrap();
    if !prediction.can_finish {
        return Vec::new();
    }
    prefix.push(Token::Period);
    prefix
}

static RESTRICTED: LazyLock<Vec<Grammar>> = LazyLock::new(|| {
    SentencePattern::ALL
        .iter()
        .map(|&p| Grammar::standard().restrict([p]).unwrap())
        .collect()
});

proptest! {
    #[test]
    fn random_menu_walks_yield_sentences(choices in prop::collection::vec(0usize..64, 1..24), stop in 2usize..16) {
        let lex = geography();
        let grammar = Grammar::standard();
        let tokens = walk(&grammar, &lex, &choices, stop);
        prop_assume!(!tokens.is_empty());
        let ast = grammar.parse(&tokens, &lex).unwrap();
        prop_assert_eq!(&verbalize(&ast), &tokens);
        prop_assert_eq!(grammar.derivation_count(&tokens), 1);
        for cut in 0..tokens.len() {
            let prediction = grammar.predict(&tokens[..cut], &lex).unwrap();
            prop_assert!(prediction.offers(&tokens[cut]), "{} not offered after {}", tokens[cut].surface(), render(&tokens[..cut]));
        }
    }

    #[test]
    fn restricted_walks_keep_their_pattern(choices in prop::collection::vec(0usize..64, 1..24), which in 0usize..10) {
        let lex = geography();
        let pattern = SentencePattern::ALL[which];
        let grammar = &RESTRICTED[which];
        let tokens = walk(grammar, &lex, &choices, 0);
        prop_assume!(!tokens.is_empty());
        let ast = Grammar::standard().parse(&tokens, &lex).unwrap();
        prop_assert_eq!(pattern_of(&ast), pattern);
        prop_assert!(grammar.parse(&tokens, &lex).is_ok());
    }
}

#[test]
fn function_words_are_not_words() {
    let lex = geography();
    let tokens = tokens_from_surfaces(&surfaces("it is false that"), &lex).unwrap();
    assert_eq!(
        tokens,
        [FunctionWord::It, FunctionWord::Is, FunctionWord::False, FunctionWord::That].map(Token::Function)
    );
}

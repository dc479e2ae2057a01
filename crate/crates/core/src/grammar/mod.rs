//! The controlled-English sentence grammar: parsing, verbalization and
//! next-token prediction.
//!
//! ```
//! use cnlwiki::grammar::{tokenize, Grammar};
//! use cnlwiki::lexicon::{Lexicon, WordCategory};
//!
//! let lexicon = Lexicon::from_entries([
//!     (WordCategory::ProperName, "Zurich"),
//!     (WordCategory::Noun, "city"),
//! ])
//! .unwrap();
//! let grammar = Grammar::standard();
//! let prefix = tokenize("Zurich is a city", &lexicon).unwrap();
//! assert!(grammar.predict(&prefix, &lexicon).unwrap().can_finish);
//! ```

mod ast;
mod automaton;
mod parser;
mod restriction;
mod token;
mod verbalize;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::lexicon::{ClassProfile, Lexicon, Word, WordCategory};
use crate::logic::SentencePattern;

pub use ast::*;
pub use automaton::Symbol;
pub use restriction::PatternSet;
pub use token::{render, resolve_token, tokenize, tokens_from_surfaces, FunctionWord, Token, Var, RESERVED_WORDS};
pub use token::is_reserved;
pub use verbalize::verbalize;

use automaton::{ConfigGraph, Nfa};
use restriction::PatternTracker;

/// Positions are 0-based token indices; messages count from 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown word `{token}` at token {}", position + 1)]
    Lexical { position: usize, token: String },
    #[error("syntax error at token {}: expected {}", position + 1, expected.join(", "))]
    Syntax { position: usize, expected: Vec<String> },
    #[error("variable at token {} is not bound here", position + 1)]
    UnboundVariable { position: usize },
    #[error("the prefix cannot be completed to a sentence (token {})", position + 1)]
    DeadPrefix { position: usize },
    #[error("a grammar restriction needs at least one sentence pattern")]
    EmptyPatternSet,
}

impl ParseError {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Lexical { .. } => "LexicalError",
            ParseError::Syntax { .. } => "SyntaxError",
            ParseError::UnboundVariable { .. } => "UnboundVariable",
            ParseError::DeadPrefix { .. } => "DeadPrefix",
            ParseError::EmptyPatternSet => "EmptyPatternSet",
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            ParseError::Lexical { position, .. }
            | ParseError::Syntax { position, .. }
            | ParseError::UnboundVariable { position }
            | ParseError::DeadPrefix { position } => Some(*position),
            ParseError::EmptyPatternSet => None,
        }
    }

    /// The message without the token number.
    pub fn detail(&self) -> String {
        match self {
            ParseError::Lexical { token, .. } => format!("unknown word `{token}`"),
            ParseError::Syntax { expected, .. } => format!("expected {}", expected.join(", ")),
            ParseError::UnboundVariable { .. } => "variable is not bound here".into(),
            ParseError::DeadPrefix { .. } => "the prefix cannot be completed to a sentence".into(),
            ParseError::EmptyPatternSet => self.to_string(),
        }
    }
}

const PROFILES: usize = 64;

struct Inner {
    nfa: Nfa,
    tracker: PatternTracker,
    restriction: Option<PatternSet>,
    graphs: [OnceLock<Arc<ConfigGraph>>; PROFILES],
}

/// A sentence grammar, either the full one or one restricted to a set of
/// sentence patterns. Cheap to clone; recognition tables are built lazily
/// per lexicon shape and shared.
#[derive(Clone)]
pub struct Grammar {
    inner: Arc<Inner>,
}

impl fmt::Debug for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grammar").field("restriction", &self.inner.restriction).finish()
    }
}

impl Grammar {
    fn with_restriction(restriction: Option<PatternSet>) -> Self {
        Grammar {
            inner: Arc::new(Inner {
                nfa: Nfa::sentence(),
                tracker: PatternTracker::new(),
                restriction,
                graphs: std::array::from_fn(|_| OnceLock::new()),
            }),
        }
    }

    /// The unrestricted grammar (a shared instance).
    pub fn standard() -> Grammar {
        static STANDARD: OnceLock<Grammar> = OnceLock::new();
        STANDARD.get_or_init(|| Grammar::with_restriction(None)).clone()
    }

    /// Grammar accepting only sentences whose pattern is in `patterns`.
    /// Restricting a restricted grammar intersects the sets.
    pub fn restrict(&self, patterns: impl IntoIterator<Item = SentencePattern>) -> Result<Grammar, ParseError> {
        let mut set: PatternSet = patterns.into_iter().collect();
        if let Some(existing) = &self.inner.restriction {
            set.retain(|p| existing.contains(p));
        }
        if set.is_empty() {
            return Err(ParseError::EmptyPatternSet);
        }
        Ok(Grammar::with_restriction(Some(set)))
    }

    pub fn restriction(&self) -> Option<&PatternSet> {
        self.inner.restriction.as_ref()
    }

    fn graph(&self, profile: ClassProfile) -> Arc<ConfigGraph> {
        self.inner.graphs[profile.bits() as usize]
            .get_or_init(|| {
                let inner = &*self.inner;
                let restriction = inner.restriction.as_ref().map(|set| (&inner.tracker, set));
                Arc::new(ConfigGraph::build(&inner.nfa, profile, restriction))
            })
            .clone()
    }

    /// Incremental recognizer for lexicons with the given class profile.
    pub fn recognizer(&self, profile: ClassProfile) -> Recognizer {
        Recognizer {
            graph: self.graph(profile),
        }
    }

    pub fn parse(&self, tokens: &[Token], lexicon: &Lexicon) -> Result<SentenceAst, ParseError> {
        check_lexical(tokens, lexicon)?;
        let recognizer = self.recognizer(lexicon.profile());
        let mut state = recognizer.start();
        for (position, token) in tokens.iter().enumerate() {
            match recognizer.advance(&state, token) {
                Some(next) => state = next,
                None => {
                    if let Token::Variable(v) = token {
                        if !recognizer.graph.any_can_reference(&state.0, *v) {
                            return Err(ParseError::UnboundVariable { position });
                        }
                    }
                    return Err(ParseError::Syntax {
                        position,
                        expected: recognizer.expected(&state),
                    });
                }
            }
        }
        if !recognizer.accepts(&state) {
            return Err(ParseError::Syntax {
                position: tokens.len(),
                expected: recognizer.expected(&state),
            });
        }
        parser::Parser::new(tokens).sentence()
    }

    /// Tokenizes and parses sentence text.
    pub fn parse_text(&self, text: &str, lexicon: &Lexicon) -> Result<(Vec<Token>, SentenceAst), ParseError> {
        let tokens = tokenize(text, lexicon)?;
        let ast = self.parse(&tokens, lexicon)?;
        Ok((tokens, ast))
    }

    pub fn predict(&self, prefix: &[Token], lexicon: &Lexicon) -> Result<Prediction, ParseError> {
        check_lexical(prefix, lexicon)?;
        let recognizer = self.recognizer(lexicon.profile());
        let mut state = recognizer.start();
        if state.is_dead() {
            return Err(ParseError::DeadPrefix { position: 0 });
        }
        for (position, token) in prefix.iter().enumerate() {
            state = recognizer
                .advance(&state, token)
                .ok_or(ParseError::DeadPrefix { position })?;
        }
        Ok(recognizer.prediction(&state, lexicon))
    }

    /// Number of distinct derivations of a token list in the underlying
    /// automaton; 1 for every accepted sentence.
    pub fn derivation_count(&self, tokens: &[Token]) -> u64 {
        self.inner.nfa.count_paths(&symbols_of(tokens))
    }
}

fn check_lexical(tokens: &[Token], lexicon: &Lexicon) -> Result<(), ParseError> {
    for (position, token) in tokens.iter().enumerate() {
        if let Token::Word(w) = token {
            if lexicon.get(w.id) != Some(w) {
                return Err(ParseError::Lexical {
                    position,
                    token: w.surface.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Symbol reading of a token list: the first occurrence of a variable
/// introduces it, later ones reference it.
pub fn symbols_of(tokens: &[Token]) -> Vec<Symbol> {
    let mut seen = 0u8;
    tokens
        .iter()
        .map(|t| match t {
            Token::Variable(v) if seen & v.bit() == 0 => {
                seen |= v.bit();
                Symbol::Intro(*v)
            }
            Token::Variable(v) => Symbol::Ref(*v),
            other => Symbol::of_token(other)[0].expect("non-variable tokens have one symbol"),
        })
        .collect()
}

/// Sentence pattern computed from the token sequence alone.
pub fn token_pattern(tokens: &[Token]) -> SentencePattern {
    static TRACKER: OnceLock<PatternTracker> = OnceLock::new();
    TRACKER.get_or_init(PatternTracker::new).classify(symbols_of(tokens))
}

/// A set of recognizer configurations reached by a prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefixState(Vec<u32>);

impl PrefixState {
    pub fn is_dead(&self) -> bool {
        self.0.is_empty()
    }
}

/// Prefix recognition over one lexicon shape. Every reachable state can be
/// completed to an accepted sentence.
#[derive(Clone)]
pub struct Recognizer {
    graph: Arc<ConfigGraph>,
}

impl Recognizer {
    pub fn start(&self) -> PrefixState {
        PrefixState(self.graph.initial())
    }

    pub fn advance(&self, state: &PrefixState, token: &Token) -> Option<PrefixState> {
        let next = self.graph.step_token(&state.0, token);
        (!next.is_empty()).then_some(PrefixState(next))
    }

    pub fn advance_symbol(&self, state: &PrefixState, symbol: Symbol) -> Option<PrefixState> {
        let next = self.graph.step(&state.0, symbol);
        (!next.is_empty()).then_some(PrefixState(next))
    }

    pub fn legal_symbols(&self, state: &PrefixState) -> Vec<Symbol> {
        self.graph.legal_symbols(&state.0)
    }

    pub fn accepts(&self, state: &PrefixState) -> bool {
        self.graph.is_accepting(&state.0)
    }

    fn expected(&self, state: &PrefixState) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for symbol in self.legal_symbols(state) {
            let label = match symbol {
                Symbol::Word(fw) => fw.as_str().to_string(),
                Symbol::Class(c) => c.category().label().to_string(),
                Symbol::Intro(_) => "new variable".to_string(),
                Symbol::Ref(v) => v.to_string(),
                Symbol::Period => ".".to_string(),
            };
            if !out.contains(&label) {
                out.push(label);
            }
        }
        out
    }

    /// Menus for the continuation of `state`.
    pub fn prediction(&self, state: &PrefixState, lexicon: &Lexicon) -> Prediction {
        let legal = self.legal_symbols(state);
        let mut prediction = Prediction::default();
        for &symbol in &legal {
            match symbol {
                Symbol::Class(class) => {
                    let menu = prediction.category_menus.entry(class.category()).or_default();
                    menu.extend(lexicon.words().filter(|w| w.class() == class).cloned());
                }
                Symbol::Intro(v) => prediction.var_intro_menu.push(v),
                Symbol::Ref(v) => prediction.var_ref_menu.push(v),
                Symbol::Period => prediction.can_finish = true,
                Symbol::Word(_) => {}
            }
        }
        for menu in prediction.category_menus.values_mut() {
            crate::lexicon::sort_alphabetically(menu);
        }
        prediction.function_menu = self.function_phrases(state, &legal);
        prediction
    }

    fn function_phrases(&self, state: &PrefixState, legal: &[Symbol]) -> Vec<Phrase> {
        use FunctionWord as F;
        const COMPOSITES: [&[FunctionWord]; 6] = [
            &[F::It, F::Is, F::False, F::That],
            &[F::Does, F::Not],
            &[F::Is, F::A],
            &[F::Is, F::An],
            &[F::Is, F::Not, F::A],
            &[F::Is, F::Not, F::An],
        ];
        let mut out = Vec::new();
        for &symbol in legal {
            let Symbol::Word(first) = symbol else { continue };
            let composites: Vec<&[FunctionWord]> = COMPOSITES
                .iter()
                .copied()
                .filter(|c| c[0] == first && self.walk(state, c).is_some())
                .collect();
            let after = self.advance_symbol(state, symbol).expect("legal symbol");
            let suffixes: Vec<&[FunctionWord]> = composites.iter().map(|c| &c[1..]).collect();
            if !self.covered(&after, &suffixes) {
                out.push(Phrase(vec![first]));
            }
            out.extend(composites.into_iter().map(|c| Phrase(c.to_vec())));
        }
        out
    }

    fn walk(&self, state: &PrefixState, words: &[FunctionWord]) -> Option<PrefixState> {
        words
            .iter()
            .try_fold(state.clone(), |s, &fw| self.advance_symbol(&s, Symbol::Word(fw)))
    }

    /// Whether every continuation of `state` starts with one of `suffixes`.
    fn covered(&self, state: &PrefixState, suffixes: &[&[FunctionWord]]) -> bool {
        if suffixes.is_empty() {
            return false;
        }
        if suffixes.iter().any(|s| s.is_empty()) {
            return true;
        }
        self.legal_symbols(state).into_iter().all(|symbol| {
            let Symbol::Word(fw) = symbol else { return false };
            let rest: Vec<&[FunctionWord]> = suffixes.iter().filter(|s| s[0] == fw).map(|s| &s[1..]).collect();
            let next = self.advance_symbol(state, symbol).expect("legal symbol");
            self.covered(&next, &rest)
        })
    }
}

/// One function-menu entry: a single function word or a fixed phrase that is
/// inserted as its word sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phrase(pub Vec<FunctionWord>);

impl Phrase {
    pub fn tokens(&self) -> Vec<Token> {
        self.0.iter().map(|&fw| Token::Function(fw)).collect()
    }
}

impl fmt::Display for Phrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<&str> = self.0.iter().map(|fw| fw.as_str()).collect();
        f.write_str(&words.join(" "))
    }
}

impl Serialize for Phrase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The legal continuations of a sentence prefix.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Prediction {
    pub category_menus: BTreeMap<WordCategory, Vec<Word>>,
    pub function_menu: Vec<Phrase>,
    pub var_ref_menu: Vec<Var>,
    pub var_intro_menu: Vec<Var>,
    pub can_finish: bool,
}

impl Prediction {
    pub fn var_intro_allowed(&self) -> bool {
        !self.var_intro_menu.is_empty()
    }

    /// Whether `token` is the first token of some offered entry.
    pub fn offers(&self, token: &Token) -> bool {
        match token {
            Token::Function(fw) => self.function_menu.iter().any(|p| p.0[0] == *fw),
            Token::Word(w) => self
                .category_menus
                .get(&w.category)
                .is_some_and(|menu| menu.contains(w)),
            Token::Variable(v) => self.var_ref_menu.contains(v) || self.var_intro_menu.contains(v),
            Token::Period => self.can_finish,
        }
    }

    /// Every offered entry as a token sequence.
    pub fn entries(&self) -> Vec<Vec<Token>> {
        let mut out: Vec<Vec<Token>> = Vec::new();
        for menu in self.category_menus.values() {
            out.extend(menu.iter().map(|w| vec![Token::Word(w.clone())]));
        }
        out.extend(self.function_menu.iter().map(Phrase::tokens));
        for v in self.var_ref_menu.iter().chain(&self.var_intro_menu) {
            let entry = vec![Token::Variable(*v)];
            if !out.contains(&entry) {
                out.push(entry);
            }
        }
        if self.can_finish {
            out.push(vec![Token::Period]);
        }
        out
    }
}

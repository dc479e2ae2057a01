//! The wiki content model: vocabulary, sentences with their derived logical
//! forms, informal notes, and the knowledge base kept in sync with them.
//!
//! Every mutation validates before it changes anything, so a failed
//! operation leaves the state untouched.
//!
//! ```
//! use cnlwiki::grammar::Grammar;
//! use cnlwiki::lexicon::WordCategory;
//! use cnlwiki::wiki::{ArticleBox, WikiState};
//!
//! let mut wiki = WikiState::new();
//! wiki.add_word(WordCategory::Noun, "canal").unwrap();
//! wiki.add_word(WordCategory::Noun, "waterbody").unwrap();
//! let s = wiki.create_sentence_text("every canal is a waterbody .", &Grammar::standard()).unwrap();
//! assert_eq!(s.axiom.to_string(), "SubClassOf(canal, waterbody)");
//!
//! let article = wiki.render_article("canal").unwrap();
//! assert_eq!(article.sentences_in(ArticleBox::Hierarchy).len(), 1);
//! ```

mod article;
mod format;
mod stats;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::{render, tokens_from_surfaces, FunctionWord, Grammar, ParseError, Prediction, SentenceAst, Token};
use crate::lexicon::{Lexicon, LexiconError, Word, WordCategory, WordId};
use crate::logic::{sentence_axiom, pattern_of, Axiom, SentencePattern};
use crate::reasoner::{KnowledgeBase, Position};

pub use article::{Article, ArticleBox, Comment, SentenceView};
pub use format::EXPORT_HEADER;
pub use stats::{AnnotationSummary, StatsReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SentenceId(pub u64);

impl fmt::Display for SentenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A stored sentence with its derived fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub id: SentenceId,
    pub tokens: Vec<Token>,
    pub ast: SentenceAst,
    pub axiom: Axiom,
    pub pattern: SentencePattern,
    pub version: u64,
}

impl Sentence {
    pub fn text(&self) -> String {
        render(&self.tokens)
    }

    pub fn mentions(&self, word: WordId) -> bool {
        self.tokens.iter().any(|t| t.word().is_some_and(|w| w.id == word))
    }
}

/// Informal text attached to a word's article; never parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Note {
    pub word: WordId,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WikiError {
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error("{0}")]
    ParseFailed(ParseError),
    #[error("unknown sentence {0}")]
    UnknownSentence(SentenceId),
    #[error("sentence {id} is at version {actual}, not {expected}")]
    VersionConflict { id: SentenceId, expected: u64, actual: u64 },
    #[error("no article for `{0}`")]
    UnknownWord(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line}: `{word}` is not a declared word")]
    UnknownWordInSentence { line: usize, word: String },
    #[error("line {line}: {error}")]
    SentenceLine { line: usize, error: ParseError },
    #[error("annotation for unknown sentence {0}")]
    AnnotationForUnknownSentence(SentenceId),
}

impl WikiError {
    /// Stable machine-readable name.
    pub fn code(&self) -> &'static str {
        match self {
            WikiError::Lexicon(e) => match e {
                LexiconError::DuplicateSurface(_) => "DuplicateSurface",
                LexiconError::ReservedWord(_) => "ReservedWord",
                LexiconError::InvalidSurface(_) => "InvalidSurface",
                LexiconError::UnknownWord(_) => "UnknownWord",
                LexiconError::WordInUse(_) => "WordInUse",
                LexiconError::UnknownCategory(_) => "UnknownCategory",
            },
            WikiError::ParseFailed(e) => match e {
                ParseError::Syntax { .. } | ParseError::UnboundVariable { .. } => "ParseFailed",
                other => other.code(),
            },
            WikiError::UnknownSentence(_) => "UnknownSentence",
            WikiError::VersionConflict { .. } => "VersionConflict",
            WikiError::UnknownWord(_) => "UnknownWord",
            WikiError::Format { .. } | WikiError::SentenceLine { .. } => "FormatError",
            WikiError::UnknownWordInSentence { .. } => "UnknownWordInSentence",
            WikiError::AnnotationForUnknownSentence(_) => "AnnotationForUnknownSentence",
        }
    }

    /// Token position for parse failures, line number for file errors.
    pub fn position(&self) -> Option<usize> {
        match self {
            WikiError::ParseFailed(e) => e.position(),
            WikiError::Format { line, .. }
            | WikiError::UnknownWordInSentence { line, .. }
            | WikiError::SentenceLine { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// The whole wiki. Articles are computed views, not stored.
#[derive(Debug, Clone, Default)]
pub struct WikiState {
    lexicon: Lexicon,
    sentences: BTreeMap<SentenceId, Sentence>,
    notes: Vec<Note>,
    kb: KnowledgeBase,
    /// Stored sentences per ontology axiom.
    axiom_counts: HashMap<Axiom, usize>,
    revision: u64,
    next_sentence: u64,
}

impl WikiState {
    pub fn new() -> Self {
        WikiState {
            lexicon: Lexicon::new(),
            next_sentence: 1,
            ..WikiState::default()
        }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn revision(&self) -> u64 {
        self.revision
    }

    pub fn sentences(&self) -> impl Iterator<Item = &Sentence> {
        self.sentences.values()
    }

    pub fn sentence(&self, id: SentenceId) -> Result<&Sentence, WikiError> {
        self.sentences.get(&id).ok_or(WikiError::UnknownSentence(id))
    }

    pub fn notes(&self) -> &[Note] {
        &self.notes
    }

    pub fn add_word(&mut self, category: WordCategory, surface: &str) -> Result<Word, WikiError> {
        let word = self.lexicon.add_word(category, surface)?;
        self.revision += 1;
        Ok(word)
    }

    /// Removes a word that no sentence mentions, together with its notes.
    pub fn remove_word(&mut self, id: WordId) -> Result<Word, WikiError> {
        let word = self.lexicon.get(id).ok_or(LexiconError::UnknownWord(id))?;
        if self.sentences.values().any(|s| s.mentions(id)) {
            return Err(LexiconError::WordInUse(word.surface.clone()).into());
        }
        let word = self.lexicon.remove_word(id)?;
        self.notes.retain(|n| n.word != id);
        self.revision += 1;
        Ok(word)
    }

    pub fn add_note(&mut self, surface: &str, text: &str) -> Result<(), WikiError> {
        let word = self
            .lexicon
            .lookup(surface)
            .ok_or_else(|| WikiError::UnknownWord(surface.to_string()))?;
        self.notes.push(Note {
            word: word.id,
            text: text.to_string(),
        });
        self.revision += 1;
        Ok(())
    }

    /// Resolves wire tokens (surface strings) against the lexicon.
    pub fn resolve(&self, surfaces: &[impl AsRef<str>]) -> Result<Vec<Token>, WikiError> {
        tokens_from_surfaces(surfaces, &self.lexicon).map_err(WikiError::ParseFailed)
    }

    fn derive(&self, id: SentenceId, tokens: Vec<Token>, grammar: &Grammar, version: u64) -> Result<Sentence, WikiError> {
        let ast = grammar.parse(&tokens, &self.lexicon).map_err(WikiError::ParseFailed)?;
        Ok(Sentence {
            id,
            axiom: sentence_axiom(&ast),
            pattern: pattern_of(&ast),
            tokens,
            ast,
            version,
        })
    }

    fn hold_axiom(&mut self, axiom: &Axiom) {
        if !axiom.owl_compatible() {
            return;
        }
        let count = self.axiom_counts.entry(axiom.clone()).or_default();
        *count += 1;
        if *count == 1 {
            self.kb.assert_axiom(axiom.clone());
        }
    }

    fn release_axiom(&mut self, axiom: &Axiom) {
        let Some(count) = self.axiom_counts.get_mut(axiom) else {
            return;
        };
        *count -= 1;
        if *count == 0 {
            self.axiom_counts.remove(axiom);
            self.kb
                .retract_axiom(axiom)
                .expect("held axioms are in the knowledge base");
        }
    }

    /// Stores a new sentence. `grammar` is the standard grammar or the
    /// restricted grammar of an article box.
    pub fn create_sentence(&mut self, tokens: Vec<Token>, grammar: &Grammar) -> Result<Sentence, WikiError> {
        let id = SentenceId(self.next_sentence.max(1));
        let sentence = self.derive(id, tokens, grammar, 1)?;
        self.next_sentence = id.0 + 1;
        self.hold_axiom(&sentence.axiom);
        self.sentences.insert(id, sentence.clone());
        self.revision += 1;
        Ok(sentence)
    }

    pub fn create_sentence_text(&mut self, text: &str, grammar: &Grammar) -> Result<Sentence, WikiError> {
        let surfaces: Vec<&str> = text.split_whitespace().collect();
        let tokens = self.resolve(&surfaces)?;
        self.create_sentence(tokens, grammar)
    }

    fn check_version(&self, id: SentenceId, expected: u64) -> Result<&Sentence, WikiError> {
        let current = self.sentence(id)?;
        if current.version != expected {
            return Err(WikiError::VersionConflict {
                id,
                expected,
                actual: current.version,
            });
        }
        Ok(current)
    }

    pub fn edit_sentence(
        &mut self,
        id: SentenceId,
        expected_version: u64,
        tokens: Vec<Token>,
        grammar: &Grammar,
    ) -> Result<Sentence, WikiError> {
        let current = self.check_version(id, expected_version)?;
        let updated = self.derive(id, tokens, grammar, current.version + 1)?;
        let old = self.sentences.insert(id, updated.clone()).expect("checked above");
        self.release_axiom(&old.axiom);
        self.hold_axiom(&updated.axiom);
        self.revision += 1;
        Ok(updated)
    }

    pub fn delete_sentence(&mut self, id: SentenceId, expected_version: u64) -> Result<(), WikiError> {
        self.check_version(id, expected_version)?;
        let old = self.sentences.remove(&id).expect("checked above");
        self.release_axiom(&old.axiom);
        self.revision += 1;
        Ok(())
    }

    /// Sentences mentioning `word`, in creation order.
    pub fn mentioning(&self, word: WordId) -> impl Iterator<Item = &Sentence> {
        self.sentences.values().filter(move |s| s.mentions(word))
    }

    /// Number of stored sentences per held ontology axiom.
    pub fn axiom_multiplicity(&self, axiom: &Axiom) -> usize {
        self.axiom_counts.get(axiom).copied().unwrap_or(0)
    }

    /// Prediction for a prefix. When the prefix ends at the object of a verb
    /// or of-construct, proper names and nouns that fit the role come first.
    pub fn predict(&self, prefix: &[Token], grammar: &Grammar) -> Result<Prediction, WikiError> {
        let mut prediction = grammar.predict(prefix, &self.lexicon).map_err(WikiError::ParseFailed)?;
        if let Some(role) = object_role(prefix) {
            if let Some(menu) = prediction.category_menus.get_mut(&WordCategory::ProperName) {
                *menu = self.kb.rank_individuals(&role, Position::Object, menu);
            }
            if let Some(menu) = prediction.category_menus.get_mut(&WordCategory::Noun) {
                *menu = self.kb.rank_concepts(&role, Position::Object, menu);
            }
        }
        Ok(prediction)
    }
}

/// The role whose object the next word fills, skipping determiners.
fn object_role(prefix: &[Token]) -> Option<String> {
    for token in prefix.iter().rev() {
        match token {
            Token::Function(FunctionWord::A | FunctionWord::An | FunctionWord::Every | FunctionWord::No) => {}
            Token::Word(w) if matches!(w.category, WordCategory::TransitiveVerb | WordCategory::OfConstruct) => {
                return Some(w.entity_name())
            }
            _ => return None,
        }
    }
    None
}

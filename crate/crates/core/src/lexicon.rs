//! The user-extensible vocabulary.
//!
//! Every content word belongs to exactly one [`WordCategory`]. Surfaces are
//! single tokens (multi-word names are hyphenated, e.g. `flows-through`) and
//! never collide with the fixed function words of the grammar.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::is_reserved;

/// Word class of a lexicon entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum WordCategory {
    /// Individuals, e.g. `Zurich`.
    #[serde(rename = "pn")]
    ProperName,
    /// Concepts, e.g. `country`.
    #[serde(rename = "noun")]
    Noun,
    /// Roles, e.g. `flows-through`.
    #[serde(rename = "tv")]
    TransitiveVerb,
    /// Roles written as `<surface> of`, e.g. `part of`.
    #[serde(rename = "of")]
    OfConstruct,
}

impl WordCategory {
    pub const ALL: [WordCategory; 4] = [
        WordCategory::ProperName,
        WordCategory::Noun,
        WordCategory::TransitiveVerb,
        WordCategory::OfConstruct,
    ];

    /// Short code used in the lexicon and wiki file formats.
    pub fn code(self) -> &'static str {
        match self {
            WordCategory::ProperName => "pn",
            WordCategory::Noun => "noun",
            WordCategory::TransitiveVerb => "tv",
            WordCategory::OfConstruct => "of",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            WordCategory::ProperName => "proper name",
            WordCategory::Noun => "noun",
            WordCategory::TransitiveVerb => "transitive verb",
            WordCategory::OfConstruct => "of-construct",
        }
    }
}

impl fmt::Display for WordCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for WordCategory {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pn" => Ok(WordCategory::ProperName),
            "noun" => Ok(WordCategory::Noun),
            "tv" => Ok(WordCategory::TransitiveVerb),
            "of" => Ok(WordCategory::OfConstruct),
            other => Err(LexiconError::UnknownCategory(other.to_string())),
        }
    }
}

/// Finer partition of the categories used by the grammar: nouns and
/// of-constructs are split by the article they take (`a` or `an`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordClass {
    ProperName,
    NounConsonant,
    NounVowel,
    Verb,
    OfConsonant,
    OfVowel,
}

impl WordClass {
    pub const ALL: [WordClass; 6] = [
        WordClass::ProperName,
        WordClass::NounConsonant,
        WordClass::NounVowel,
        WordClass::Verb,
        WordClass::OfConsonant,
        WordClass::OfVowel,
    ];

    pub fn category(self) -> WordCategory {
        match self {
            WordClass::ProperName => WordCategory::ProperName,
            WordClass::NounConsonant | WordClass::NounVowel => WordCategory::Noun,
            WordClass::Verb => WordCategory::TransitiveVerb,
            WordClass::OfConsonant | WordClass::OfVowel => WordCategory::OfConstruct,
        }
    }

    pub(crate) fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// The set of word classes that have at least one word in a lexicon.
///
/// Which sentences are possible depends on the lexicon only through this set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ClassProfile(u8);

impl ClassProfile {
    pub const FULL: ClassProfile = ClassProfile(0b11_1111);

    pub fn from_classes(classes: impl IntoIterator<Item = WordClass>) -> Self {
        ClassProfile(classes.into_iter().fold(0, |acc, c| acc | c.bit()))
    }

    pub fn contains(self, class: WordClass) -> bool {
        self.0 & class.bit() != 0
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_bits(bits: u8) -> Self {
        ClassProfile(bits & Self::FULL.0)
    }
}

/// Opaque identifier of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WordId(pub u32);

impl fmt::Display for WordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    pub id: WordId,
    pub category: WordCategory,
    pub surface: String,
}

impl Word {
    /// Whether the surface takes `an` rather than `a`.
    pub fn takes_an(&self) -> bool {
        starts_with_vowel(&self.surface)
    }

    pub fn class(&self) -> WordClass {
        match self.category {
            WordCategory::ProperName => WordClass::ProperName,
            WordCategory::TransitiveVerb => WordClass::Verb,
            WordCategory::Noun if self.takes_an() => WordClass::NounVowel,
            WordCategory::Noun => WordClass::NounConsonant,
            WordCategory::OfConstruct if self.takes_an() => WordClass::OfVowel,
            WordCategory::OfConstruct => WordClass::OfConsonant,
        }
    }

    /// Name of the ontology entity this word denotes. Of-constructs denote the
    /// role `<surface>-of`.
    pub fn entity_name(&self) -> String {
        match self.category {
            WordCategory::OfConstruct => format!("{}-of", self.surface),
            _ => self.surface.clone(),
        }
    }

    /// Rendered form as it appears in sentences and menus.
    pub fn display_form(&self) -> String {
        match self.category {
            WordCategory::OfConstruct => format!("{} of", self.surface),
            _ => self.surface.clone(),
        }
    }
}

pub(crate) fn starts_with_vowel(surface: &str) -> bool {
    surface
        .chars()
        .next()
        .map(|c| matches!(c.to_ascii_lowercase(), 'a' | 'e' | 'i' | 'o' | 'u'))
        .unwrap_or(false)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("the surface `{0}` is already in use")]
    DuplicateSurface(String),
    #[error("`{0}` is a reserved function word")]
    ReservedWord(String),
    #[error("`{0}` is not a valid word (letters, digits and hyphens only)")]
    InvalidSurface(String),
    #[error("unknown word {0}")]
    UnknownWord(WordId),
    #[error("the word `{0}` is still used by stored sentences")]
    WordInUse(String),
    #[error("unknown word category `{0}`")]
    UnknownCategory(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    words: BTreeMap<WordId, Word>,
    index: HashMap<String, WordId>,
    next_id: u32,
}

impl Lexicon {
    pub fn new() -> Self {
        Lexicon {
            words: BTreeMap::new(),
            index: HashMap::new(),
            next_id: 1,
        }
    }

    /// Builds a lexicon from `(category, surface)` pairs, failing on the first
    /// rejected entry.
    pub fn from_entries<'a>(
        entries: impl IntoIterator<Item = (WordCategory, &'a str)>,
    ) -> Result<Self, LexiconError> {
        let mut lexicon = Lexicon::new();
        for (category, surface) in entries {
            lexicon.add_word(category, surface)?;
        }
        Ok(lexicon)
    }

    pub fn add_word(&mut self, category: WordCategory, surface: &str) -> Result<Word, LexiconError> {
        self.check_new(category, surface)?;
        let id = WordId(self.next_id.max(1));
        self.next_id = id.0 + 1;
        let word = Word {
            id,
            category,
            surface: surface.to_string(),
        };
        self.index.insert(word.surface.clone(), id);
        self.words.insert(id, word.clone());
        Ok(word)
    }

    /// Validates a prospective entry without inserting it.
    pub fn check_new(&self, category: WordCategory, surface: &str) -> Result<(), LexiconError> {
        if surface.is_empty()
            || !surface.chars().all(|c| c.is_alphanumeric() || c == '-')
            || !surface.chars().any(char::is_alphanumeric)
        {
            return Err(LexiconError::InvalidSurface(surface.to_string()));
        }
        if is_reserved(surface) {
            return Err(LexiconError::ReservedWord(surface.to_string()));
        }
        if self.index.contains_key(surface) {
            return Err(LexiconError::DuplicateSurface(surface.to_string()));
        }
        // A verb `part-of` and an of-construct `part` would denote the same role.
        let clash = match category {
            WordCategory::TransitiveVerb => surface
                .strip_suffix("-of")
                .and_then(|stem| self.lookup(stem))
                .filter(|w| w.category == WordCategory::OfConstruct),
            WordCategory::OfConstruct => self
                .lookup(&format!("{surface}-of"))
                .filter(|w| w.category == WordCategory::TransitiveVerb),
            _ => None,
        };
        if clash.is_some() {
            return Err(LexiconError::DuplicateSurface(surface.to_string()));
        }
        Ok(())
    }

    pub fn lookup(&self, surface: &str) -> Option<&Word> {
        self.index.get(surface).and_then(|id| self.words.get(id))
    }

    pub fn get(&self, id: WordId) -> Option<&Word> {
        self.words.get(&id)
    }

    /// Words of `category` whose surface starts with `prefix`, in menu order.
    pub fn complete_prefix(&self, prefix: &str, category: WordCategory) -> Vec<Word> {
        let mut hits: Vec<Word> = self
            .words
            .values()
            .filter(|w| w.category == category && w.surface.starts_with(prefix))
            .cloned()
            .collect();
        sort_alphabetically(&mut hits);
        hits
    }

    /// Removes a word. Callers holding sentences must check references first
    /// (see `WikiState::remove_word`).
    pub fn remove_word(&mut self, id: WordId) -> Result<Word, LexiconError> {
        let word = self.words.remove(&id).ok_or(LexiconError::UnknownWord(id))?;
        self.index.remove(&word.surface);
        Ok(word)
    }

    /// All words in creation order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.words.values()
    }

    pub fn words_of(&self, category: WordCategory) -> Vec<Word> {
        self.complete_prefix("", category)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn profile(&self) -> ClassProfile {
        ClassProfile::from_classes(self.words.values().map(Word::class))
    }
}

/// Menu order: case-insensitive alphabetical, ties broken by the exact surface.
pub fn sort_alphabetically(words: &mut [Word]) {
    words.sort_by(|a, b| {
        a.surface
            .to_lowercase()
            .cmp(&b.surface.to_lowercase())
            .then_with(|| a.surface.cmp(&b.surface))
    });
}

/// Parses one `word <pn|noun|tv|of> <surface>` line.
pub fn parse_entry(line: &str) -> Result<(WordCategory, &str), LexiconError> {
    let mut parts = line.split(' ');
    match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some("word"), Some(category), Some(surface), None) => Ok((category.parse()?, surface)),
        _ => Err(LexiconError::InvalidSurface(line.to_string())),
    }
}

pub fn format_entry(word: &Word) -> String {
    format!("word {} {}", word.category.code(), word.surface)
}

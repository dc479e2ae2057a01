use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lexicon::{Lexicon, Word};

use super::ParseError;

/// The fixed function words of the sentence language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FunctionWord {
    Every,
    No,
    A,
    An,
    Something,
    Everything,
    Is,
    Not,
    Does,
    If,
    Then,
    And,
    Or,
    It,
    False,
    That,
    Who,
    Of,
}

impl FunctionWord {
    pub const ALL: [FunctionWord; 18] = [
        FunctionWord::Every,
        FunctionWord::No,
        FunctionWord::A,
        FunctionWord::An,
        FunctionWord::Something,
        FunctionWord::Everything,
        FunctionWord::Is,
        FunctionWord::Not,
        FunctionWord::Does,
        FunctionWord::If,
        FunctionWord::Then,
        FunctionWord::And,
        FunctionWord::Or,
        FunctionWord::It,
        FunctionWord::False,
        FunctionWord::That,
        FunctionWord::Who,
        FunctionWord::Of,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FunctionWord::Every => "every",
            FunctionWord::No => "no",
            FunctionWord::A => "a",
            FunctionWord::An => "an",
            FunctionWord::Something => "something",
            FunctionWord::Everything => "everything",
            FunctionWord::Is => "is",
            FunctionWord::Not => "not",
            FunctionWord::Does => "does",
            FunctionWord::If => "if",
            FunctionWord::Then => "then",
            FunctionWord::And => "and",
            FunctionWord::Or => "or",
            FunctionWord::It => "it",
            FunctionWord::False => "false",
            FunctionWord::That => "that",
            FunctionWord::Who => "who",
            FunctionWord::Of => "of",
        }
    }

    pub fn from_surface(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|fw| fw.as_str() == s)
    }
}

/// Sentence-local variables used for references.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn as_str(self) -> &'static str {
        match self {
            Var::X => "X",
            Var::Y => "Y",
            Var::Z => "Z",
        }
    }

    pub fn from_surface(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.as_str() == s)
    }

    pub(crate) fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every surface that can never be a lexicon word.
pub const RESERVED_WORDS: [&str; 22] = [
    "every", "no", "a", "an", "something", "everything", "is", "not", "does", "if", "then", "and", "or",
    "it", "false", "that", "who", "of", "X", "Y", "Z", ".",
];

pub fn is_reserved(surface: &str) -> bool {
    RESERVED_WORDS.contains(&surface)
}

/// One token of a sentence. Whether a variable introduces or references a
/// binding is decided by its position and recorded in the parse tree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Function(FunctionWord),
    Word(Word),
    Variable(Var),
    Period,
}

impl Token {
    pub fn surface(&self) -> &str {
        match self {
            Token::Function(fw) => fw.as_str(),
            Token::Word(w) => &w.surface,
            Token::Variable(v) => v.as_str(),
            Token::Period => ".",
        }
    }

    pub fn word(&self) -> Option<&Word> {
        match self {
            Token::Word(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.surface())
    }
}

impl From<FunctionWord> for Token {
    fn from(fw: FunctionWord) -> Self {
        Token::Function(fw)
    }
}

/// Resolves one surface string against the reserved words and the lexicon.
pub fn resolve_token(surface: &str, lexicon: &Lexicon) -> Option<Token> {
    if surface == "." {
        return Some(Token::Period);
    }
    if let Some(fw) = FunctionWord::from_surface(surface) {
        return Some(Token::Function(fw));
    }
    if let Some(v) = Var::from_surface(surface) {
        return Some(Token::Variable(v));
    }
    lexicon.lookup(surface).cloned().map(Token::Word)
}

/// Resolves a sequence of surface strings.
pub fn tokens_from_surfaces<S: AsRef<str>>(surfaces: &[S], lexicon: &Lexicon) -> Result<Vec<Token>, ParseError> {
    surfaces
        .iter()
        .enumerate()
        .map(|(position, s)| {
            resolve_token(s.as_ref(), lexicon).ok_or_else(|| ParseError::Lexical {
                position,
                token: s.as_ref().to_string(),
            })
        })
        .collect()
}

/// Splits sentence text on spaces and resolves every token. The sentence
/// terminator is written as a separate token: `Zurich is a city .`
pub fn tokenize(text: &str, lexicon: &Lexicon) -> Result<Vec<Token>, ParseError> {
    let surfaces: Vec<&str> = text.split_whitespace().collect();
    tokens_from_surfaces(&surfaces, lexicon)
}

/// Renders tokens as sentence text, one space between tokens.
pub fn render(tokens: &[Token]) -> String {
    tokens.iter().map(Token::surface).collect::<Vec<_>>().join(" ")
}

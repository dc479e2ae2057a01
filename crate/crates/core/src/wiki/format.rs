//! Line-oriented wiki file format.
//!
//! ```text
//! # comment
//! word <pn|noun|tv|of> <surface>
//! sentence <text ending in " .">
//! note <surface> <informal text>
//! ```

use crate::grammar::{Grammar, ParseError};
use crate::lexicon::{format_entry, parse_entry};

use super::{WikiError, WikiState};

/// First line of every export.
pub const EXPORT_HEADER: &str = "# wiki export v1";

impl WikiState {
    /// Words in creation order, then sentences, then notes.
    pub fn export(&self) -> String {
        let mut out = String::new();
        out.push_str(EXPORT_HEADER);
        out.push('\n');
        for w in self.lexicon().words() {
            out.push_str(&format_entry(w));
            out.push('\n');
        }
        for s in self.sentences() {
            out.push_str("sentence ");
            out.push_str(&s.text());
            out.push('\n');
        }
        for n in self.notes() {
            let word = self.lexicon().get(n.word).expect("notes belong to live words");
            out.push_str(&format!("note {} {}\n", word.surface, n.text));
        }
        out
    }

    /// Builds a wiki from file text. Identifiers are assigned afresh in file
    /// order. Line numbers in errors count from 1.
    pub fn import(text: &str) -> Result<WikiState, WikiError> {
        let grammar = Grammar::standard();
        let mut wiki = WikiState::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.trim_end_matches('\r');
            if content.trim().is_empty() || content.starts_with('#') {
                continue;
            }
            let (keyword, rest) = content.split_once(' ').unwrap_or((content, ""));
            match keyword {
                "word" => {
                    let (category, surface) = parse_entry(content).map_err(|e| WikiError::Format {
                        line,
                        message: e.to_string(),
                    })?;
                    wiki.add_word(category, surface).map_err(|e| WikiError::Format {
                        line,
                        message: e.to_string(),
                    })?;
                }
                "sentence" => {
                    let surfaces: Vec<&str> = rest.split_whitespace().collect();
                    let tokens = wiki.resolve(&surfaces).map_err(|e| match e {
                        WikiError::ParseFailed(ParseError::Lexical { token, .. }) => {
                            WikiError::UnknownWordInSentence { line, word: token }
                        }
                        other => other,
                    })?;
                    wiki.create_sentence(tokens, &grammar).map_err(|e| match e {
                        WikiError::ParseFailed(error) => WikiError::SentenceLine { line, error },
                        other => other,
                    })?;
                }
                "note" => {
                    let (surface, note) = rest.split_once(' ').unwrap_or((rest, ""));
                    if note.is_empty() {
                        return Err(WikiError::Format {
                            line,
                            message: "a note needs a word and a text".into(),
                        });
                    }
                    wiki.add_note(surface, note).map_err(|_| WikiError::UnknownWordInSentence {
                        line,
                        word: surface.to_string(),
                    })?;
                }
                other => {
                    return Err(WikiError::Format {
                        line,
                        message: format!("unknown line kind `{other}`"),
                    })
                }
            }
        }
        Ok(wiki)
    }
}

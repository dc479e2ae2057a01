use cnlwiki::wiki::SentenceId;
use thiserror::Error;

use crate::Judgments;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnotationError {
    #[error("line {line}: expected `<sentence number> <correct|incorrect>`")]
    Malformed { line: usize },
    #[error("line {line}: sentence {id} is judged twice")]
    Repeated { line: usize, id: SentenceId },
}

/// Reads `<n> <label>` lines, where `n` is the 1-based position of a
/// sentence in the corpus and the label is `correct`, `+` or `1` for a
/// correct sentence and `incorrect`, `-` or `0` otherwise. Blank lines and
/// `#` comments are ignored.
pub fn parse_annotations(text: &str) -> Result<Judgments, AnnotationError> {
    let mut judgments = Judgments::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut fields = content.split_whitespace();
        let (Some(n), Some(label), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(AnnotationError::Malformed { line });
        };
        let id = SentenceId(n.parse().map_err(|_| AnnotationError::Malformed { line })?);
        let correct = match label {
            "correct" | "+" | "1" => true,
            "incorrect" | "-" | "0" => false,
            _ => return Err(AnnotationError::Malformed { line }),
        };
        if judgments.insert(id, correct).is_some() {
            return Err(AnnotationError::Repeated { line, id });
        }
    }
    Ok(judgments)
}

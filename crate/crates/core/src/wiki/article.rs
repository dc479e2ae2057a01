use serde::Serialize;

use crate::lexicon::{Word, WordCategory};
use crate::logic::SentencePattern;

use super::{Sentence, SentenceId, WikiError, WikiState};

/// Fixed-pattern sections of an article, in display order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ArticleBox {
    /// Concept and role hierarchy.
    Hierarchy,
    /// Individual assignments.
    Assignments,
    /// Domain and range of roles.
    DomainRange,
}

impl ArticleBox {
    pub const ALL: [ArticleBox; 3] = [ArticleBox::Hierarchy, ArticleBox::Assignments, ArticleBox::DomainRange];

    pub fn patterns(self) -> &'static [SentencePattern] {
        match self {
            ArticleBox::Hierarchy => &[SentencePattern::ConceptInclusion, SentencePattern::RoleInclusion],
            ArticleBox::Assignments => &[SentencePattern::IndividualAssignment],
            ArticleBox::DomainRange => &[SentencePattern::DomainRestriction, SentencePattern::RangeRestriction],
        }
    }

    /// The box a pattern belongs to; `None` means the unrestricted section.
    pub fn of(pattern: SentencePattern) -> Option<ArticleBox> {
        Self::ALL.into_iter().find(|b| b.patterns().contains(&pattern))
    }
}

/// One sentence as shown in an article.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SentenceView {
    pub id: SentenceId,
    pub text: String,
    pub tokens: Vec<String>,
    pub version: u64,
    pub pattern: SentencePattern,
    pub axiom: String,
    pub owl: bool,
    /// `blue` or `red`
    pub triangle: &'static str,
    pub italic: bool,
}

impl From<&Sentence> for SentenceView {
    fn from(s: &Sentence) -> Self {
        SentenceView {
            id: s.id,
            text: s.text(),
            tokens: s.tokens.iter().map(|t| t.surface().to_string()).collect(),
            version: s.version,
            pattern: s.pattern,
            axiom: s.axiom.to_string(),
            owl: s.axiom.owl_compatible(),
            triangle: s.axiom.triangle(),
            italic: false,
        }
    }
}

/// Informal text, rendered in italics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comment {
    pub position: usize,
    pub text: String,
    pub italic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoxView {
    #[serde(rename = "box")]
    pub kind: ArticleBox,
    pub sentences: Vec<SentenceView>,
}

/// The page of one word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Article {
    pub word: Word,
    pub category: WordCategory,
    /// Rendered form, e.g. `part of`.
    pub heading: String,
    pub boxes: Vec<BoxView>,
    pub unrestricted: Vec<SentenceView>,
    pub comments: Vec<Comment>,
}

impl Article {
    pub fn sentences_in(&self, kind: ArticleBox) -> &[SentenceView] {
        self.boxes
            .iter()
            .find(|b| b.kind == kind)
            .map(|b| b.sentences.as_slice())
            .unwrap_or(&[])
    }

    /// Every sentence of the article, boxes first.
    pub fn all_sentences(&self) -> impl Iterator<Item = &SentenceView> {
        self.boxes.iter().flat_map(|b| &b.sentences).chain(&self.unrestricted)
    }
}

impl WikiState {
    pub fn render_article(&self, surface: &str) -> Result<Article, WikiError> {
        let word = self
            .lexicon()
            .lookup(surface)
            .ok_or_else(|| WikiError::UnknownWord(surface.to_string()))?
            .clone();
        let mut boxes: Vec<BoxView> = ArticleBox::ALL
            .into_iter()
            .map(|kind| BoxView {
                kind,
                sentences: Vec::new(),
            })
            .collect();
        let mut unrestricted = Vec::new();
        for s in self.mentioning(word.id) {
            match ArticleBox::of(s.pattern) {
                Some(kind) => boxes[kind as usize].sentences.push(s.into()),
                None => unrestricted.push(s.into()),
            }
        }
        let comments = self
            .notes()
            .iter()
            .filter(|n| n.word == word.id)
            .enumerate()
            .map(|(position, n)| Comment {
                position,
                text: n.text.clone(),
                italic: true,
            })
            .collect();
        Ok(Article {
            category: word.category,
            heading: word.display_form(),
            word,
            boxes,
            unrestricted,
            comments,
        })
    }
}

//! A semantic wiki whose content is written in a controlled subset of
//! English.
//!
//! * [`lexicon`] holds the user vocabulary.
//! * [`grammar`] parses sentences and predicts legal continuations of a
//!   prefix, so an editor can offer exactly the words that keep a sentence
//!   well-formed.
//! * [`logic`] translates sentences to discourse representation structures
//!   and classifies them as ontology axioms.
//! * [`reasoner`] saturates the hierarchy and ranks menu words.
//! * [`wiki`] ties it together: articles, pattern boxes, persistence and
//!   statistics.

pub mod grammar;
pub mod lexicon;
pub mod logic;
pub mod reasoner;
pub mod wiki;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/vocabulary.md")]
    mod vocabulary {}
    #[doc = include_str!("../../../book/src/sentences.md")]
    mod sentences {}
    #[doc = include_str!("../../../book/src/prediction.md")]
    mod prediction {}
    #[doc = include_str!("../../../book/src/meaning.md")]
    mod meaning {}
    #[doc = include_str!("../../../book/src/ranking.md")]
    mod ranking {}
    #[doc = include_str!("../../../book/src/wiki.md")]
    mod wiki {}
}

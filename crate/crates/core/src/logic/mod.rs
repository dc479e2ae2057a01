//! Logical forms of sentences: discourse representation structures, their
//! classification into ontology axioms, and sentence patterns.
//!
//! ```
//! use cnlwiki::grammar::Grammar;
//! use cnlwiki::lexicon::{Lexicon, WordCategory};
//! use cnlwiki::logic::{ast_to_drs, classify};
//!
//! let lexicon = Lexicon::from_entries([
//!     (WordCategory::Noun, "canal"),
//!     (WordCategory::Noun, "waterbody"),
//! ])
//! .unwrap();
//! let (_, ast) = Grammar::standard().parse_text("every canal is a waterbody .", &lexicon).unwrap();
//! let axiom = classify(&ast_to_drs(&ast));
//! assert_eq!(axiom.to_string(), "SubClassOf(canal, waterbody)");
//! assert!(axiom.owl_compatible());
//! ```

mod axiom;
mod classify;
mod drs;
mod model;
mod pattern;

pub use axiom::{Axiom, AxiomKind, ClassExpr};
pub use classify::classify;
pub use drs::{ast_to_drs, Condition, Drs, Referent, Term};
pub use model::{Model, MAX_DOMAIN};
pub use pattern::{contains_neg_or_impl, pattern_of, SentencePattern, UnknownPattern};

use crate::grammar::SentenceAst;

/// Axiom of a parsed sentence.
pub fn sentence_axiom(ast: &SentenceAst) -> Axiom {
    classify(&ast_to_drs(ast))
}

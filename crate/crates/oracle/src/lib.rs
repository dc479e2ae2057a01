//! Reference implementations that the engine is checked against. Each one is
//! written from the language and rule definitions directly, in a different
//! style from the engine, and favours obviousness over speed.
//!
//! - [`language`]: a top-down pushdown recognizer for the sentence language
//!   with exact liveness, and a sentence enumerator built on it.
//! - [`audit`]: exhaustive comparison of the engine's prediction menus with
//!   the recognizer.
//! - [`semantics`]: direct truth conditions of parse trees in small models.
//! - [`owl`]: a parser and evaluator for the axiom text notation.
//! - [`saturation`]: naive rule application to a fixpoint.

pub mod audit;
pub mod language;
pub mod owl;
pub mod saturation;
pub mod semantics;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/testing.md")]
mod guide {}

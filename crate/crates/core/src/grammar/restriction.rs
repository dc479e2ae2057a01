//! Token-level recognition of sentence patterns, run in lockstep with the
//! automaton so that a restricted grammar can prune prefixes early.

use std::collections::BTreeSet;

use crate::lexicon::WordClass;
use crate::logic::SentencePattern;

use super::automaton::Symbol;
use super::token::{FunctionWord as F, Var};

pub type PatternSet = BTreeSet<SentencePattern>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Element {
    W(F),
    /// `a` or `an`
    Art,
    Pn,
    Noun,
    Tv,
    Of,
    Intro(u8),
    Ref(u8),
    Period,
}

#[derive(Debug)]
struct Template {
    pattern: SentencePattern,
    elements: Vec<Element>,
}

/// Recognizes the fixed-shape patterns by running every template in parallel.
#[derive(Debug)]
pub(crate) struct PatternTracker {
    templates: Vec<Template>,
}

/// Live template positions with the variables bound to their slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct TrackerState {
    alive: Vec<(u16, u8, [Option<Var>; 2])>,
    started: bool,
    existential: bool,
}

fn role() -> [Vec<Element>; 2] {
    use Element::*;
    [vec![Tv], vec![W(F::Is), Art, Of, W(F::Of)]]
}

fn join(parts: &[&[Element]]) -> Vec<Element> {
    parts.concat()
}

impl PatternTracker {
    pub(crate) fn new() -> Self {
        use Element::*;
        use SentencePattern as P;
        let mut templates = Vec::new();
        let mut add = |pattern, elements: Vec<Element>| templates.push(Template { pattern, elements });
        let false_that: &[Element] = &[W(F::It), W(F::Is), W(F::False), W(F::That)];

        let every = [W(F::Every), Noun, W(F::Is), Art, Noun, Period];
        add(P::ConceptInclusion, every.to_vec());
        add(P::ConceptInclusionNegated, join(&[false_that, &every]));
        add(P::IndividualAssignment, vec![Pn, W(F::Is), Art, Noun, Period]);
        add(P::IndividualAssignmentNegated, vec![Pn, W(F::Is), W(F::Not), Art, Noun, Period]);
        add(
            P::IndividualAssignmentNegated,
            join(&[false_that, &[Pn, W(F::Is), Art, Noun, Period]]),
        );
        for r in role() {
            add(P::RoleInstance, join(&[&[Pn], &r, &[Pn, Period]]));
            add(P::RoleInstanceNegated, join(&[false_that, &[Pn], &r, &[Pn, Period]]));
        }
        add(P::RoleInstanceNegated, vec![Pn, W(F::Does), W(F::Not), Tv, Pn, Period]);
        add(
            P::RoleInstanceNegated,
            vec![Pn, W(F::Is), W(F::Not), Art, Of, W(F::Of), Pn, Period],
        );

        for r1 in role() {
            let head = |x: &[Element], y: &[Element]| {
                join(&[&[W(F::If), W(F::Something)], x, &r1, &[W(F::Something)], y, &[W(F::Then)]])
            };
            for r2 in role() {
                add(
                    P::RoleInclusion,
                    join(&[&head(&[Intro(0)], &[Intro(1)]), &[Ref(0)], &r2, &[Ref(1), Period]]),
                );
            }
            let is_a = [W(F::Is), Art, Noun, Period];
            for other in [&[][..], &[Intro(1)][..]] {
                add(P::DomainRestriction, join(&[&head(&[Intro(0)], other), &[Ref(0)], &is_a]));
            }
            for other in [&[][..], &[Intro(0)][..]] {
                add(P::RangeRestriction, join(&[&head(other, &[Intro(1)]), &[Ref(1)], &is_a]));
            }
        }
        PatternTracker { templates }
    }

    pub(crate) fn initial(&self) -> TrackerState {
        TrackerState {
            alive: (0..self.templates.len() as u16).map(|t| (t, 0, [None; 2])).collect(),
            started: false,
            existential: false,
        }
    }

    pub(crate) fn step(&self, state: &TrackerState, symbol: Symbol) -> TrackerState {
        let mut next = TrackerState {
            alive: Vec::new(),
            started: true,
            existential: state.existential
                || (!state.started && matches!(symbol, Symbol::Word(F::A) | Symbol::Word(F::An))),
        };
        for &(t, pos, mut slots) in &state.alive {
            let Some(&element) = self.templates[t as usize].elements.get(pos as usize) else {
                continue;
            };
            let matched = match (element, symbol) {
                (Element::W(a), Symbol::Word(b)) => a == b,
                (Element::Art, Symbol::Word(F::A | F::An)) => true,
                (Element::Pn, Symbol::Class(c)) => c == WordClass::ProperName,
                (Element::Noun, Symbol::Class(c)) => {
                    matches!(c, WordClass::NounConsonant | WordClass::NounVowel)
                }
                (Element::Tv, Symbol::Class(c)) => c == WordClass::Verb,
                (Element::Of, Symbol::Class(c)) => matches!(c, WordClass::OfConsonant | WordClass::OfVowel),
                (Element::Intro(slot), Symbol::Intro(v)) => {
                    slots[slot as usize] = Some(v);
                    true
                }
                (Element::Ref(slot), Symbol::Ref(v)) => slots[slot as usize] == Some(v),
                (Element::Period, Symbol::Period) => true,
                _ => false,
            };
            if matched {
                next.alive.push((t, pos + 1, slots));
            }
        }
        next
    }

    pub(crate) fn final_pattern(&self, state: &TrackerState) -> SentencePattern {
        state
            .alive
            .iter()
            .find(|&&(t, pos, _)| self.templates[t as usize].elements.len() == pos as usize)
            .map(|&(t, _, _)| self.templates[t as usize].pattern)
            .unwrap_or(if state.existential {
                SentencePattern::Existential
            } else {
                SentencePattern::Other
            })
    }

    /// Pattern of a complete token sequence.
    pub(crate) fn classify(&self, symbols: impl IntoIterator<Item = Symbol>) -> SentencePattern {
        let state = symbols.into_iter().fold(self.initial(), |s, sym| self.step(&s, sym));
        self.final_pattern(&state)
    }
}

//! The sentence language as a nondeterministic top-down pushdown recognizer.
//!
//! A configuration is a stack of pending grammar items plus the variables
//! used so far and those currently visible. Nonterminals on top of the stack
//! are expanded eagerly, so every stored configuration has a terminal on top
//! or an empty stack (accepted). Scoping is handled by `Restore` items that
//! reset the visible set when a negated predicate or a disjunct ends.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;

use cnlwiki::grammar::{FunctionWord as F, Token, Var};
use cnlwiki::lexicon::{Lexicon, Word, WordCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Article {
    Any,
    Consonant,
    Vowel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Item {
    Fw(F),
    Word(WordCategory, Article),
    Intro,
    Ref,
    Period,
    Statement,
    Conditional,
    Simple,
    Subject,
    OptRel,
    PredList,
    PredTail(u8),
    Pred,
    Object,
    ArtNoun,
    ArtOf,
    OptIntro,
    Clause,
    MoreClauses,
    ThenClause,
    Restore(u8),
}

impl Item {
    fn is_terminal(self) -> bool {
        matches!(self, Item::Fw(_) | Item::Word(..) | Item::Intro | Item::Ref | Item::Period)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Config {
    /// Top of the stack is the last element.
    stack: Vec<Item>,
    used: u8,
    visible: u8,
}

/// The configurations reached by a prefix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OracleState(BTreeSet<Config>);

impl OracleState {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether the prefix is a complete sentence.
    pub fn accepts(&self) -> bool {
        self.0.iter().any(|c| c.stack.is_empty())
    }
}

/// How a variable token is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarUse {
    Intro,
    Ref,
    Either,
}

fn bit(v: Var) -> u8 {
    match v {
        Var::X => 1,
        Var::Y => 2,
        Var::Z => 4,
    }
}

const VARS: [Var; 3] = [Var::X, Var::Y, Var::Z];

fn vowel_initial(surface: &str) -> bool {
    matches!(surface.bytes().next(), Some(b'a' | b'e' | b'i' | b'o' | b'u' | b'A' | b'E' | b'I' | b'O' | b'U'))
}

fn article_fits(article: Article, surface: &str) -> bool {
    match article {
        Article::Any => true,
        Article::Consonant => !vowel_initial(surface),
        Article::Vowel => vowel_initial(surface),
    }
}

const NOUN: Item = Item::Word(WordCategory::Noun, Article::Any);
const PN: Item = Item::Word(WordCategory::ProperName, Article::Any);
const TV: Item = Item::Word(WordCategory::TransitiveVerb, Article::Any);

/// Calls `emit` with each right-hand side of the nonterminal `item` on top of
/// `config`, written in reading order.
fn expand(item: Item, config: &Config, mut emit: impl FnMut(&[Item])) {
    use Item::*;
    let rules: &[&[Item]] = match item {
        Statement => &[
            &[Fw(F::It), Fw(F::Is), Fw(F::False), Fw(F::That), Simple],
            &[Conditional],
            &[Simple],
        ],
        Conditional => &[&[Fw(F::If), Clause, MoreClauses, Fw(F::Then), ThenClause]],
        Simple => &[&[Subject, PredList]],
        Subject => &[
            &[PN],
            &[Fw(F::Every), NOUN, OptRel],
            &[Fw(F::No), NOUN, OptRel],
            &[ArtNoun, OptRel],
            &[Fw(F::Something), OptIntro],
            &[Fw(F::Everything)],
        ],
        OptRel => &[&[], &[Fw(F::Who), TV, Object], &[Fw(F::That), TV, Object]],
        PredList => return emit(&[Pred, PredTail(config.visible)]),
        PredTail(outer) => {
            emit(&[]);
            emit(&[Fw(F::And), Pred, PredTail(outer)]);
            emit(&[Fw(F::Or), Restore(outer), Pred, Restore(outer), PredTail(outer)]);
            return;
        }
        Pred => {
            let before = config.visible;
            emit(&[Fw(F::Is), ArtNoun]);
            emit(&[Fw(F::Is), Fw(F::Not), ArtNoun]);
            emit(&[Fw(F::Is), ArtOf, Fw(F::Of), Object]);
            emit(&[Fw(F::Is), Fw(F::Not), ArtOf, Fw(F::Of), Object, Restore(before)]);
            emit(&[TV, Object]);
            emit(&[Fw(F::Does), Fw(F::Not), TV, Object, Restore(before)]);
            return;
        }
        Object => &[
            &[PN],
            &[ArtNoun, OptIntro],
            &[Fw(F::Something), OptIntro],
            &[Fw(F::Everything)],
            &[Ref],
        ],
        ArtNoun => &[
            &[Fw(F::A), Word(WordCategory::Noun, Article::Consonant)],
            &[Fw(F::An), Word(WordCategory::Noun, Article::Vowel)],
        ],
        ArtOf => &[
            &[Fw(F::A), Word(WordCategory::OfConstruct, Article::Consonant)],
            &[Fw(F::An), Word(WordCategory::OfConstruct, Article::Vowel)],
        ],
        OptIntro => &[&[], &[Intro]],
        Clause => &[
            &[Fw(F::Something), OptIntro, PredList],
            &[ArtNoun, OptIntro, PredList],
            &[Ref, PredList],
        ],
        MoreClauses => &[&[], &[Fw(F::And), Clause, MoreClauses]],
        ThenClause => &[
            &[Ref, PredList],
            &[Fw(F::Something), PredList],
            &[ArtNoun, PredList],
        ],
        Fw(_) | Word(..) | Intro | Ref | Period | Restore(_) => unreachable!("not a nonterminal"),
    };
    for rhs in rules {
        emit(rhs);
    }
}

/// Expands nonterminals and performs restores until every configuration has
/// a terminal on top or is finished.
fn close(seeds: Vec<Config>) -> Vec<Config> {
    let mut out = Vec::new();
    let mut pending = seeds;
    while let Some(mut config) = pending.pop() {
        match config.stack.last().copied() {
            None => out.push(config),
            Some(top) if top.is_terminal() => out.push(config),
            Some(Item::Restore(visible)) => {
                config.stack.pop();
                config.visible = visible;
                pending.push(config);
            }
            Some(top) => {
                config.stack.pop();
                expand(top, &config, |rhs| {
                    let mut next = config.clone();
                    next.stack.extend(rhs.iter().rev());
                    pending.push(next);
                });
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Consumes `token` from one configuration.
fn consume(config: &Config, token: &Token, var_use: VarUse) -> Option<Config> {
    let top = *config.stack.last()?;
    let (fits, introduced) = match (top, token) {
        (Item::Fw(expected), Token::Function(fw)) => (expected == *fw, 0),
        (Item::Period, Token::Period) => (true, 0),
        (Item::Word(category, article), Token::Word(w)) => {
            (w.category == category && article_fits(article, &w.surface), 0)
        }
        (Item::Intro, Token::Variable(v)) if var_use != VarUse::Ref => (config.used & bit(*v) == 0, bit(*v)),
        (Item::Ref, Token::Variable(v)) if var_use != VarUse::Intro => (config.visible & bit(*v) != 0, 0),
        _ => (false, 0),
    };
    if !fits {
        return None;
    }
    let mut next = config.clone();
    next.stack.pop();
    next.used |= introduced;
    next.visible |= introduced;
    Some(next)
}

/// Variable state `(used, visible)` packed into six bits.
fn pack(used: u8, visible: u8) -> usize {
    (used | visible << 3) as usize
}

fn unpack(state: usize) -> (u8, u8) {
    (state as u8 & 7, (state >> 3) as u8 & 7)
}

/// For every grammar item and variable state, the set of variable states
/// (a 64-bit mask) in which some derivation of the item can end. Empty when
/// the item derives nothing from that state.
struct Summaries(FxHashMap<Item, [u64; 64]>);

impl Summaries {
    fn compute(words: &[Word]) -> Self {
        use Item::*;
        let mut items: Vec<Item> = vec![
            Intro, Ref, Period, Statement, Conditional, Simple, Subject, OptRel, PredList, Pred, Object, ArtNoun,
            ArtOf, OptIntro, Clause, MoreClauses, ThenClause,
        ];
        for fw in [
            F::Every, F::No, F::A, F::An, F::Something, F::Everything, F::Is, F::Not, F::Does, F::If, F::Then,
            F::And, F::Or, F::It, F::False, F::That, F::Who, F::Of,
        ] {
            items.push(Fw(fw));
        }
        for category in [
            WordCategory::ProperName,
            WordCategory::Noun,
            WordCategory::TransitiveVerb,
            WordCategory::OfConstruct,
        ] {
            for article in [Article::Any, Article::Consonant, Article::Vowel] {
                items.push(Word(category, article));
            }
        }
        for mask in 0..8 {
            items.push(PredTail(mask));
            items.push(Restore(mask));
        }
        let mut table: FxHashMap<Item, [u64; 64]> = items.iter().map(|&i| (i, [0u64; 64])).collect();
        for &item in &items {
            let row = table.get_mut(&item).unwrap();
            for (state, out) in row.iter_mut().enumerate() {
                let (used, visible) = unpack(state);
                *out = match item {
                    Fw(_) | Period => 1 << state,
                    Word(category, article) => {
                        if words.iter().any(|w| w.category == category && article_fits(article, &w.surface)) {
                            1 << state
                        } else {
                            0
                        }
                    }
                    Intro => VARS
                        .iter()
                        .map(|&v| bit(v))
                        .filter(|b| used & b == 0)
                        .fold(0, |acc, b| acc | 1 << pack(used | b, visible | b)),
                    Ref => {
                        if visible != 0 {
                            1 << state
                        } else {
                            0
                        }
                    }
                    Restore(mask) => 1 << pack(used, mask),
                    _ => 0,
                };
            }
        }
        loop {
            let mut changed = false;
            for &item in &items {
                if item.is_terminal() || matches!(item, Restore(_)) {
                    continue;
                }
                for state in 0..64 {
                    let (used, visible) = unpack(state);
                    let probe = Config {
                        stack: Vec::new(),
                        used,
                        visible,
                    };
                    let mut out = 0u64;
                    expand(item, &probe, |rhs| out |= Self::sequence(&table, rhs, 1 << state));
                    let slot = &mut table.get_mut(&item).unwrap()[state];
                    if *slot | out != *slot {
                        *slot |= out;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Summaries(table);
            }
        }
    }

    /// End states of the items read in order, starting from `states`.
    fn sequence<'a>(table: &FxHashMap<Item, [u64; 64]>, items: impl IntoIterator<Item = &'a Item>, states: u64) -> u64 {
        let mut current = states;
        for item in items {
            let row = &table[item];
            let mut next = 0;
            let mut rest = current;
            while rest != 0 {
                let s = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                next |= row[s];
            }
            current = next;
            if current == 0 {
                break;
            }
        }
        current
    }
}

/// Recognizer for the sentences over one lexicon.
pub struct Language {
    words: Vec<Word>,
    summaries: Summaries,
}

impl Language {
    pub fn new(lexicon: &Lexicon) -> Self {
        let words: Vec<Word> = lexicon.words().cloned().collect();
        Language {
            summaries: Summaries::compute(&words),
            words,
        }
    }

    pub fn start(&self) -> OracleState {
        let config = Config {
            stack: vec![Item::Period, Item::Statement],
            used: 0,
            visible: 0,
        };
        self.prune(close(vec![config]))
    }

    /// Every token that can appear in a sentence over this lexicon.
    pub fn universe(&self) -> Vec<Token> {
        let mut out: Vec<Token> = [
            F::Every,
            F::No,
            F::A,
            F::An,
            F::Something,
            F::Everything,
            F::Is,
            F::Not,
            F::Does,
            F::If,
            F::Then,
            F::And,
            F::Or,
            F::It,
            F::False,
            F::That,
            F::Who,
            F::Of,
        ]
        .into_iter()
        .map(Token::Function)
        .collect();
        out.extend(self.words.iter().cloned().map(Token::Word));
        out.extend(VARS.into_iter().map(Token::Variable));
        out.push(Token::Period);
        out
    }

    /// Configurations after `token`, keeping only those that can still
    /// finish.
    pub fn advance(&self, state: &OracleState, token: &Token, var_use: VarUse) -> OracleState {
        let seeds: Vec<Config> = state.0.iter().filter_map(|c| consume(c, token, var_use)).collect();
        if seeds.is_empty() {
            return OracleState::default();
        }
        self.prune(close(seeds))
    }

    fn prune(&self, configs: Vec<Config>) -> OracleState {
        OracleState(configs.into_iter().filter(|c| self.can_finish(c)).collect())
    }

    /// Whether the configuration can be completed to a sentence.
    fn can_finish(&self, config: &Config) -> bool {
        Summaries::sequence(&self.summaries.0, config.stack.iter().rev(), 1 << pack(config.used, config.visible)) != 0
    }

    /// Tokens after which the prefix can still be completed.
    pub fn continuations(&self, state: &OracleState) -> Vec<Token> {
        self.universe()
            .into_iter()
            .filter(|t| !self.advance(state, t, VarUse::Either).is_empty())
            .collect()
    }

    /// Every sentence with at most `max_len` tokens, in lexicographic order
    /// of the token universe.
    pub fn sentences(&self, max_len: usize) -> Vec<Vec<Token>> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.enumerate(&self.start(), &mut prefix, max_len, &mut out);
        out
    }

    fn enumerate(&self, state: &OracleState, prefix: &mut Vec<Token>, max_len: usize, out: &mut Vec<Vec<Token>>) {
        if state.accepts() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        for token in self.continuations(state) {
            let next = self.advance(state, &token, VarUse::Either);
            prefix.push(token);
            self.enumerate(&next, prefix, max_len, out);
            prefix.pop();
        }
    }

    /// Whether the token sequence is a sentence.
    pub fn accepts(&self, tokens: &[Token]) -> bool {
        let mut state = self.start();
        for t in tokens {
            state = self.advance(&state, t, VarUse::Either);
            if state.is_empty() {
                return false;
            }
        }
        state.accepts()
    }
}

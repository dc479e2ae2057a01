//! The sentence grammar compiled to a finite automaton.
//!
//! The grammar has no recursion (predicate lists and condition lists are
//! iterations), so it is a regular language over token classes. It is written
//! as a small regular-expression tree, compiled with Thompson's construction,
//! and recognized by simulating sets of configurations. A configuration pairs
//! an automaton node with the variable scope at that point; scope effects
//! (negation and disjunction closing off bindings) are epsilon actions.
//!
//! For a given set of non-empty word classes the reachable configurations form
//! a finite graph. Liveness (can an accepting configuration still be reached)
//! is computed once per graph by backwards reachability, which is what makes
//! prediction sound and complete: a symbol is offered iff it leads to a live
//! configuration.

use std::collections::{HashMap, VecDeque};

use crate::lexicon::{ClassProfile, WordClass};
use crate::logic::SentencePattern;

use super::restriction::{PatternSet, PatternTracker, TrackerState};
use super::token::{FunctionWord, Token, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Terminal {
    Word(FunctionWord),
    Class(WordClass),
    Intro,
    Ref,
    Period,
}

/// Scope bookkeeping performed on epsilon transitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Action {
    PredStart,
    NegatedPredEnd,
    ListStart,
    And,
    Or,
    ListEnd,
}

/// Input symbol of the configuration graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Word(FunctionWord),
    Class(WordClass),
    Intro(Var),
    Ref(Var),
    Period,
}

impl Symbol {
    pub fn all() -> impl Iterator<Item = Symbol> {
        FunctionWord::ALL
            .into_iter()
            .map(Symbol::Word)
            .chain(WordClass::ALL.into_iter().map(Symbol::Class))
            .chain(Var::ALL.into_iter().map(Symbol::Intro))
            .chain(Var::ALL.into_iter().map(Symbol::Ref))
            .chain(std::iter::once(Symbol::Period))
    }

    /// Symbols a concrete token can stand for.
    pub fn of_token(token: &Token) -> [Option<Symbol>; 2] {
        match token {
            Token::Function(fw) => [Some(Symbol::Word(*fw)), None],
            Token::Word(w) => [Some(Symbol::Class(w.class())), None],
            Token::Variable(v) => [Some(Symbol::Intro(*v)), Some(Symbol::Ref(*v))],
            Token::Period => [Some(Symbol::Period), None],
        }
    }
}

#[derive(Debug, Clone)]
enum Expr {
    T(Terminal),
    Seq(Vec<Expr>),
    Alt(Vec<Expr>),
    Opt(Box<Expr>),
    Star(Box<Expr>),
    Act(Action),
}

fn w(fw: FunctionWord) -> Expr {
    Expr::T(Terminal::Word(fw))
}

fn c(class: WordClass) -> Expr {
    Expr::T(Terminal::Class(class))
}

fn seq(items: impl IntoIterator<Item = Expr>) -> Expr {
    Expr::Seq(items.into_iter().collect())
}

fn alt(items: impl IntoIterator<Item = Expr>) -> Expr {
    Expr::Alt(items.into_iter().collect())
}

fn opt(e: Expr) -> Expr {
    Expr::Opt(Box::new(e))
}

fn star(e: Expr) -> Expr {
    Expr::Star(Box::new(e))
}

fn intro() -> Expr {
    Expr::T(Terminal::Intro)
}

fn var_ref() -> Expr {
    Expr::T(Terminal::Ref)
}

/// The complete sentence grammar.
///
/// ```text
/// Sentence    := Statement '.'
/// Statement   := 'it is false that' Simple | Conditional | Simple
/// Simple      := Subject PredList
/// Subject     := PROPERNAME | ('every'|'no'|'a') NOUN Rel? | 'something' VARINTRO? | 'everything'
/// Rel         := ('who'|'that') TV Object
/// PredList    := Pred (('and'|'or') Pred)*
/// Pred        := 'is' 'not'? 'a' NOUN | 'is' 'not'? 'a' OFNOUN 'of' Object
///              | TV Object | 'does not' TV Object
/// Object      := PROPERNAME | 'a' NOUN VARINTRO? | 'something' VARINTRO? | 'everything' | VARREF
/// Conditional := 'if' Clause ('and' Clause)* 'then' ThenClause
/// Clause      := ('something' VARINTRO? | 'a' NOUN VARINTRO? | VARREF) PredList
/// ThenClause  := (VARREF | 'something' | 'a' NOUN) PredList
/// ```
///
/// `'a' NOUN` stands for `a` before consonant-initial and `an` before
/// vowel-initial words.
fn sentence_expr() -> Expr {
    use FunctionWord as F;

    let art_noun = || {
        alt([
            seq([w(F::A), c(WordClass::NounConsonant)]),
            seq([w(F::An), c(WordClass::NounVowel)]),
        ])
    };
    let art_of = || {
        alt([
            seq([w(F::A), c(WordClass::OfConsonant)]),
            seq([w(F::An), c(WordClass::OfVowel)]),
        ])
    };
    let noun = || alt([c(WordClass::NounConsonant), c(WordClass::NounVowel)]);
    let object = || {
        alt([
            c(WordClass::ProperName),
            seq([art_noun(), opt(intro())]),
            seq([w(F::Something), opt(intro())]),
            w(F::Everything),
            var_ref(),
        ])
    };
    let rel = || seq([alt([w(F::Who), w(F::That)]), c(WordClass::Verb), object()]);
    let pred = || {
        seq([
            Expr::Act(Action::PredStart),
            alt([
                seq([w(F::Is), art_noun()]),
                seq([w(F::Is), w(F::Not), art_noun()]),
                seq([w(F::Is), art_of(), w(F::Of), object()]),
                seq([
                    w(F::Is),
                    w(F::Not),
                    art_of(),
                    w(F::Of),
                    object(),
                    Expr::Act(Action::NegatedPredEnd),
                ]),
                seq([c(WordClass::Verb), object()]),
                seq([
                    w(F::Does),
                    w(F::Not),
                    c(WordClass::Verb),
                    object(),
                    Expr::Act(Action::NegatedPredEnd),
                ]),
            ]),
        ])
    };
    let pred_list = || {
        seq([
            Expr::Act(Action::ListStart),
            pred(),
            star(seq([
                alt([
                    seq([Expr::Act(Action::And), w(F::And)]),
                    seq([Expr::Act(Action::Or), w(F::Or)]),
                ]),
                pred(),
            ])),
            Expr::Act(Action::ListEnd),
        ])
    };
    let subject = alt([
        c(WordClass::ProperName),
        seq([alt([w(F::Every), w(F::No)]), noun(), opt(rel())]),
        seq([art_noun(), opt(rel())]),
        seq([w(F::Something), opt(intro())]),
        w(F::Everything),
    ]);
    let simple = || seq([subject.clone(), pred_list()]);
    let clause = || {
        seq([
            alt([
                seq([w(F::Something), opt(intro())]),
                seq([art_noun(), opt(intro())]),
                var_ref(),
            ]),
            pred_list(),
        ])
    };
    let then_clause = seq([alt([var_ref(), w(F::Something), art_noun()]), pred_list()]);
    let conditional = seq([w(F::If), clause(), star(seq([w(F::And), clause()])), w(F::Then), then_clause]);
    let statement = alt([
        seq([w(F::It), w(F::Is), w(F::False), w(F::That), simple()]),
        conditional,
        simple(),
    ]);
    seq([statement, Expr::T(Terminal::Period)])
}

#[derive(Debug, Default)]
struct Node {
    eps: Vec<(Option<Action>, usize)>,
    term: Option<(Terminal, usize)>,
}

#[derive(Debug)]
pub(crate) struct Nfa {
    nodes: Vec<Node>,
    start: usize,
    accept: usize,
}

impl Nfa {
    pub(crate) fn sentence() -> Self {
        let mut nfa = Nfa {
            nodes: Vec::new(),
            start: 0,
            accept: 0,
        };
        let (start, accept) = nfa.build(&sentence_expr());
        nfa.start = start;
        nfa.accept = accept;
        nfa
    }

    fn node(&mut self) -> usize {
        self.nodes.push(Node::default());
        self.nodes.len() - 1
    }

    fn eps(&mut self, from: usize, to: usize) {
        self.nodes[from].eps.push((None, to));
    }

    fn build(&mut self, expr: &Expr) -> (usize, usize) {
        match expr {
            Expr::T(t) => {
                let (s, e) = (self.node(), self.node());
                self.nodes[s].term = Some((*t, e));
                (s, e)
            }
            Expr::Act(a) => {
                let (s, e) = (self.node(), self.node());
                self.nodes[s].eps.push((Some(*a), e));
                (s, e)
            }
            Expr::Seq(items) => {
                let s = self.node();
                let mut cur = s;
                for item in items {
                    let (is, ie) = self.build(item);
                    self.eps(cur, is);
                    cur = ie;
                }
                (s, cur)
            }
            Expr::Alt(items) => {
                let (s, e) = (self.node(), self.node());
                for item in items {
                    let (is, ie) = self.build(item);
                    self.eps(s, is);
                    self.eps(ie, e);
                }
                (s, e)
            }
            Expr::Opt(inner) => {
                let (s, e) = (self.node(), self.node());
                let (is, ie) = self.build(inner);
                self.eps(s, is);
                self.eps(ie, e);
                self.eps(s, e);
                (s, e)
            }
            Expr::Star(inner) => {
                let (s, e) = (self.node(), self.node());
                let (is, ie) = self.build(inner);
                self.eps(s, is);
                self.eps(s, e);
                self.eps(ie, is);
                self.eps(ie, e);
                (s, e)
            }
        }
    }

    /// Number of distinct accepting paths for `symbols`, ignoring scope
    /// checks on variables (these never create alternatives).
    pub(crate) fn count_paths(&self, symbols: &[Symbol]) -> u64 {
        let mut current: HashMap<usize, u64> = HashMap::new();
        self.eps_paths(self.start, 1, &mut current);
        for symbol in symbols {
            let mut next: HashMap<usize, u64> = HashMap::new();
            for (&node, &count) in &current {
                if let Some((t, to)) = self.nodes[node].term {
                    if terminal_matches(t, *symbol) {
                        self.eps_paths(to, count, &mut next);
                    }
                }
            }
            current = next;
        }
        current.get(&self.accept).copied().unwrap_or(0)
    }

    fn eps_paths(&self, node: usize, count: u64, out: &mut HashMap<usize, u64>) {
        let n = &self.nodes[node];
        if n.term.is_some() || node == self.accept {
            *out.entry(node).or_default() += count;
        }
        for &(_, to) in &n.eps {
            self.eps_paths(to, count, out);
        }
    }
}

fn terminal_matches(t: Terminal, s: Symbol) -> bool {
    match (t, s) {
        (Terminal::Word(a), Symbol::Word(b)) => a == b,
        (Terminal::Class(a), Symbol::Class(b)) => a == b,
        (Terminal::Intro, Symbol::Intro(_)) | (Terminal::Ref, Symbol::Ref(_)) => true,
        (Terminal::Period, Symbol::Period) => true,
        _ => false,
    }
}

/// Variable bindings visible at a point of the sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub(crate) struct Scope {
    /// Variables introduced anywhere so far (names must stay distinct).
    used: u8,
    /// Variables that may be referenced here.
    accessible: u8,
    /// Introduced within the current predicate list.
    list_vars: u8,
    /// Introduced within the current predicate.
    pred_vars: u8,
    /// The current predicate is the right operand of `or`.
    right_disjunct: bool,
}

impl Scope {
    fn apply(mut self, action: Action) -> Scope {
        match action {
            Action::PredStart => self.pred_vars = 0,
            Action::NegatedPredEnd => self.accessible &= !self.pred_vars,
            Action::ListStart => {
                self.list_vars = 0;
                self.pred_vars = 0;
                self.right_disjunct = false;
            }
            Action::And => {
                if self.right_disjunct {
                    self.accessible &= !self.pred_vars;
                    self.right_disjunct = false;
                }
            }
            Action::Or => {
                self.accessible &= !self.list_vars;
                self.right_disjunct = true;
            }
            Action::ListEnd => {
                if self.right_disjunct {
                    self.accessible &= !self.pred_vars;
                }
            }
        }
        self
    }

    fn introduce(mut self, v: Var) -> Option<Scope> {
        if self.used & v.bit() != 0 {
            return None;
        }
        self.used |= v.bit();
        self.accessible |= v.bit();
        self.list_vars |= v.bit();
        self.pred_vars |= v.bit();
        Some(self)
    }

    pub(crate) fn can_reference(self, v: Var) -> bool {
        self.accessible & v.bit() != 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Config {
    node: u32,
    scope: Scope,
    tracker: u32,
}

/// All configurations reachable for one class profile (and optional pattern
/// restriction), with liveness precomputed.
#[derive(Debug)]
pub(crate) struct ConfigGraph {
    configs: Vec<Config>,
    edges: Vec<Vec<(Symbol, u32)>>,
    live: Vec<bool>,
    accepting: Vec<bool>,
    initial: Vec<u32>,
}

struct GraphBuilder<'a> {
    nfa: &'a Nfa,
    profile: ClassProfile,
    tracker: Option<(&'a PatternTracker, &'a PatternSet)>,
    trackers: Vec<TrackerState>,
    tracker_index: HashMap<TrackerState, u32>,
    configs: Vec<Config>,
    index: HashMap<Config, u32>,
    queue: VecDeque<u32>,
}

impl<'a> GraphBuilder<'a> {
    fn intern_tracker(&mut self, state: TrackerState) -> u32 {
        if let Some(&id) = self.tracker_index.get(&state) {
            return id;
        }
        let id = self.trackers.len() as u32;
        self.trackers.push(state.clone());
        self.tracker_index.insert(state, id);
        id
    }

    fn intern(&mut self, config: Config) -> u32 {
        if let Some(&id) = self.index.get(&config) {
            return id;
        }
        let id = self.configs.len() as u32;
        self.configs.push(config);
        self.index.insert(config, id);
        self.queue.push_back(id);
        id
    }

    /// Follows epsilon edges from `node`, interning every configuration that
    /// sits on a terminal edge or on the accepting node.
    fn closure(&mut self, node: usize, scope: Scope, tracker: u32, out: &mut Vec<u32>) {
        let mut stack = vec![(node, scope)];
        let mut seen = std::collections::HashSet::new();
        while let Some((node, scope)) = stack.pop() {
            if !seen.insert((node, scope)) {
                continue;
            }
            let n = &self.nfa.nodes[node];
            if n.term.is_some() || node == self.nfa.accept {
                let id = self.intern(Config {
                    node: node as u32,
                    scope,
                    tracker,
                });
                out.push(id);
            }
            for &(action, to) in &n.eps {
                let next = match action {
                    Some(a) => scope.apply(a),
                    None => scope,
                };
                stack.push((to, next));
            }
        }
    }

    fn symbols_for(&self, t: Terminal, scope: Scope) -> Vec<(Symbol, Scope)> {
        match t {
            Terminal::Word(fw) => vec![(Symbol::Word(fw), scope)],
            Terminal::Class(class) if self.profile.contains(class) => vec![(Symbol::Class(class), scope)],
            Terminal::Class(_) => Vec::new(),
            Terminal::Intro => Var::ALL
                .into_iter()
                .filter_map(|v| scope.introduce(v).map(|s| (Symbol::Intro(v), s)))
                .collect(),
            Terminal::Ref => Var::ALL
                .into_iter()
                .filter(|v| scope.can_reference(*v))
                .map(|v| (Symbol::Ref(v), scope))
                .collect(),
            Terminal::Period => vec![(Symbol::Period, scope)],
        }
    }

    fn build(mut self) -> ConfigGraph {
        let initial_tracker = match self.tracker {
            Some((t, _)) => t.initial(),
            None => TrackerState::default(),
        };
        let t0 = self.intern_tracker(initial_tracker);
        let mut initial = Vec::new();
        self.closure(self.nfa.start, Scope::default(), t0, &mut initial);
        initial.sort_unstable();
        initial.dedup();

        let mut edges: Vec<Vec<(Symbol, u32)>> = Vec::new();
        while let Some(id) = self.queue.pop_front() {
            let config = self.configs[id as usize];
            let mut out = Vec::new();
            if let Some((t, to)) = self.nfa.nodes[config.node as usize].term {
                for (symbol, scope) in self.symbols_for(t, config.scope) {
                    let tracker = match self.tracker {
                        Some((tracker, _)) => {
                            let next = tracker.step(&self.trackers[config.tracker as usize], symbol);
                            self.intern_tracker(next)
                        }
                        None => config.tracker,
                    };
                    let mut targets = Vec::new();
                    self.closure(to, scope, tracker, &mut targets);
                    out.extend(targets.into_iter().map(|target| (symbol, target)));
                }
            }
            out.sort_unstable();
            out.dedup();
            if edges.len() <= id as usize {
                edges.resize_with(id as usize + 1, Vec::new);
            }
            edges[id as usize] = out;
        }
        edges.resize_with(self.configs.len(), Vec::new);

        let accepting: Vec<bool> = self
            .configs
            .iter()
            .map(|config| {
                config.node as usize == self.nfa.accept
                    && match self.tracker {
                        Some((tracker, allowed)) => {
                            let pattern: SentencePattern =
                                tracker.final_pattern(&self.trackers[config.tracker as usize]);
                            allowed.contains(&pattern)
                        }
                        None => true,
                    }
            })
            .collect();

        // Backwards reachability from accepting configurations.
        let mut reverse: Vec<Vec<u32>> = vec![Vec::new(); self.configs.len()];
        for (from, out) in edges.iter().enumerate() {
            for &(_, to) in out {
                reverse[to as usize].push(from as u32);
            }
        }
        let mut live = accepting.clone();
        let mut stack: Vec<u32> = (0..self.configs.len() as u32).filter(|&i| live[i as usize]).collect();
        while let Some(id) = stack.pop() {
            for &from in &reverse[id as usize] {
                if !live[from as usize] {
                    live[from as usize] = true;
                    stack.push(from);
                }
            }
        }

        let initial = initial.into_iter().filter(|&i| live[i as usize]).collect();
        ConfigGraph {
            configs: self.configs,
            edges,
            live,
            accepting,
            initial,
        }
    }
}

impl ConfigGraph {
    pub(crate) fn build(
        nfa: &Nfa,
        profile: ClassProfile,
        restriction: Option<(&PatternTracker, &PatternSet)>,
    ) -> ConfigGraph {
        GraphBuilder {
            nfa,
            profile,
            tracker: restriction,
            trackers: Vec::new(),
            tracker_index: HashMap::new(),
            configs: Vec::new(),
            index: HashMap::new(),
            queue: VecDeque::new(),
        }
        .build()
    }

    pub(crate) fn initial(&self) -> Vec<u32> {
        self.initial.clone()
    }

    /// Live successors of `configs` on `symbol`.
    pub(crate) fn step(&self, configs: &[u32], symbol: Symbol) -> Vec<u32> {
        let mut next: Vec<u32> = configs
            .iter()
            .flat_map(|&id| self.edges[id as usize].iter())
            .filter(|&&(s, to)| s == symbol && self.live[to as usize])
            .map(|&(_, to)| to)
            .collect();
        next.sort_unstable();
        next.dedup();
        next
    }

    pub(crate) fn step_token(&self, configs: &[u32], token: &Token) -> Vec<u32> {
        let mut next = Vec::new();
        for symbol in Symbol::of_token(token).into_iter().flatten() {
            next.extend(self.step(configs, symbol));
        }
        next.sort_unstable();
        next.dedup();
        next
    }

    /// Symbols with at least one live successor.
    pub(crate) fn legal_symbols(&self, configs: &[u32]) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = configs
            .iter()
            .flat_map(|&id| self.edges[id as usize].iter())
            .filter(|&&(_, to)| self.live[to as usize])
            .map(|&(s, _)| s)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn is_accepting(&self, configs: &[u32]) -> bool {
        configs.iter().any(|&id| self.accepting[id as usize])
    }

    /// Whether `v` may be referenced in at least one of `configs`.
    pub(crate) fn any_can_reference(&self, configs: &[u32], v: Var) -> bool {
        configs.iter().any(|&id| self.configs[id as usize].scope.can_reference(v))
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.configs.len()
    }
}

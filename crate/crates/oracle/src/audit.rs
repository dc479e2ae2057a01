//! Exhaustive comparison of prediction menus with the reference recognizer.
//!
//! The search walks the product of engine states and reference states one
//! token at a time. Both sides are deterministic in their state, so a pair
//! that was audited once never needs to be expanded again, and the walk
//! covers every prefix of every length.

use rustc_hash::FxHashMap;

use cnlwiki::grammar::{Grammar, PrefixState, Prediction, Recognizer, Token};
use cnlwiki::lexicon::Lexicon;

use crate::language::{Language, OracleState, VarUse};

/// Outcome of auditing one lexicon.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Audit {
    /// Distinct (engine, reference) state pairs examined.
    pub states: usize,
    /// Prefixes of at most `prefix_depth` tokens covered by the walk.
    pub prefixes: u128,
    /// Sentences of at most `sentence_depth` tokens.
    pub sentences: u128,
    /// Menu entries that cannot be completed to a sentence.
    pub dead_entries: Vec<String>,
    /// Legal continuations that no menu entry offers.
    pub missing: Vec<String>,
}

impl Audit {
    pub fn is_clean(&self) -> bool {
        self.dead_entries.is_empty() && self.missing.is_empty()
    }
}

fn show(tokens: &[Token]) -> String {
    tokens.iter().map(Token::surface).collect::<Vec<_>>().join(" ")
}

struct Walk<'a> {
    lexicon: &'a Lexicon,
    recognizer: Recognizer,
    language: Language,
    universe: Vec<Token>,
    index: FxHashMap<(PrefixState, OracleState), usize>,
    edges: Vec<Vec<usize>>,
    accepting: Vec<bool>,
    audit: Audit,
}

/// Audits the menus of `grammar` for every prefix over `lexicon`. The depths
/// only bound the prefix and sentence counts reported.
pub fn audit_prediction(grammar: &Grammar, lexicon: &Lexicon, prefix_depth: usize, sentence_depth: usize) -> Audit {
    let language = Language::new(lexicon);
    let mut walk = Walk {
        lexicon,
        recognizer: grammar.recognizer(lexicon.profile()),
        universe: language.universe(),
        language,
        index: FxHashMap::default(),
        edges: Vec::new(),
        accepting: Vec::new(),
        audit: Audit::default(),
    };
    let start = (walk.recognizer.start(), walk.language.start());
    if start.0.is_dead() || start.1.is_empty() {
        if start.0.is_dead() != start.1.is_empty() {
            walk.audit.missing.push("<the empty prefix>".into());
        }
        return walk.audit;
    }
    let root = walk.visit(start);
    walk.audit.states = walk.edges.len();
    walk.audit.prefixes = count_paths(&walk.edges, root, prefix_depth, &|_| true);
    let accepting = std::mem::take(&mut walk.accepting);
    walk.audit.sentences = count_paths(&walk.edges, root, sentence_depth, &|n| accepting[n]);
    walk.audit
}

impl Walk<'_> {
    fn visit(&mut self, start: (PrefixState, OracleState)) -> usize {
        let id = self.edges.len();
        self.index.insert(start.clone(), id);
        self.edges.push(Vec::new());
        self.accepting.push(false);
        let mut stack = vec![(start, id, Vec::<Token>::new())];
        while let Some(((engine, reference), id, prefix)) = stack.pop() {
            self.accepting[id] = reference.accepts();
            if self.recognizer.accepts(&engine) != reference.accepts() {
                self.audit
                    .missing
                    .push(format!("engine and reference disagree on whether `{}` is a sentence", show(&prefix)));
            }
            let prediction = self.recognizer.prediction(&engine, self.lexicon);
            let successors: Vec<(Token, OracleState)> = self
                .universe
                .iter()
                .map(|t| (t.clone(), self.language.advance(&reference, t, VarUse::Either)))
                .collect();
            self.check(&reference, &successors, &prediction, &prefix);
            for (token, next_reference) in successors {
                let next_engine = self.recognizer.advance(&engine, &token);
                match (next_engine, next_reference.is_empty()) {
                    (None, true) => {}
                    (Some(_), true) => {
                        let mut p = prefix.clone();
                        p.push(token);
                        self.audit.dead_entries.push(format!("engine accepts dead prefix `{}`", show(&p)));
                    }
                    (None, false) => {
                        let mut p = prefix.clone();
                        p.push(token);
                        self.audit.missing.push(format!("engine rejects live prefix `{}`", show(&p)));
                    }
                    (Some(next_engine), false) => {
                        let key = (next_engine, next_reference);
                        let target = match self.index.get(&key) {
                            Some(&t) => t,
                            None => {
                                let t = self.edges.len();
                                self.index.insert(key.clone(), t);
                                self.edges.push(Vec::new());
                                self.accepting.push(false);
                                let mut p = prefix.clone();
                                p.push(token);
                                stack.push((key, t, p));
                                t
                            }
                        };
                        self.edges[id].push(target);
                    }
                }
            }
        }
        id
    }

    fn live_after(&self, state: &OracleState, tokens: &[Token], last_use: VarUse) -> OracleState {
        let mut state = state.clone();
        for (i, t) in tokens.iter().enumerate() {
            let var_use = if i + 1 == tokens.len() { last_use } else { VarUse::Either };
            state = self.language.advance(&state, t, var_use);
        }
        state
    }

    fn check(
        &mut self,
        reference: &OracleState,
        successors: &[(Token, OracleState)],
        prediction: &Prediction,
        prefix: &[Token],
    ) {
        let entries = prediction.entries();
        for entry in &entries {
            if matches!(entry.as_slice(), [Token::Variable(_)]) {
                continue;
            }
            if self.live_after(reference, entry, VarUse::Either).is_empty() {
                self.audit
                    .dead_entries
                    .push(format!("`{}` offers `{}`", show(prefix), show(entry)));
            }
        }
        for &v in &prediction.var_intro_menu {
            if self.live_after(reference, &[Token::Variable(v)], VarUse::Intro).is_empty() {
                self.audit
                    .dead_entries
                    .push(format!("`{}` offers new variable {v}", show(prefix)));
            }
        }
        for &v in &prediction.var_ref_menu {
            if self.live_after(reference, &[Token::Variable(v)], VarUse::Ref).is_empty() {
                self.audit
                    .dead_entries
                    .push(format!("`{}` offers reference {v}", show(prefix)));
            }
        }

        let finishes = successors.iter().any(|(t, s)| *t == Token::Period && !s.is_empty());
        if finishes != prediction.can_finish {
            let list = if finishes { &mut self.audit.missing } else { &mut self.audit.dead_entries };
            list.push(format!("`{}` can finish: {finishes}", show(prefix)));
        }

        for (token, after) in successors {
            if after.is_empty() {
                continue;
            }
            if let Token::Variable(v) = *token {
                let intro = !self.live_after(reference, std::slice::from_ref(token), VarUse::Intro).is_empty();
                let reference_use = !self.live_after(reference, std::slice::from_ref(token), VarUse::Ref).is_empty();
                if intro && !prediction.var_intro_menu.contains(&v) {
                    self.audit.missing.push(format!("`{}` lacks new variable {v}", show(prefix)));
                }
                if reference_use && !prediction.var_ref_menu.contains(&v) {
                    self.audit.missing.push(format!("`{}` lacks reference {v}", show(prefix)));
                }
                continue;
            }
            let suffixes: Vec<&[Token]> = entries
                .iter()
                .filter(|e| e.first() == Some(token))
                .map(|e| &e[1..])
                .collect();
            if !self.covers(after, &suffixes) {
                self.audit.missing.push(format!(
                    "`{}` has a continuation starting with `{}` that no entry reaches",
                    show(prefix),
                    token.surface()
                ));
            }
        }
    }

    /// Whether every completion of `state` begins with one of `suffixes`.
    fn covers(&self, state: &OracleState, suffixes: &[&[Token]]) -> bool {
        if suffixes.iter().any(|s| s.is_empty()) {
            return true;
        }
        if suffixes.is_empty() {
            return false;
        }
        self.language.continuations(state).into_iter().all(|t| {
            let rest: Vec<&[Token]> = suffixes.iter().filter(|s| s[0] == t).map(|s| &s[1..]).collect();
            let next = self.language.advance(state, &t, VarUse::Either);
            self.covers(&next, &rest)
        })
    }
}

/// Number of walks of at most `depth` edges from `root` that end in a node
/// satisfying `counted`.
fn count_paths(edges: &[Vec<usize>], root: usize, depth: usize, counted: &dyn Fn(usize) -> bool) -> u128 {
    // ways[n] = walks from n of at most `left` edges, built up from left = 0.
    let mut ways: Vec<u128> = (0..edges.len()).map(|n| counted(n) as u128).collect();
    for _ in 0..depth {
        ways = (0..edges.len())
            .map(|n| counted(n) as u128 + edges[n].iter().map(|&m| ways[m]).sum::<u128>())
            .collect();
    }
    ways[root]
}

//! Parse trees of single sentences.

use crate::lexicon::Word;

use super::token::Var;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SentenceAst {
    Simple(Simple),
    /// `it is false that …`
    Negated(Simple),
    /// `if … then …`
    Conditional(Conditional),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Simple {
    pub subject: Subject,
    pub predicates: PredList,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subject {
    ProperName(Word),
    Every(Word, Option<RelClause>),
    No(Word, Option<RelClause>),
    A(Word, Option<RelClause>),
    Something(Option<Var>),
    Everything,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelPronoun {
    Who,
    That,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelClause {
    pub pronoun: RelPronoun,
    pub verb: Word,
    pub object: Object,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Or,
}

/// Non-empty predicate sequence; connectives group strictly to the left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PredList {
    pub first: Predicate,
    pub rest: Vec<(Connective, Predicate)>,
}

impl PredList {
    pub fn single(predicate: Predicate) -> Self {
        PredList {
            first: predicate,
            rest: Vec::new(),
        }
    }

    pub fn predicates(&self) -> impl Iterator<Item = &Predicate> {
        std::iter::once(&self.first).chain(self.rest.iter().map(|(_, p)| p))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Predicate {
    IsA(Word),
    IsNotA(Word),
    IsRoleOf(Word, Object),
    IsNotRoleOf(Word, Object),
    Verb(Word, Object),
    DoesNotVerb(Word, Object),
}

impl Predicate {
    pub fn is_negated(&self) -> bool {
        matches!(
            self,
            Predicate::IsNotA(_) | Predicate::IsNotRoleOf(..) | Predicate::DoesNotVerb(..)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Object {
    ProperName(Word),
    A(Word, Option<Var>),
    Something(Option<Var>),
    Everything,
    VarRef(Var),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conditional {
    /// Non-empty; clauses are joined by `and`.
    pub conditions: Vec<Clause>,
    pub consequent: ThenClause,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub subject: ClauseSubject,
    pub predicates: PredList,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClauseSubject {
    Something(Option<Var>),
    A(Word, Option<Var>),
    VarRef(Var),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThenClause {
    pub subject: ThenSubject,
    pub predicates: PredList,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ThenSubject {
    VarRef(Var),
    Something,
    A(Word),
}

impl SentenceAst {
    /// Every content word in order of occurrence (with repetitions).
    pub fn words(&self) -> Vec<&Word> {
        let mut out = Vec::new();
        match self {
            SentenceAst::Simple(s) | SentenceAst::Negated(s) => simple_words(s, &mut out),
            SentenceAst::Conditional(c) => {
                for clause in &c.conditions {
                    if let ClauseSubject::A(n, _) = &clause.subject {
                        out.push(n);
                    }
                    predlist_words(&clause.predicates, &mut out);
                }
                if let ThenSubject::A(n) = &c.consequent.subject {
                    out.push(n);
                }
                predlist_words(&c.consequent.predicates, &mut out);
            }
        }
        out
    }
}

fn simple_words<'a>(s: &'a Simple, out: &mut Vec<&'a Word>) {
    match &s.subject {
        Subject::ProperName(w) => out.push(w),
        Subject::Every(n, rel) | Subject::No(n, rel) | Subject::A(n, rel) => {
            out.push(n);
            if let Some(rel) = rel {
                out.push(&rel.verb);
                object_words(&rel.object, out);
            }
        }
        Subject::Something(_) | Subject::Everything => {}
    }
    predlist_words(&s.predicates, out);
}

fn predlist_words<'a>(list: &'a PredList, out: &mut Vec<&'a Word>) {
    for p in list.predicates() {
        match p {
            Predicate::IsA(n) | Predicate::IsNotA(n) => out.push(n),
            Predicate::IsRoleOf(w, o)
            | Predicate::IsNotRoleOf(w, o)
            | Predicate::Verb(w, o)
            | Predicate::DoesNotVerb(w, o) => {
                out.push(w);
                object_words(o, out);
            }
        }
    }
}

fn object_words<'a>(o: &'a Object, out: &mut Vec<&'a Word>) {
    match o {
        Object::ProperName(w) | Object::A(w, _) => out.push(w),
        Object::Something(_) | Object::Everything | Object::VarRef(_) => {}
    }
}

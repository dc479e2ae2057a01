use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::{
    verbalize, ClauseSubject, Conditional, FunctionWord, Object, PredList, Predicate, SentenceAst, Simple,
    Subject, ThenSubject, Token, Var,
};

/// Shape classes of sentences, used for article boxes and statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SentencePattern {
    /// `every N is a N`
    ConceptInclusion,
    /// `it is false that every N is a N`
    ConceptInclusionNegated,
    /// `PN is a N`
    IndividualAssignment,
    /// `PN is not a N`, `it is false that PN is a N`
    IndividualAssignmentNegated,
    /// `PN tv PN`, `PN is a R of PN`
    RoleInstance,
    /// `PN does not tv PN`, `PN is not a R of PN`, `it is false that PN tv PN`
    RoleInstanceNegated,
    /// `if something X tv something Y then X tv Y`
    RoleInclusion,
    /// `if something X tv something [Y] then X is a N`
    DomainRestriction,
    /// `if something [X] tv something Y then Y is a N`
    RangeRestriction,
    /// Any simple sentence whose subject is `a N`.
    Existential,
    Other,
}

impl SentencePattern {
    pub const ALL: [SentencePattern; 11] = [
        SentencePattern::ConceptInclusion,
        SentencePattern::ConceptInclusionNegated,
        SentencePattern::IndividualAssignment,
        SentencePattern::IndividualAssignmentNegated,
        SentencePattern::RoleInstance,
        SentencePattern::RoleInstanceNegated,
        SentencePattern::RoleInclusion,
        SentencePattern::DomainRestriction,
        SentencePattern::RangeRestriction,
        SentencePattern::Existential,
        SentencePattern::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SentencePattern::ConceptInclusion => "ConceptInclusion",
            SentencePattern::ConceptInclusionNegated => "ConceptInclusionNegated",
            SentencePattern::IndividualAssignment => "IndividualAssignment",
            SentencePattern::IndividualAssignmentNegated => "IndividualAssignmentNegated",
            SentencePattern::RoleInstance => "RoleInstance",
            SentencePattern::RoleInstanceNegated => "RoleInstanceNegated",
            SentencePattern::RoleInclusion => "RoleInclusion",
            SentencePattern::DomainRestriction => "DomainRestriction",
            SentencePattern::RangeRestriction => "RangeRestriction",
            SentencePattern::Existential => "Existential",
            SentencePattern::Other => "Other",
        }
    }
}

impl fmt::Display for SentencePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown sentence pattern `{0}`")]
pub struct UnknownPattern(pub String);

impl FromStr for SentencePattern {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownPattern(s.to_string()))
    }
}

fn single(list: &PredList) -> Option<&Predicate> {
    list.rest.is_empty().then_some(&list.first)
}

fn is_name(o: &Object) -> bool {
    matches!(o, Object::ProperName(_))
}

/// Pattern of a parsed sentence.
pub fn pattern_of(ast: &SentenceAst) -> SentencePattern {
    use SentencePattern as P;
    match ast {
        SentenceAst::Simple(s) => simple_pattern(s),
        SentenceAst::Negated(s) => match simple_pattern(s) {
            P::ConceptInclusion => P::ConceptInclusionNegated,
            P::IndividualAssignment => P::IndividualAssignmentNegated,
            P::RoleInstance => P::RoleInstanceNegated,
            _ => P::Other,
        },
        SentenceAst::Conditional(c) => conditional_pattern(c),
    }
}

fn simple_pattern(s: &Simple) -> SentencePattern {
    use SentencePattern as P;
    match (&s.subject, single(&s.predicates)) {
        (Subject::Every(_, None), Some(Predicate::IsA(_))) => P::ConceptInclusion,
        (Subject::ProperName(_), Some(Predicate::IsA(_))) => P::IndividualAssignment,
        (Subject::ProperName(_), Some(Predicate::IsNotA(_))) => P::IndividualAssignmentNegated,
        (Subject::ProperName(_), Some(Predicate::Verb(_, o) | Predicate::IsRoleOf(_, o))) if is_name(o) => {
            P::RoleInstance
        }
        (Subject::ProperName(_), Some(Predicate::DoesNotVerb(_, o) | Predicate::IsNotRoleOf(_, o)))
            if is_name(o) =>
        {
            P::RoleInstanceNegated
        }
        (Subject::A(..), _) => P::Existential,
        _ => P::Other,
    }
}

fn conditional_pattern(c: &Conditional) -> SentencePattern {
    use SentencePattern as P;
    let [clause] = c.conditions.as_slice() else {
        return P::Other;
    };
    let ClauseSubject::Something(x) = clause.subject else {
        return P::Other;
    };
    let y = match single(&clause.predicates) {
        Some(Predicate::Verb(_, Object::Something(y)) | Predicate::IsRoleOf(_, Object::Something(y))) => *y,
        _ => return P::Other,
    };
    let ThenSubject::VarRef(subject) = c.consequent.subject else {
        return P::Other;
    };
    let bound = |v: Option<Var>| v == Some(subject);
    match single(&c.consequent.predicates) {
        Some(Predicate::Verb(_, Object::VarRef(o)) | Predicate::IsRoleOf(_, Object::VarRef(o)))
            if bound(x) && y == Some(*o) =>
        {
            P::RoleInclusion
        }
        Some(Predicate::IsA(_)) if bound(x) => P::DomainRestriction,
        Some(Predicate::IsA(_)) if bound(y) => P::RangeRestriction,
        _ => P::Other,
    }
}

/// Whether a sentence contains a negation (`does not`, `is not`, `no`,
/// `it is false that`) and whether it contains an implication (`if … then`,
/// `every`, `no`).
pub fn contains_neg_or_impl(ast: &SentenceAst) -> (bool, bool) {
    let tokens = verbalize(ast);
    let has = |words: &[FunctionWord]| {
        tokens
            .iter()
            .any(|t| matches!(t, Token::Function(fw) if words.contains(fw)))
    };
    (
        has(&[FunctionWord::Not, FunctionWord::No, FunctionWord::False]),
        has(&[FunctionWord::If, FunctionWord::Every, FunctionWord::No]),
    )
}

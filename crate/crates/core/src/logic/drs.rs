//! Discourse representation structures and the translation from parse trees.

use std::collections::HashMap;
use std::fmt;

use crate::grammar::{
    ClauseSubject, Object, PredList, Predicate, RelClause, SentenceAst, Simple, Subject, ThenSubject, Var,
};

/// A discourse referent, printed `x1`, `x2`, ….
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Referent(pub u32);

impl fmt::Display for Referent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// An individual named by a proper name.
    Constant(String),
    Referent(Referent),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(c) => f.write_str(c),
            Term::Referent(r) => r.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Condition {
    Concept { concept: String, term: Term },
    Role { role: String, subject: Term, object: Term },
    Negation(Drs),
    /// Referents of the antecedent scope over the consequent.
    Implication(Drs, Drs),
    Disjunction(Drs, Drs),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Drs {
    pub referents: Vec<Referent>,
    pub conditions: Vec<Condition>,
}

impl Drs {
    pub fn new(referents: Vec<Referent>, conditions: Vec<Condition>) -> Self {
        Drs { referents, conditions }
    }

    fn absorb(&mut self, other: Drs) {
        self.referents.extend(other.referents);
        self.conditions.extend(other.conditions);
    }

    /// Applies `f` to every referent, declarations and occurrences alike.
    pub fn rename(&self, f: &impl Fn(Referent) -> Referent) -> Drs {
        let term = |t: &Term| match t {
            Term::Referent(r) => Term::Referent(f(*r)),
            c => c.clone(),
        };
        Drs {
            referents: self.referents.iter().map(|r| f(*r)).collect(),
            conditions: self
                .conditions
                .iter()
                .map(|c| match c {
                    Condition::Concept { concept, term: t } => Condition::Concept {
                        concept: concept.clone(),
                        term: term(t),
                    },
                    Condition::Role { role, subject, object } => Condition::Role {
                        role: role.clone(),
                        subject: term(subject),
                        object: term(object),
                    },
                    Condition::Negation(d) => Condition::Negation(d.rename(f)),
                    Condition::Implication(a, b) => Condition::Implication(a.rename(f), b.rename(f)),
                    Condition::Disjunction(a, b) => Condition::Disjunction(a.rename(f), b.rename(f)),
                })
                .collect(),
        }
    }
}

impl fmt::Display for Drs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Drs([")?;
        for (i, r) in self.referents.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("], [")?;
        for (i, c) in self.conditions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("])")
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Concept { concept, term } => write!(f, "{concept}({term})"),
            Condition::Role { role, subject, object } => write!(f, "{role}({subject}, {object})"),
            Condition::Negation(d) => write!(f, "Negation({d})"),
            Condition::Implication(a, b) => write!(f, "Implication({a}, {b})"),
            Condition::Disjunction(a, b) => write!(f, "Disjunction({a}, {b})"),
        }
    }
}

fn concept(name: &str, term: Term) -> Condition {
    Condition::Concept {
        concept: name.to_string(),
        term,
    }
}

fn role(name: String, subject: Term, object: Term) -> Condition {
    Condition::Role { role: name, subject, object }
}

/// Translates a parse tree to its discourse representation structure.
pub fn ast_to_drs(ast: &SentenceAst) -> Drs {
    Translator::default().sentence(ast)
}

#[derive(Default)]
struct Translator {
    next: u32,
    vars: HashMap<Var, Referent>,
}

impl Translator {
    fn fresh(&mut self, v: Option<Var>) -> Referent {
        self.next += 1;
        let r = Referent(self.next);
        if let Some(v) = v {
            self.vars.insert(v, r);
        }
        r
    }

    fn var(&self, v: Var) -> Term {
        Term::Referent(self.vars[&v])
    }

    fn sentence(&mut self, ast: &SentenceAst) -> Drs {
        let mut drs = Drs::default();
        match ast {
            SentenceAst::Simple(s) => self.simple(s, &mut drs),
            SentenceAst::Negated(s) => {
                let mut inner = Drs::default();
                self.simple(s, &mut inner);
                drs.conditions.push(Condition::Negation(inner));
            }
            SentenceAst::Conditional(c) => {
                let mut antecedent = Drs::default();
                for clause in &c.conditions {
                    let subject = match &clause.subject {
                        ClauseSubject::Something(v) => {
                            let x = self.fresh(*v);
                            antecedent.referents.push(x);
                            Term::Referent(x)
                        }
                        ClauseSubject::A(n, v) => {
                            let x = self.fresh(*v);
                            antecedent.referents.push(x);
                            antecedent.conditions.push(concept(&n.entity_name(), Term::Referent(x)));
                            Term::Referent(x)
                        }
                        ClauseSubject::VarRef(v) => self.var(*v),
                    };
                    self.pred_list(&clause.predicates, &subject, &mut antecedent);
                }
                let mut consequent = Drs::default();
                let subject = match &c.consequent.subject {
                    ThenSubject::VarRef(v) => self.var(*v),
                    ThenSubject::Something => {
                        let x = self.fresh(None);
                        consequent.referents.push(x);
                        Term::Referent(x)
                    }
                    ThenSubject::A(n) => {
                        let x = self.fresh(None);
                        consequent.referents.push(x);
                        consequent.conditions.push(concept(&n.entity_name(), Term::Referent(x)));
                        Term::Referent(x)
                    }
                };
                self.pred_list(&c.consequent.predicates, &subject, &mut consequent);
                drs.conditions.push(Condition::Implication(antecedent, consequent));
            }
        }
        drs
    }

    fn simple(&mut self, s: &Simple, out: &mut Drs) {
        match &s.subject {
            Subject::ProperName(w) => {
                let subject = Term::Constant(w.entity_name());
                self.pred_list(&s.predicates, &subject, out);
            }
            Subject::Every(n, rel) | Subject::No(n, rel) => {
                let x = self.fresh(None);
                let subject = Term::Referent(x);
                let mut restrictor = Drs::new(vec![x], vec![concept(&n.entity_name(), subject.clone())]);
                if let Some(rel) = rel {
                    self.rel(rel, &subject, &mut restrictor);
                }
                let mut scope = Drs::default();
                self.pred_list(&s.predicates, &subject, &mut scope);
                if matches!(s.subject, Subject::No(..)) {
                    scope = Drs::new(Vec::new(), vec![Condition::Negation(scope)]);
                }
                out.conditions.push(Condition::Implication(restrictor, scope));
            }
            Subject::A(n, rel) => {
                let x = self.fresh(None);
                let subject = Term::Referent(x);
                out.referents.push(x);
                out.conditions.push(concept(&n.entity_name(), subject.clone()));
                if let Some(rel) = rel {
                    self.rel(rel, &subject, out);
                }
                self.pred_list(&s.predicates, &subject, out);
            }
            Subject::Something(v) => {
                let x = self.fresh(*v);
                out.referents.push(x);
                self.pred_list(&s.predicates, &Term::Referent(x), out);
            }
            Subject::Everything => {
                let x = self.fresh(None);
                let mut scope = Drs::default();
                self.pred_list(&s.predicates, &Term::Referent(x), &mut scope);
                out.conditions
                    .push(Condition::Implication(Drs::new(vec![x], Vec::new()), scope));
            }
        }
    }

    fn rel(&mut self, rel: &RelClause, subject: &Term, out: &mut Drs) {
        self.role(rel.verb.entity_name(), subject, &rel.object, out);
    }

    /// Conjunction extends the current structure; `or` wraps everything
    /// accumulated so far as the left disjunct.
    fn pred_list(&mut self, list: &PredList, subject: &Term, out: &mut Drs) {
        let mut acc = Drs::default();
        self.predicate(&list.first, subject, &mut acc);
        for (connective, p) in &list.rest {
            match connective {
                crate::grammar::Connective::And => self.predicate(p, subject, &mut acc),
                crate::grammar::Connective::Or => {
                    let mut right = Drs::default();
                    self.predicate(p, subject, &mut right);
                    acc = Drs::new(Vec::new(), vec![Condition::Disjunction(acc, right)]);
                }
            }
        }
        out.absorb(acc);
    }

    fn predicate(&mut self, p: &Predicate, subject: &Term, out: &mut Drs) {
        match p {
            Predicate::IsA(n) => out.conditions.push(concept(&n.entity_name(), subject.clone())),
            Predicate::IsNotA(n) => out.conditions.push(Condition::Negation(Drs::new(
                Vec::new(),
                vec![concept(&n.entity_name(), subject.clone())],
            ))),
            Predicate::IsRoleOf(r, o) | Predicate::Verb(r, o) => self.role(r.entity_name(), subject, o, out),
            Predicate::IsNotRoleOf(r, o) | Predicate::DoesNotVerb(r, o) => {
                let mut inner = Drs::default();
                self.role(r.entity_name(), subject, o, &mut inner);
                out.conditions.push(Condition::Negation(inner));
            }
        }
    }

    fn role(&mut self, name: String, subject: &Term, object: &Object, out: &mut Drs) {
        match object {
            Object::ProperName(w) => out
                .conditions
                .push(role(name, subject.clone(), Term::Constant(w.entity_name()))),
            Object::A(n, v) => {
                let y = self.fresh(*v);
                out.referents.push(y);
                out.conditions.push(concept(&n.entity_name(), Term::Referent(y)));
                out.conditions.push(role(name, subject.clone(), Term::Referent(y)));
            }
            Object::Something(v) => {
                let y = self.fresh(*v);
                out.referents.push(y);
                out.conditions.push(role(name, subject.clone(), Term::Referent(y)));
            }
            Object::Everything => {
                let y = self.fresh(None);
                out.conditions.push(Condition::Implication(
                    Drs::new(vec![y], Vec::new()),
                    Drs::new(Vec::new(), vec![role(name, subject.clone(), Term::Referent(y))]),
                ));
            }
            Object::VarRef(v) => {
                let object = self.var(*v);
                out.conditions.push(role(name, subject.clone(), object));
            }
        }
    }
}

//! Reader, sort checker and evaluator for the functional axiom notation
//! (`SubClassOf(and(person, some(writes, Thing)), author)` and so on).
//!
//! Works on the printed text only, so it shares nothing with the classifier
//! beyond the notation.

use std::fmt;

use crate::semantics::{Interpretation, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Class {
    Thing,
    Named(String),
    Not(Box<Class>),
    And(Box<Class>, Box<Class>),
    Or(Box<Class>, Box<Class>),
    Some(String, Box<Class>),
    SomeValue(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    SubClassOf(Class, Class),
    DisjointClasses(String, String),
    ClassAssertion(Class, String),
    NegativeClassAssertion(String, String),
    RoleAssertion(String, String, String),
    NegativeRoleAssertion(String, String, String),
    SubRoleOf(String, String),
    RoleDomain(String, Class),
    RoleRange(String, Class),
    AnonymousAssertion(Class),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwlError(pub String);

impl fmt::Display for OwlError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for OwlError {}

/// A term of the notation before sorts are assigned.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Term {
    Atom(String),
    Apply(String, Vec<Term>),
}

fn parse_term(text: &str) -> Result<Term, OwlError> {
    let mut rest = text.trim();
    let term = term(&mut rest)?;
    if !rest.trim().is_empty() {
        return Err(OwlError(format!("trailing text `{rest}`")));
    }
    Ok(term)
}

fn term(rest: &mut &str) -> Result<Term, OwlError> {
    *rest = rest.trim_start();
    let end = rest
        .find(|c: char| c == '(' || c == ')' || c == ',' || c.is_whitespace())
        .unwrap_or(rest.len());
    if end == 0 {
        return Err(OwlError(format!("expected a name at `{rest}`")));
    }
    let name = rest[..end].to_string();
    *rest = rest[end..].trim_start();
    let Some(after) = rest.strip_prefix('(') else {
        return Ok(Term::Atom(name));
    };
    *rest = after;
    let mut args = vec![term(rest)?];
    loop {
        *rest = rest.trim_start();
        if let Some(after) = rest.strip_prefix(',') {
            *rest = after;
            args.push(term(rest)?);
        } else if let Some(after) = rest.strip_prefix(')') {
            *rest = after;
            return Ok(Term::Apply(name, args));
        } else {
            return Err(OwlError(format!("expected `,` or `)` at `{rest}`")));
        }
    }
}

#[derive(Clone, Copy)]
enum Sort {
    Concept,
    Role,
    Individual,
}

struct Checker<'a>(&'a Signature);

impl Checker<'_> {
    fn name(&self, term: &Term, sort: Sort) -> Result<String, OwlError> {
        let Term::Atom(name) = term else {
            return Err(OwlError(format!("expected a name, found {term:?}")));
        };
        let (list, what) = match sort {
            Sort::Concept => (&self.0.concepts, "concept"),
            Sort::Role => (&self.0.roles, "role"),
            Sort::Individual => (&self.0.constants, "individual"),
        };
        if list.contains(name) {
            Ok(name.clone())
        } else {
            Err(OwlError(format!("`{name}` is not a {what}")))
        }
    }

    fn class(&self, term: &Term) -> Result<Class, OwlError> {
        match term {
            Term::Atom(name) if name == "Thing" => Ok(Class::Thing),
            Term::Atom(_) => Ok(Class::Named(self.name(term, Sort::Concept)?)),
            Term::Apply(f, args) => match (f.as_str(), args.as_slice()) {
                ("not", [a]) => Ok(Class::Not(Box::new(self.class(a)?))),
                ("and", [a, b]) => Ok(Class::And(Box::new(self.class(a)?), Box::new(self.class(b)?))),
                ("or", [a, b]) => Ok(Class::Or(Box::new(self.class(a)?), Box::new(self.class(b)?))),
                ("some", [r, c]) => Ok(Class::Some(self.name(r, Sort::Role)?, Box::new(self.class(c)?))),
                ("someValue", [r, i]) => Ok(Class::SomeValue(
                    self.name(r, Sort::Role)?,
                    self.name(i, Sort::Individual)?,
                )),
                _ => Err(OwlError(format!("`{f}` with {} arguments is not a class", args.len()))),
            },
        }
    }

    fn statement(&self, term: &Term) -> Result<Statement, OwlError> {
        use Sort::*;
        let Term::Apply(f, args) = term else {
            return Err(OwlError(format!("{term:?} is not an axiom")));
        };
        Ok(match (f.as_str(), args.as_slice()) {
            ("SubClassOf", [a, b]) => Statement::SubClassOf(self.class(a)?, self.class(b)?),
            ("DisjointClasses", [a, b]) => Statement::DisjointClasses(self.name(a, Concept)?, self.name(b, Concept)?),
            ("ClassAssertion", [c, i]) => Statement::ClassAssertion(self.class(c)?, self.name(i, Individual)?),
            ("NegativeClassAssertion", [c, i]) => {
                Statement::NegativeClassAssertion(self.name(c, Concept)?, self.name(i, Individual)?)
            }
            ("RoleAssertion", [r, a, b]) => Statement::RoleAssertion(
                self.name(r, Role)?,
                self.name(a, Individual)?,
                self.name(b, Individual)?,
            ),
            ("NegativeRoleAssertion", [r, a, b]) => Statement::NegativeRoleAssertion(
                self.name(r, Role)?,
                self.name(a, Individual)?,
                self.name(b, Individual)?,
            ),
            ("SubRoleOf", [r, s]) => Statement::SubRoleOf(self.name(r, Role)?, self.name(s, Role)?),
            ("RoleDomain", [r, c]) => Statement::RoleDomain(self.name(r, Role)?, self.class(c)?),
            ("RoleRange", [r, c]) => Statement::RoleRange(self.name(r, Role)?, self.class(c)?),
            ("AnonymousAssertion", [c]) => Statement::AnonymousAssertion(self.class(c)?),
            _ => return Err(OwlError(format!("`{f}` with {} arguments is not an axiom", args.len()))),
        })
    }
}

/// Reads an axiom and checks every name against the sorts of `signature`.
pub fn parse_statement(text: &str, signature: &Signature) -> Result<Statement, OwlError> {
    Checker(signature).statement(&parse_term(text)?)
}

impl Interpretation<'_> {
    fn extension(&self, class: &Class) -> u64 {
        let all = (1u64 << self.size) - 1;
        match class {
            Class::Thing => all,
            Class::Named(c) => self.concept_named(c),
            Class::Not(c) => all & !self.extension(c),
            Class::And(a, b) => self.extension(a) & self.extension(b),
            Class::Or(a, b) => self.extension(a) | self.extension(b),
            Class::Some(r, c) => {
                let fillers = self.extension(c);
                (0..self.size)
                    .filter(|&a| (0..self.size).any(|b| fillers & (1 << b) != 0 && self.role_named(r, a, b)))
                    .fold(0, |acc, a| acc | 1 << a)
            }
            Class::SomeValue(r, i) => {
                let b = self.constant_named(i);
                (0..self.size)
                    .filter(|&a| self.role_named(r, a, b))
                    .fold(0, |acc, a| acc | 1 << a)
            }
        }
    }

    fn pairs(&self, r: &str) -> impl Iterator<Item = (usize, usize)> + '_ {
        let r = r.to_string();
        (0..self.size)
            .flat_map(move |a| (0..self.size).map(move |b| (a, b)))
            .filter(move |&(a, b)| self.role_named(&r, a, b))
    }

    /// Truth of an axiom under this interpretation.
    pub fn holds(&self, statement: &Statement) -> bool {
        let member = |c: &Class, a: usize| self.extension(c) & (1 << a) != 0;
        match statement {
            Statement::SubClassOf(a, b) => self.extension(a) & !self.extension(b) == 0,
            Statement::DisjointClasses(a, b) => self.concept_named(a) & self.concept_named(b) == 0,
            Statement::ClassAssertion(c, i) => member(c, self.constant_named(i)),
            Statement::NegativeClassAssertion(c, i) => self.concept_named(c) & (1 << self.constant_named(i)) == 0,
            Statement::RoleAssertion(r, a, b) => self.role_named(r, self.constant_named(a), self.constant_named(b)),
            Statement::NegativeRoleAssertion(r, a, b) => {
                !self.role_named(r, self.constant_named(a), self.constant_named(b))
            }
            Statement::SubRoleOf(r, s) => self.pairs(r).all(|(a, b)| self.role_named(s, a, b)),
            Statement::RoleDomain(r, c) => self.pairs(r).all(|(a, _)| member(c, a)),
            Statement::RoleRange(r, c) => self.pairs(r).all(|(_, b)| member(c, b)),
            Statement::AnonymousAssertion(c) => self.extension(c) != 0,
        }
    }
}

//! Ontology axioms in a functional text notation.

use std::fmt;

use super::drs::Drs;

/// Class expressions over named concepts, roles and individuals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassExpr {
    Concept(String),
    Not(Box<ClassExpr>),
    And(Box<ClassExpr>, Box<ClassExpr>),
    Or(Box<ClassExpr>, Box<ClassExpr>),
    Some(String, Box<ClassExpr>),
    SomeValue(String, String),
    Thing,
}

impl ClassExpr {
    pub fn concept(name: &str) -> Self {
        ClassExpr::Concept(name.to_string())
    }

    pub fn complement(ce: ClassExpr) -> Self {
        ClassExpr::Not(Box::new(ce))
    }

    pub fn and(a: ClassExpr, b: ClassExpr) -> Self {
        ClassExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: ClassExpr, b: ClassExpr) -> Self {
        ClassExpr::Or(Box::new(a), Box::new(b))
    }

    pub fn some(role: &str, ce: ClassExpr) -> Self {
        ClassExpr::Some(role.to_string(), Box::new(ce))
    }

    /// Left-nested conjunction; `Thing` for no conjuncts.
    pub fn conjunction(parts: Vec<ClassExpr>) -> Self {
        parts.into_iter().reduce(ClassExpr::and).unwrap_or(ClassExpr::Thing)
    }

    pub fn as_concept(&self) -> Option<&str> {
        match self {
            ClassExpr::Concept(c) => Some(c),
            _ => None,
        }
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassExpr::Concept(c) => f.write_str(c),
            ClassExpr::Not(ce) => write!(f, "not({ce})"),
            ClassExpr::And(a, b) => write!(f, "and({a}, {b})"),
            ClassExpr::Or(a, b) => write!(f, "or({a}, {b})"),
            ClassExpr::Some(r, ce) => write!(f, "some({r}, {ce})"),
            ClassExpr::SomeValue(r, i) => write!(f, "someValue({r}, {i})"),
            ClassExpr::Thing => f.write_str("Thing"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AxiomKind {
    SubClassOf(ClassExpr, ClassExpr),
    DisjointClasses(String, String),
    ClassAssertion(ClassExpr, String),
    NegativeClassAssertion(String, String),
    RoleAssertion(String, String, String),
    NegativeRoleAssertion(String, String, String),
    SubRoleOf(String, String),
    RoleDomain(String, ClassExpr),
    RoleRange(String, ClassExpr),
    /// Assertion about an anonymous individual.
    AnonymousAssertion(ClassExpr),
    NotOwl(Drs),
}

/// A classified logical form. Everything except `NotOwl` lies within the
/// ontology language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub kind: AxiomKind,
}

impl Axiom {
    pub fn new(kind: AxiomKind) -> Self {
        Axiom { kind }
    }

    pub fn owl_compatible(&self) -> bool {
        !matches!(self.kind, AxiomKind::NotOwl(_))
    }

    /// `blue` for ontology axioms, `red` otherwise.
    pub fn triangle(&self) -> &'static str {
        if self.owl_compatible() {
            "blue"
        } else {
            "red"
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            AxiomKind::SubClassOf(..) => "SubClassOf",
            AxiomKind::DisjointClasses(..) => "DisjointClasses",
            AxiomKind::ClassAssertion(..) => "ClassAssertion",
            AxiomKind::NegativeClassAssertion(..) => "NegativeClassAssertion",
            AxiomKind::RoleAssertion(..) => "RoleAssertion",
            AxiomKind::NegativeRoleAssertion(..) => "NegativeRoleAssertion",
            AxiomKind::SubRoleOf(..) => "SubRoleOf",
            AxiomKind::RoleDomain(..) => "RoleDomain",
            AxiomKind::RoleRange(..) => "RoleRange",
            AxiomKind::AnonymousAssertion(..) => "AnonymousAssertion",
            AxiomKind::NotOwl(_) => "NotOwl",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.kind_name();
        match &self.kind {
            AxiomKind::SubClassOf(a, b) => write!(f, "{name}({a}, {b})"),
            AxiomKind::DisjointClasses(a, b) => write!(f, "{name}({a}, {b})"),
            AxiomKind::ClassAssertion(ce, i) => write!(f, "{name}({ce}, {i})"),
            AxiomKind::NegativeClassAssertion(c, i) => write!(f, "{name}({c}, {i})"),
            AxiomKind::RoleAssertion(r, a, b) | AxiomKind::NegativeRoleAssertion(r, a, b) => {
                write!(f, "{name}({r}, {a}, {b})")
            }
            AxiomKind::SubRoleOf(a, b) => write!(f, "{name}({a}, {b})"),
            AxiomKind::RoleDomain(r, ce) | AxiomKind::RoleRange(r, ce) => write!(f, "{name}({r}, {ce})"),
            AxiomKind::AnonymousAssertion(ce) => write!(f, "{name}({ce})"),
            AxiomKind::NotOwl(_) => f.write_str(name),
        }
    }
}

//! Forward-chaining saturation over the atomic part of the ontology, and
//! semantic ranking of menu words.
//!
//! Only named classes take part in reasoning. Conjunctions of named classes
//! and value restrictions inside assertions are split into atomic facts; all
//! other axioms are stored but inert. The rules are subclass and subrole
//! transitivity, propagation of class membership along subclasses and of role
//! facts along subroles, and domain/range firing on role facts.
//!
//! ```
//! use cnlwiki::logic::{Axiom, AxiomKind, ClassExpr};
//! use cnlwiki::reasoner::KnowledgeBase;
//!
//! let mut kb = KnowledgeBase::new();
//! kb.assert_axiom(Axiom::new(AxiomKind::RoleRange("flows-through".into(), ClassExpr::concept("city"))));
//! kb.assert_axiom(Axiom::new(AxiomKind::RoleAssertion(
//!     "flows-through".into(),
//!     "Limmat".into(),
//!     "Zurich".into(),
//! )));
//! assert!(kb.instances_of("city").contains("Zurich"));
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::lexicon::{sort_alphabetically, Word};
use crate::logic::{Axiom, AxiomKind, ClassExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("axiom `{0}` is not in the knowledge base")]
    UnknownAxiom(String),
}

/// Where a menu word will stand relative to the role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    Subject,
    Object,
}

/// An atomic fact in the saturation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fact {
    SubClass(String, String),
    SubRole(String, String),
    Instance(String, String),
    RoleFact(String, String, String),
    Domain(String, String),
    Range(String, String),
}

/// Named classes of a conjunction of named classes, if it is one.
fn named_conjuncts(ce: &ClassExpr) -> Option<Vec<String>> {
    match ce {
        ClassExpr::Concept(c) => Some(vec![c.clone()]),
        ClassExpr::And(a, b) => {
            let mut out = named_conjuncts(a)?;
            out.extend(named_conjuncts(b)?);
            Some(out)
        }
        _ => None,
    }
}

/// The atomic facts an axiom contributes.
pub fn atomic_facts(axiom: &Axiom) -> Vec<Fact> {
    let mut out = Vec::new();
    match &axiom.kind {
        AxiomKind::SubClassOf(ClassExpr::Concept(a), sup) => {
            if let Some(cs) = named_conjuncts(sup) {
                out.extend(cs.into_iter().map(|c| Fact::SubClass(a.clone(), c)));
            }
        }
        AxiomKind::SubRoleOf(r, s) => out.push(Fact::SubRole(r.clone(), s.clone())),
        AxiomKind::ClassAssertion(ce, i) => {
            fn split(ce: &ClassExpr, i: &str, out: &mut Vec<Fact>) -> bool {
                match ce {
                    ClassExpr::Concept(c) => out.push(Fact::Instance(i.to_string(), c.clone())),
                    ClassExpr::SomeValue(r, k) => out.push(Fact::RoleFact(r.clone(), i.to_string(), k.clone())),
                    ClassExpr::And(a, b) => return split(a, i, out) && split(b, i, out),
                    _ => return false,
                }
                true
            }
            let mut facts = Vec::new();
            if split(ce, i, &mut facts) {
                out.extend(facts);
            }
        }
        AxiomKind::RoleAssertion(r, a, b) => out.push(Fact::RoleFact(r.clone(), a.clone(), b.clone())),
        AxiomKind::RoleDomain(r, ce) => {
            if let Some(cs) = named_conjuncts(ce) {
                out.extend(cs.into_iter().map(|c| Fact::Domain(r.clone(), c)));
            }
        }
        AxiomKind::RoleRange(r, ce) => {
            if let Some(cs) = named_conjuncts(ce) {
                out.extend(cs.into_iter().map(|c| Fact::Range(r.clone(), c)));
            }
        }
        _ => {}
    }
    out
}

type Relation = BTreeMap<String, BTreeSet<String>>;

fn add(rel: &mut Relation, a: &str, b: &str) -> bool {
    rel.entry(a.to_string()).or_default().insert(b.to_string())
}

fn get<'r>(rel: &'r Relation, a: &str) -> impl Iterator<Item = &'r String> {
    rel.get(a).into_iter().flatten()
}

/// The axioms of a wiki and their saturated consequences.
#[derive(Debug, Clone, Default)]
pub struct KnowledgeBase {
    axioms: Vec<Axiom>,
    /// concept → ancestors (reflexive)
    ancestors: Relation,
    descendants: Relation,
    role_ancestors: Relation,
    role_descendants: Relation,
    /// individual → concepts
    types: Relation,
    /// concept → individuals
    members: Relation,
    /// role → (subject, object)
    facts: BTreeMap<String, BTreeSet<(String, String)>>,
    /// declared on the role itself
    domains: Relation,
    ranges: Relation,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a knowledge base from scratch.
    pub fn from_axioms<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> Self {
        let mut kb = Self::new();
        for a in axioms {
            kb.assert_axiom(a.clone());
        }
        kb
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    /// Adds an axiom and saturates incrementally. Duplicates and axioms
    /// outside the ontology language are ignored.
    pub fn assert_axiom(&mut self, axiom: Axiom) {
        if !axiom.owl_compatible() || self.contains(&axiom) {
            return;
        }
        let facts = atomic_facts(&axiom);
        self.axioms.push(axiom);
        self.saturate(facts);
    }

    /// Removes an axiom; derived state is recomputed from the remaining ones.
    pub fn retract_axiom(&mut self, axiom: &Axiom) -> Result<(), ReasonerError> {
        let Some(index) = self.axioms.iter().position(|a| a == axiom) else {
            return Err(ReasonerError::UnknownAxiom(axiom.to_string()));
        };
        let mut remaining = std::mem::take(&mut self.axioms);
        remaining.remove(index);
        *self = Self::from_axioms(&remaining);
        Ok(())
    }

    fn touch_concept(&mut self, c: &str, work: &mut Vec<Fact>) {
        if !self.ancestors.contains_key(c) {
            work.push(Fact::SubClass(c.to_string(), c.to_string()));
        }
    }

    fn touch_role(&mut self, r: &str, work: &mut Vec<Fact>) {
        if !self.role_ancestors.contains_key(r) {
            work.push(Fact::SubRole(r.to_string(), r.to_string()));
        }
    }

    fn touch_individual(&mut self, i: &str) {
        self.types.entry(i.to_string()).or_default();
    }

    fn saturate(&mut self, mut work: Vec<Fact>) {
        while let Some(fact) = work.pop() {
            match fact {
                Fact::SubClass(a, b) => {
                    self.touch_concept(&a, &mut work);
                    self.touch_concept(&b, &mut work);
                    if !add(&mut self.ancestors, &a, &b) {
                        continue;
                    }
                    add(&mut self.descendants, &b, &a);
                    for x in get(&self.descendants, &a) {
                        work.push(Fact::SubClass(x.clone(), b.clone()));
                    }
                    for y in get(&self.ancestors, &b) {
                        work.push(Fact::SubClass(a.clone(), y.clone()));
                    }
                    for i in get(&self.members, &a) {
                        work.push(Fact::Instance(i.clone(), b.clone()));
                    }
                }
                Fact::SubRole(r, s) => {
                    self.touch_role(&r, &mut work);
                    self.touch_role(&s, &mut work);
                    if !add(&mut self.role_ancestors, &r, &s) {
                        continue;
                    }
                    add(&mut self.role_descendants, &s, &r);
                    for x in get(&self.role_descendants, &r) {
                        work.push(Fact::SubRole(x.clone(), s.clone()));
                    }
                    for y in get(&self.role_ancestors, &s) {
                        work.push(Fact::SubRole(r.clone(), y.clone()));
                    }
                    for (a, b) in self.facts.get(&r).into_iter().flatten() {
                        work.push(Fact::RoleFact(s.clone(), a.clone(), b.clone()));
                    }
                }
                Fact::Instance(i, c) => {
                    self.touch_individual(&i);
                    self.touch_concept(&c, &mut work);
                    if !add(&mut self.types, &i, &c) {
                        continue;
                    }
                    add(&mut self.members, &c, &i);
                    for d in get(&self.ancestors, &c) {
                        work.push(Fact::Instance(i.clone(), d.clone()));
                    }
                }
                Fact::RoleFact(r, a, b) => {
                    self.touch_role(&r, &mut work);
                    self.touch_individual(&a);
                    self.touch_individual(&b);
                    if !self.facts.entry(r.clone()).or_default().insert((a.clone(), b.clone())) {
                        continue;
                    }
                    for s in get(&self.role_ancestors, &r) {
                        work.push(Fact::RoleFact(s.clone(), a.clone(), b.clone()));
                    }
                    for c in get(&self.domains, &r) {
                        work.push(Fact::Instance(a.clone(), c.clone()));
                    }
                    for c in get(&self.ranges, &r) {
                        work.push(Fact::Instance(b.clone(), c.clone()));
                    }
                }
                Fact::Domain(r, c) => {
                    self.touch_role(&r, &mut work);
                    self.touch_concept(&c, &mut work);
                    if !add(&mut self.domains, &r, &c) {
                        continue;
                    }
                    for (a, _) in self.facts.get(&r).into_iter().flatten() {
                        work.push(Fact::Instance(a.clone(), c.clone()));
                    }
                }
                Fact::Range(r, c) => {
                    self.touch_role(&r, &mut work);
                    self.touch_concept(&c, &mut work);
                    if !add(&mut self.ranges, &r, &c) {
                        continue;
                    }
                    for (_, b) in self.facts.get(&r).into_iter().flatten() {
                        work.push(Fact::Instance(b.clone(), c.clone()));
                    }
                }
            }
        }
    }

    pub fn ancestors(&self, concept: &str) -> BTreeSet<String> {
        self.ancestors.get(concept).cloned().unwrap_or_default()
    }

    pub fn role_ancestors(&self, role: &str) -> BTreeSet<String> {
        self.role_ancestors.get(role).cloned().unwrap_or_default()
    }

    /// Individuals derived to belong to `concept`; empty for unknown names.
    pub fn instances_of(&self, concept: &str) -> BTreeSet<String> {
        self.members.get(concept).cloned().unwrap_or_default()
    }

    pub fn types_of(&self, individual: &str) -> BTreeSet<String> {
        self.types.get(individual).cloned().unwrap_or_default()
    }

    /// Role facts, closed under subroles.
    pub fn role_facts(&self, role: &str) -> BTreeSet<(String, String)> {
        self.facts.get(role).cloned().unwrap_or_default()
    }

    /// Classes declared as domain (subject position) or range (object
    /// position) of the role or any of its super-roles.
    pub fn expected_classes(&self, role: &str, position: Position) -> BTreeSet<String> {
        let table = match position {
            Position::Subject => &self.domains,
            Position::Object => &self.ranges,
        };
        self.role_ancestors(role)
            .iter()
            .chain(std::iter::once(&role.to_string()))
            .flat_map(|r| get(table, r).cloned().collect::<Vec<_>>())
            .collect()
    }

    /// Proper names known to fit the role position first, then the rest;
    /// both parts alphabetical.
    pub fn rank_individuals(&self, role: &str, position: Position, candidates: &[Word]) -> Vec<Word> {
        let expected = self.expected_classes(role, position);
        rank(candidates, |w| {
            self.types.get(&w.entity_name()).is_some_and(|t| !t.is_disjoint(&expected))
        })
    }

    /// Nouns subsumed by a class expected at the role position first, then
    /// the rest; both parts alphabetical.
    pub fn rank_concepts(&self, role: &str, position: Position, candidates: &[Word]) -> Vec<Word> {
        let expected = self.expected_classes(role, position);
        rank(candidates, |w| {
            let name = w.entity_name();
            expected.contains(&name) || self.ancestors.get(&name).is_some_and(|a| !a.is_disjoint(&expected))
        })
    }

    /// Canonical text rendering of every derived table.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut relation = |label: &str, rel: &Relation| {
            for (k, vs) in rel {
                let _ = write!(out, "{label} {k}:");
                for v in vs {
                    let _ = write!(out, " {v}");
                }
                out.push('\n');
            }
        };
        relation("ancestors", &self.ancestors);
        relation("role-ancestors", &self.role_ancestors);
        relation("types", &self.types);
        relation("domain", &self.domains);
        relation("range", &self.ranges);
        for (r, pairs) in &self.facts {
            for (a, b) in pairs {
                let _ = writeln!(out, "fact {r} {a} {b}");
            }
        }
        out
    }
}

fn rank(candidates: &[Word], suitable: impl Fn(&Word) -> bool) -> Vec<Word> {
    let (mut first, mut rest): (Vec<Word>, Vec<Word>) = candidates.iter().cloned().partition(|w| suitable(w));
    sort_alphabetically(&mut first);
    sort_alphabetically(&mut rest);
    first.extend(rest);
    first
}

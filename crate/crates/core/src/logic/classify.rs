//! Classification of discourse structures into ontology axioms.
//!
//! Class expressions are read off tree-shaped parts of a structure: starting
//! from a root term, concept atoms become named classes, role atoms leading to
//! a fresh local referent become existential restrictions, role atoms leading
//! to a named individual become value restrictions, and negations and
//! disjunctions over the same root become complements and unions. Anything
//! that does not fit this shape (inverse roles, shared referents, nested
//! universals) is rejected.

use super::axiom::{Axiom, AxiomKind, ClassExpr};
use super::drs::{Condition, Drs, Referent, Term};

/// Classifies a structure; the first matching rule wins.
///
/// 1. a lone ground atom gives a class or role assertion;
/// 2. a negated lone ground atom gives a negative assertion;
/// 3. a class expression rooted at the one named subject gives a class assertion;
/// 4. an implication whose antecedent is a lone role atom between two
///    referents gives a subrole, domain or range axiom;
/// 5. any other top-level implication gives a subclass axiom (disjointness for
///    a named class against a negated named class);
/// 6. a top-level existential gives an anonymous assertion;
/// 7. everything else is outside the ontology language.
pub fn classify(drs: &Drs) -> Axiom {
    Axiom::new(classify_kind(drs).unwrap_or_else(|| AxiomKind::NotOwl(drs.clone())))
}

fn classify_kind(drs: &Drs) -> Option<AxiomKind> {
    if drs.referents.is_empty() && drs.conditions.len() == 1 {
        if let Some(kind) = ground_atom(&drs.conditions[0], false) {
            return Some(kind);
        }
        if let Condition::Negation(inner) = &drs.conditions[0] {
            if inner.referents.is_empty() && inner.conditions.len() == 1 {
                if let Some(kind) = ground_atom(&inner.conditions[0], true) {
                    return Some(kind);
                }
            }
        }
    }

    if let Some(k) = single_named_subject(drs) {
        if let Some(ce) = compile(&Term::Constant(k.clone()), drs) {
            return Some(AxiomKind::ClassAssertion(ce, k));
        }
    }

    if drs.referents.is_empty() && drs.conditions.len() == 1 {
        if let Condition::Implication(antecedent, consequent) = &drs.conditions[0] {
            if let Some((role, x, y)) = lone_role(antecedent) {
                return role_axiom(role, x, y, consequent);
            }
            let root = Term::Referent(*antecedent.referents.first()?);
            let sub = compile(&root, antecedent)?;
            let sup = compile(&root, consequent)?;
            if let (ClassExpr::Concept(a), ClassExpr::Not(b)) = (&sub, &sup) {
                if let ClassExpr::Concept(b) = b.as_ref() {
                    return Some(AxiomKind::DisjointClasses(a.clone(), b.clone()));
                }
            }
            return Some(AxiomKind::SubClassOf(sub, sup));
        }
    }

    let root = Term::Referent(*drs.referents.first()?);
    compile(&root, drs).map(AxiomKind::AnonymousAssertion)
}

fn ground_atom(condition: &Condition, negated: bool) -> Option<AxiomKind> {
    match condition {
        Condition::Concept {
            concept,
            term: Term::Constant(k),
        } => Some(if negated {
            AxiomKind::NegativeClassAssertion(concept.clone(), k.clone())
        } else {
            AxiomKind::ClassAssertion(ClassExpr::Concept(concept.clone()), k.clone())
        }),
        Condition::Role {
            role,
            subject: Term::Constant(a),
            object: Term::Constant(b),
        } => Some(if negated {
            AxiomKind::NegativeRoleAssertion(role.clone(), a.clone(), b.clone())
        } else {
            AxiomKind::RoleAssertion(role.clone(), a.clone(), b.clone())
        }),
        _ => None,
    }
}

fn lone_role(drs: &Drs) -> Option<(&str, Referent, Referent)> {
    match drs.conditions.as_slice() {
        [Condition::Role {
            role,
            subject: Term::Referent(x),
            object: Term::Referent(y),
        }] if x != y && drs.referents.len() == 2 && drs.referents.contains(x) && drs.referents.contains(y) => {
            Some((role, *x, *y))
        }
        _ => None,
    }
}

fn role_axiom(role: &str, x: Referent, y: Referent, consequent: &Drs) -> Option<AxiomKind> {
    if let [Condition::Role {
        role: sup,
        subject: Term::Referent(a),
        object: Term::Referent(b),
    }] = consequent.conditions.as_slice()
    {
        if consequent.referents.is_empty() && *a == x && *b == y {
            return Some(AxiomKind::SubRoleOf(role.to_string(), sup.clone()));
        }
    }
    if let Some(ce) = compile(&Term::Referent(x), consequent) {
        return Some(AxiomKind::RoleDomain(role.to_string(), ce));
    }
    compile(&Term::Referent(y), consequent).map(|ce| AxiomKind::RoleRange(role.to_string(), ce))
}

/// The named individual that is the subject of the top-level conditions, if
/// there is exactly one.
fn single_named_subject(drs: &Drs) -> Option<String> {
    let mut found: Option<String> = None;
    for c in &drs.conditions {
        if let Some(Term::Constant(k)) = anchor(c) {
            match &found {
                Some(f) if *f != k => return None,
                _ => found = Some(k),
            }
        }
    }
    found
}

/// The term a condition describes: the argument of a concept atom, the
/// subject of a role atom, or the single free subject of a nested structure.
fn anchor(condition: &Condition) -> Option<Term> {
    match condition {
        Condition::Concept { term, .. } => Some(term.clone()),
        Condition::Role { subject, .. } => Some(subject.clone()),
        Condition::Negation(d) => single(free_subjects(std::slice::from_ref(d))),
        Condition::Disjunction(a, b) => single(free_subjects(&[a.clone(), b.clone()])),
        Condition::Implication(..) => None,
    }
}

fn single(mut terms: Vec<Term>) -> Option<Term> {
    terms.dedup();
    match terms.as_slice() {
        [t] => Some(t.clone()),
        _ => None,
    }
}

fn free_subjects(drss: &[Drs]) -> Vec<Term> {
    fn walk(drs: &Drs, bound: &mut Vec<Referent>, out: &mut Vec<Term>) {
        let mark = bound.len();
        bound.extend(&drs.referents);
        for c in &drs.conditions {
            match c {
                Condition::Concept { term, .. } | Condition::Role { subject: term, .. } => {
                    let free = match term {
                        Term::Constant(_) => true,
                        Term::Referent(r) => !bound.contains(r),
                    };
                    if free && !out.contains(term) {
                        out.push(term.clone());
                    }
                }
                Condition::Negation(d) => walk(d, bound, out),
                Condition::Disjunction(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Condition::Implication(a, b) => {
                    let inner = bound.len();
                    walk(a, bound, out);
                    bound.extend(&a.referents);
                    walk(b, bound, out);
                    bound.truncate(inner);
                }
            }
        }
        bound.truncate(mark);
    }
    let mut out = Vec::new();
    for d in drss {
        walk(d, &mut Vec::new(), &mut out);
    }
    out
}

/// Class expression describing `root` that uses up every condition of `drs`.
fn compile(root: &Term, drs: &Drs) -> Option<ClassExpr> {
    let mut tree = Tree {
        drs,
        used: vec![false; drs.conditions.len()],
        claimed: Vec::new(),
    };
    if let Term::Referent(r) = root {
        tree.claimed.push(*r);
    }
    let ce = tree.describe(root)?;
    tree.used.iter().all(|&u| u).then_some(ce)
}

struct Tree<'d> {
    drs: &'d Drs,
    used: Vec<bool>,
    /// Referents already reached by an edge (or the root).
    claimed: Vec<Referent>,
}

impl Tree<'_> {
    fn describe(&mut self, node: &Term) -> Option<ClassExpr> {
        let mut parts = Vec::new();
        for (i, condition) in self.drs.conditions.iter().enumerate() {
            if self.used[i] || anchor(condition).as_ref() != Some(node) {
                continue;
            }
            self.used[i] = true;
            parts.push(match condition {
                Condition::Concept { concept, .. } => ClassExpr::Concept(concept.clone()),
                Condition::Role {
                    role,
                    object: Term::Constant(k),
                    ..
                } => ClassExpr::SomeValue(role.clone(), k.clone()),
                Condition::Role {
                    role,
                    object: Term::Referent(y),
                    ..
                } => {
                    if !self.drs.referents.contains(y) || self.claimed.contains(y) {
                        return None;
                    }
                    self.claimed.push(*y);
                    ClassExpr::some(role, self.describe(&Term::Referent(*y))?)
                }
                Condition::Negation(d) => ClassExpr::complement(compile(node, d)?),
                Condition::Disjunction(a, b) => ClassExpr::or(compile(node, a)?, compile(node, b)?),
                Condition::Implication(..) => return None,
            });
        }
        Some(ClassExpr::conjunction(parts))
    }
}

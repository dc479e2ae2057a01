//! Naive saturation: rules are applied to all known facts in rounds until a
//! round adds nothing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use cnlwiki::logic::{Axiom, AxiomKind, ClassExpr};

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Saturation {
    pub sub_class: BTreeSet<(String, String)>,
    pub sub_role: BTreeSet<(String, String)>,
    /// (individual, concept)
    pub instance: BTreeSet<(String, String)>,
    /// (role, subject, object)
    pub role_fact: BTreeSet<(String, String, String)>,
    pub domain: BTreeSet<(String, String)>,
    pub range: BTreeSet<(String, String)>,
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
}

fn conjuncts(ce: &ClassExpr, out: &mut Vec<String>) -> bool {
    match ce {
        ClassExpr::Concept(c) => {
            out.push(c.clone());
            true
        }
        ClassExpr::And(a, b) => conjuncts(a, out) && conjuncts(b, out),
        _ => false,
    }
}

type Facts = (Vec<String>, Vec<(String, String, String)>);

/// Membership facts of `ce` for individual `i`: named classes and value
/// restrictions, possibly conjoined. `None` when anything else occurs.
fn memberships(ce: &ClassExpr, i: &str) -> Option<Facts> {
    match ce {
        ClassExpr::Concept(c) => Some((vec![c.clone()], vec![])),
        ClassExpr::SomeValue(r, k) => Some((vec![], vec![(r.clone(), i.to_string(), k.clone())])),
        ClassExpr::And(a, b) => {
            let (mut c1, mut r1) = memberships(a, i)?;
            let (c2, r2) = memberships(b, i)?;
            c1.extend(c2);
            r1.extend(r2);
            Some((c1, r1))
        }
        _ => None,
    }
}

impl Saturation {
    /// The fixpoint of the rules over the asserted facts of `axioms`.
    pub fn of<'a>(axioms: impl IntoIterator<Item = &'a Axiom>) -> Self {
        let mut s = Saturation::default();
        for axiom in axioms {
            s.assert(axiom);
        }
        s.close();
        s
    }

    fn assert(&mut self, axiom: &Axiom) {
        let mut names = Vec::new();
        match &axiom.kind {
            AxiomKind::SubClassOf(ClassExpr::Concept(a), sup) if conjuncts(sup, &mut names) => {
                for b in names {
                    self.sub_class.insert((a.clone(), b));
                }
            }
            AxiomKind::SubRoleOf(r, s) => {
                self.sub_role.insert((r.clone(), s.clone()));
            }
            AxiomKind::ClassAssertion(ce, i) => {
                if let Some((classes, facts)) = memberships(ce, i) {
                    for c in classes {
                        self.instance.insert((i.clone(), c));
                    }
                    self.role_fact.extend(facts);
                }
            }
            AxiomKind::RoleAssertion(r, a, b) => {
                self.role_fact.insert((r.clone(), a.clone(), b.clone()));
            }
            AxiomKind::RoleDomain(r, ce) if conjuncts(ce, &mut names) => {
                for c in names {
                    self.domain.insert((r.clone(), c));
                }
            }
            AxiomKind::RoleRange(r, ce) if conjuncts(ce, &mut names) => {
                for c in names {
                    self.range.insert((r.clone(), c));
                }
            }
            _ => {}
        }
    }

    fn close(&mut self) {
        for (a, b) in &self.sub_class {
            self.concepts.extend([a.clone(), b.clone()]);
        }
        for (r, s) in &self.sub_role {
            self.roles.extend([r.clone(), s.clone()]);
        }
        for (i, c) in &self.instance {
            self.individuals.insert(i.clone());
            self.concepts.insert(c.clone());
        }
        for (r, a, b) in &self.role_fact {
            self.roles.insert(r.clone());
            self.individuals.extend([a.clone(), b.clone()]);
        }
        for (r, c) in self.domain.iter().chain(&self.range) {
            self.roles.insert(r.clone());
            self.concepts.insert(c.clone());
        }
        for c in &self.concepts {
            self.sub_class.insert((c.clone(), c.clone()));
        }
        for r in &self.roles {
            self.sub_role.insert((r.clone(), r.clone()));
        }

        loop {
            let mut sub_class = BTreeSet::new();
            for (a, b) in &self.sub_class {
                for (b2, c) in &self.sub_class {
                    if b == b2 {
                        sub_class.insert((a.clone(), c.clone()));
                    }
                }
            }
            let mut sub_role = BTreeSet::new();
            for (r, s) in &self.sub_role {
                for (s2, t) in &self.sub_role {
                    if s == s2 {
                        sub_role.insert((r.clone(), t.clone()));
                    }
                }
            }
            let mut instance = BTreeSet::new();
            for (i, c) in &self.instance {
                for (c2, d) in &self.sub_class {
                    if c == c2 {
                        instance.insert((i.clone(), d.clone()));
                    }
                }
            }
            let mut role_fact = BTreeSet::new();
            for (r, a, b) in &self.role_fact {
                for (r2, s) in &self.sub_role {
                    if r == r2 {
                        role_fact.insert((s.clone(), a.clone(), b.clone()));
                    }
                }
                for (r2, c) in &self.domain {
                    if r == r2 {
                        instance.insert((a.clone(), c.clone()));
                    }
                }
                for (r2, c) in &self.range {
                    if r == r2 {
                        instance.insert((b.clone(), c.clone()));
                    }
                }
            }
            let before = self.size();
            self.sub_class.extend(sub_class);
            self.sub_role.extend(sub_role);
            self.instance.extend(instance);
            self.role_fact.extend(role_fact);
            if self.size() == before {
                return;
            }
        }
    }

    fn size(&self) -> usize {
        self.sub_class.len() + self.sub_role.len() + self.instance.len() + self.role_fact.len()
    }

    /// Rendering in the knowledge base dump format: one line per key of each
    /// table (`ancestors`, `role-ancestors`, `types`, `domain`, `range`),
    /// then one `fact` line per role fact, everything in byte order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut table = |label: &str, keys: &BTreeSet<String>, pairs: &BTreeSet<(String, String)>| {
            let mut grouped: BTreeMap<&str, Vec<&str>> = keys.iter().map(|k| (k.as_str(), vec![])).collect();
            for (k, v) in pairs {
                grouped.entry(k).or_default().push(v);
            }
            for (k, vs) in grouped {
                let _ = writeln!(out, "{label} {k}:{}", vs.iter().map(|v| format!(" {v}")).collect::<String>());
            }
        };
        let none = BTreeSet::new();
        table("ancestors", &self.concepts, &self.sub_class);
        table("role-ancestors", &self.roles, &self.sub_role);
        table("types", &self.individuals, &self.instance);
        table("domain", &none, &self.domain);
        table("range", &none, &self.range);
        for (r, a, b) in &self.role_fact {
            let _ = writeln!(out, "fact {r} {a} {b}");
        }
        out
    }
}

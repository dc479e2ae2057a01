//! Finite interpretations and truth of discourse representation structures.

use std::collections::HashMap;

use super::drs::{Condition, Drs, Referent, Term};

/// Largest domain a [`Model`] supports (pairs are kept in a 64-bit mask).
pub const MAX_DOMAIN: usize = 8;

/// Referent assignment, indexed by referent number.
#[derive(Debug, Default)]
struct Env(Vec<Option<usize>>);

impl Env {
    fn get(&self, r: Referent) -> Option<usize> {
        self.0.get(r.0 as usize).copied().flatten()
    }

    fn set(&mut self, r: Referent, value: Option<usize>) -> Option<usize> {
        let i = r.0 as usize;
        if self.0.len() <= i {
            self.0.resize(i + 1, None);
        }
        std::mem::replace(&mut self.0[i], value)
    }
}

/// An interpretation over the domain `0..size`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    pub size: usize,
    pub constants: HashMap<String, usize>,
    /// Extension bitmask per concept name.
    pub concepts: HashMap<String, u64>,
    /// Extension per role name; pair `(a, b)` is bit `a * size + b`.
    pub roles: HashMap<String, u64>,
}

impl Model {
    pub fn new(size: usize) -> Self {
        assert!((1..=MAX_DOMAIN).contains(&size), "domain size {size} out of range");
        Model {
            size,
            ..Model::default()
        }
    }

    pub fn has_concept(&self, name: &str, a: usize) -> bool {
        self.concepts.get(name).is_some_and(|m| m & (1 << a) != 0)
    }

    pub fn has_role(&self, name: &str, a: usize, b: usize) -> bool {
        self.roles.get(name).is_some_and(|m| m & (1 << (a * self.size + b)) != 0)
    }

    /// Truth of a closed structure: some embedding of its referents verifies
    /// all conditions.
    pub fn satisfies(&self, drs: &Drs) -> bool {
        let mut env = Env::default();
        self.embeds(drs, &mut env)
    }

    fn value(&self, term: &Term, env: &Env) -> usize {
        match term {
            Term::Constant(c) => *self
                .constants
                .get(c)
                .unwrap_or_else(|| panic!("constant `{c}` has no interpretation")),
            Term::Referent(r) => env.get(*r).unwrap_or_else(|| panic!("referent {r} is free")),
        }
    }

    fn embeds(&self, drs: &Drs, env: &mut Env) -> bool {
        self.extend(&drs.referents, env, &mut |model, env| {
            drs.conditions.iter().all(|c| model.holds(c, env))
        })
    }

    /// Whether `check` succeeds for some assignment of `refs` (extending `env`).
    fn extend(
        &self,
        refs: &[Referent],
        env: &mut Env,
        check: &mut dyn FnMut(&Model, &mut Env) -> bool,
    ) -> bool {
        let Some((first, rest)) = refs.split_first() else {
            return check(self, env);
        };
        for a in 0..self.size {
            let saved = env.set(*first, Some(a));
            let found = self.extend(rest, env, check);
            env.set(*first, saved);
            if found {
                return true;
            }
        }
        false
    }

    fn holds(&self, condition: &Condition, env: &mut Env) -> bool {
        match condition {
            Condition::Concept { concept, term } => self.has_concept(concept, self.value(term, env)),
            Condition::Role { role, subject, object } => {
                self.has_role(role, self.value(subject, env), self.value(object, env))
            }
            Condition::Negation(d) => !self.embeds(d, env),
            Condition::Disjunction(a, b) => self.embeds(a, env) || self.embeds(b, env),
            Condition::Implication(a, b) => {
                // Every verifying embedding of the antecedent extends to the consequent.
                !self.extend(&a.referents, env, &mut |model, env| {
                    a.conditions.iter().all(|c| model.holds(c, env)) && !model.embeds(b, env)
                })
            }
        }
    }
}

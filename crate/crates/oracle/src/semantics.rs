//! Truth conditions read directly off parse trees, and exhaustive model
//! enumeration.
//!
//! Meanings are relations between variable assignments. A phrase maps one
//! input assignment to the set of assignments under which it holds, with the
//! variables it introduces bound. Quantifiers other than the existential,
//! negation, disjunction and conditionals are tests: they return their input
//! unchanged or nothing. A sentence is true when the empty assignment has
//! some output.
//!
//! With at most three individuals and three variables an assignment fits in
//! 6 bits, so a set of assignments is a `u64`.

use cnlwiki::grammar::{
    Clause, ClauseSubject, Conditional, Connective, Object, PredList, Predicate, RelClause, SentenceAst, Simple,
    Subject, ThenSubject, Var,
};
use cnlwiki::lexicon::{Word, WordCategory};
use cnlwiki::logic::Model;

/// Largest domain the assignment encoding supports.
pub const MAX_SIZE: usize = 3;

/// The symbols a sentence mentions, by logical name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub constants: Vec<String>,
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
}

impl Signature {
    pub fn of(ast: &SentenceAst) -> Self {
        let mut signature = Signature::default();
        for word in ast.words() {
            let list = match word.category {
                WordCategory::ProperName => &mut signature.constants,
                WordCategory::Noun => &mut signature.concepts,
                WordCategory::TransitiveVerb | WordCategory::OfConstruct => &mut signature.roles,
            };
            let name = word.entity_name();
            if !list.contains(&name) {
                list.push(name);
            }
        }
        signature
    }

    /// Number of interpretations over a domain of `size` individuals.
    pub fn count(&self, size: usize) -> u64 {
        let per_concept = 1u64 << size;
        let per_role = 1u64 << (size * size);
        (size as u64).pow(self.constants.len() as u32)
            * per_concept.pow(self.concepts.len() as u32)
            * per_role.pow(self.roles.len() as u32)
    }

    /// Every interpretation over `0..size`, in a fixed order.
    pub fn interpretations(&self, size: usize) -> impl Iterator<Item = Interpretation<'_>> + '_ {
        assert!((1..=MAX_SIZE).contains(&size));
        (0..self.count(size)).map(move |index| Interpretation::decode(self, size, index))
    }

    /// Calls `visit` once per isomorphism class of interpretations over
    /// `0..size`, with the number of interpretations in the class. The
    /// representative is the member with the smallest index.
    pub fn for_each_class(&self, size: usize, mut visit: impl FnMut(&Interpretation<'_>, u64)) {
        assert!((1..=MAX_SIZE).contains(&size));
        let permutations = Permutation::all(size);
        let mut current = Interpretation::decode(self, size, 0);
        let mut images = Vec::with_capacity(permutations.len());
        for index in 0..self.count(size) {
            if index > 0 {
                current.step();
            }
            images.clear();
            let mut smallest = true;
            for p in &permutations {
                let image = current.permuted_index(p);
                if image < index {
                    smallest = false;
                    break;
                }
                images.push(image);
            }
            if smallest {
                images.sort_unstable();
                images.dedup();
                visit(&current, images.len() as u64);
            }
        }
    }
}

/// A permutation of the domain with its action on extension masks.
struct Permutation {
    image: Vec<usize>,
    concept: Vec<u64>,
    role: Vec<u64>,
}

impl Permutation {
    fn all(size: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut image: Vec<usize> = (0..size).collect();
        permute(&mut image, 0, &mut |image| {
            let map = |mask: u64, width: usize, f: &dyn Fn(usize) -> usize| {
                (0..width).filter(|b| mask & (1 << b) != 0).fold(0u64, |acc, b| acc | 1 << f(b))
            };
            let concept = (0..1u64 << size).map(|m| map(m, size, &|a| image[a])).collect();
            let role = (0..1u64 << (size * size))
                .map(|m| map(m, size * size, &|b| image[b / size] * size + image[b % size]))
                .collect();
            out.push(Permutation {
                image: image.to_vec(),
                concept,
                role,
            });
        });
        out
    }
}

fn permute(items: &mut [usize], k: usize, emit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, emit);
        items.swap(k, i);
    }
}

/// An interpretation of a [`Signature`]. Role pair `(a, b)` is bit
/// `a * size + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation<'a> {
    pub signature: &'a Signature,
    pub size: usize,
    pub constants: Vec<usize>,
    pub concepts: Vec<u64>,
    pub roles: Vec<u64>,
}

impl<'a> Interpretation<'a> {
    /// The `index`-th interpretation in mixed-radix order.
    pub fn decode(signature: &'a Signature, size: usize, mut index: u64) -> Self {
        let mut take = |radix: u64| {
            let digit = index % radix;
            index /= radix;
            digit
        };
        let constants = signature.constants.iter().map(|_| take(size as u64) as usize).collect();
        let concepts = signature.concepts.iter().map(|_| take(1 << size)).collect();
        let roles = signature.roles.iter().map(|_| take(1 << (size * size))).collect();
        Interpretation {
            signature,
            size,
            constants,
            concepts,
            roles,
        }
    }

    /// Advances to the next index in mixed-radix order.
    fn step(&mut self) {
        let size = self.size as u64;
        for v in &mut self.constants {
            *v += 1;
            if *v as u64 == size {
                *v = 0;
            } else {
                return;
            }
        }
        for m in &mut self.concepts {
            *m += 1;
            if *m == 1 << size {
                *m = 0;
            } else {
                return;
            }
        }
        for m in &mut self.roles {
            *m += 1;
            if *m == 1 << (size * size) {
                *m = 0;
            } else {
                return;
            }
        }
    }

    fn permuted_index(&self, p: &Permutation) -> u64 {
        let size = self.size as u64;
        let mut index = 0;
        let mut weight = 1;
        for &v in &self.constants {
            index += p.image[v] as u64 * weight;
            weight *= size;
        }
        for &m in &self.concepts {
            index += p.concept[m as usize] * weight;
            weight <<= size;
        }
        for &m in &self.roles {
            index += p.role[m as usize] * weight;
            weight <<= size * size;
        }
        index
    }

    /// The same interpretation as a library [`Model`].
    pub fn to_model(&self) -> Model {
        let mut model = Model::new(self.size);
        self.write_into(&mut model);
        model
    }

    /// Overwrites the extensions in `model`, which must have the same size.
    pub fn write_into(&self, model: &mut Model) {
        debug_assert_eq!(model.size, self.size);
        let s = self.signature;
        for (name, &v) in s.constants.iter().zip(&self.constants) {
            set(&mut model.constants, name, v);
        }
        for (name, &m) in s.concepts.iter().zip(&self.concepts) {
            set(&mut model.concepts, name, m);
        }
        for (name, &m) in s.roles.iter().zip(&self.roles) {
            set(&mut model.roles, name, m);
        }
    }

    /// Value of the constant with this logical name.
    pub fn constant_named(&self, name: &str) -> usize {
        self.constants[index_of(&self.signature.constants, name)]
    }

    /// Extension mask of the concept with this logical name.
    pub fn concept_named(&self, name: &str) -> u64 {
        self.concepts[index_of(&self.signature.concepts, name)]
    }

    pub fn role_named(&self, name: &str, a: usize, b: usize) -> bool {
        self.roles[index_of(&self.signature.roles, name)] & (1 << (a * self.size + b)) != 0
    }

    fn constant(&self, word: &Word) -> usize {
        self.constants[position(&self.signature.constants, word)]
    }

    fn concept(&self, word: &Word, a: usize) -> bool {
        self.concepts[position(&self.signature.concepts, word)] & (1 << a) != 0
    }

    fn role(&self, word: &Word, a: usize, b: usize) -> bool {
        self.roles[position(&self.signature.roles, word)] & (1 << (a * self.size + b)) != 0
    }

    /// Truth of the sentence under this interpretation.
    pub fn satisfies(&self, ast: &SentenceAst) -> bool {
        let start = Assignment::EMPTY.singleton();
        match ast {
            SentenceAst::Simple(s) => self.simple(s, Assignment::EMPTY) != 0,
            SentenceAst::Negated(s) => self.simple(s, Assignment::EMPTY) == 0,
            SentenceAst::Conditional(c) => self.conditional(c, start),
        }
    }
}

fn set<V: Copy>(map: &mut std::collections::HashMap<String, V>, name: &str, value: V) {
    match map.get_mut(name) {
        Some(slot) => *slot = value,
        None => {
            map.insert(name.to_string(), value);
        }
    }
}

fn index_of(names: &[String], name: &str) -> usize {
    names
        .iter()
        .position(|n| n == name)
        .unwrap_or_else(|| panic!("`{name}` is not in the signature"))
}

fn names(name: &str, word: &Word) -> bool {
    match word.category {
        WordCategory::OfConstruct => name.strip_suffix("-of") == Some(word.surface.as_str()),
        _ => name == word.surface,
    }
}

fn position(names_in: &[String], word: &Word) -> usize {
    names_in
        .iter()
        .position(|n| names(n, word))
        .unwrap_or_else(|| panic!("`{}` is not in the signature", word.surface))
}

/// Values of X, Y and Z; 0 is unbound, `k + 1` is individual `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Assignment(u8);

/// A set of assignments as a bitmask over their codes.
type Outputs = u64;

impl Assignment {
    const EMPTY: Assignment = Assignment(0);

    fn shift(v: Var) -> u8 {
        match v {
            Var::X => 0,
            Var::Y => 2,
            Var::Z => 4,
        }
    }

    fn get(self, v: Var) -> usize {
        let code = (self.0 >> Self::shift(v)) & 3;
        assert!(code != 0, "variable {v:?} is unbound");
        code as usize - 1
    }

    fn bind(self, v: Option<Var>, a: usize) -> Assignment {
        match v {
            None => self,
            Some(v) => {
                let s = Self::shift(v);
                Assignment(self.0 & !(3 << s) | ((a as u8 + 1) << s))
            }
        }
    }

    fn singleton(self) -> Outputs {
        1 << self.0
    }
}

fn members(outputs: Outputs) -> impl Iterator<Item = Assignment> {
    let mut rest = outputs;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let code = rest.trailing_zeros() as u8;
        rest &= rest - 1;
        Some(Assignment(code))
    })
}

fn test(holds: bool, g: Assignment) -> Outputs {
    if holds {
        g.singleton()
    } else {
        0
    }
}

impl Interpretation<'_> {
    fn individuals(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    fn simple(&self, s: &Simple, g: Assignment) -> Outputs {
        let preds = &s.predicates;
        match &s.subject {
            Subject::ProperName(w) => self.predicates(preds, self.constant(w), g),
            Subject::Every(n, rel) => test(
                self.individuals().filter(|&d| self.concept(n, d)).all(|d| {
                    members(self.restrictor(rel, d, g)).all(|h| self.predicates(preds, d, h) != 0)
                }),
                g,
            ),
            Subject::No(n, rel) => test(
                self.individuals().filter(|&d| self.concept(n, d)).all(|d| {
                    members(self.restrictor(rel, d, g)).all(|h| self.predicates(preds, d, h) == 0)
                }),
                g,
            ),
            Subject::A(n, rel) => self
                .individuals()
                .filter(|&d| self.concept(n, d))
                .flat_map(|d| members(self.restrictor(rel, d, g)).map(move |h| (d, h)))
                .fold(0, |acc, (d, h)| acc | self.predicates(preds, d, h)),
            Subject::Something(v) => self
                .individuals()
                .fold(0, |acc, d| acc | self.predicates(preds, d, g.bind(*v, d))),
            Subject::Everything => test(self.individuals().all(|d| self.predicates(preds, d, g) != 0), g),
        }
    }

    fn restrictor(&self, rel: &Option<RelClause>, d: usize, g: Assignment) -> Outputs {
        match rel {
            None => g.singleton(),
            Some(rel) => self.object(&rel.verb, d, &rel.object, g),
        }
    }

    /// Connectives group to the left, so a disjunction always has the whole
    /// list so far as its left side.
    fn predicates(&self, list: &PredList, d: usize, g: Assignment) -> Outputs {
        let mut outputs = self.predicate(&list.first, d, g);
        for (connective, p) in &list.rest {
            outputs = match connective {
                Connective::And => members(outputs).fold(0, |acc, h| acc | self.predicate(p, d, h)),
                Connective::Or => test(outputs != 0 || self.predicate(p, d, g) != 0, g),
            };
        }
        outputs
    }

    fn predicate(&self, p: &Predicate, d: usize, g: Assignment) -> Outputs {
        match p {
            Predicate::IsA(n) => test(self.concept(n, d), g),
            Predicate::IsNotA(n) => test(!self.concept(n, d), g),
            Predicate::Verb(r, o) | Predicate::IsRoleOf(r, o) => self.object(r, d, o, g),
            Predicate::DoesNotVerb(r, o) | Predicate::IsNotRoleOf(r, o) => test(self.object(r, d, o, g) == 0, g),
        }
    }

    /// `d` stands in relation `r` to the object.
    fn object(&self, r: &Word, d: usize, o: &Object, g: Assignment) -> Outputs {
        match o {
            Object::ProperName(w) => test(self.role(r, d, self.constant(w)), g),
            Object::A(n, v) => self
                .individuals()
                .filter(|&e| self.concept(n, e) && self.role(r, d, e))
                .fold(0, |acc, e| acc | g.bind(*v, e).singleton()),
            Object::Something(v) => self
                .individuals()
                .filter(|&e| self.role(r, d, e))
                .fold(0, |acc, e| acc | g.bind(*v, e).singleton()),
            Object::Everything => test(self.individuals().all(|e| self.role(r, d, e)), g),
            Object::VarRef(v) => test(self.role(r, d, g.get(*v)), g),
        }
    }

    fn conditional(&self, c: &Conditional, start: Outputs) -> bool {
        let antecedent = c
            .conditions
            .iter()
            .fold(start, |outputs, clause| members(outputs).fold(0, |acc, h| acc | self.clause(clause, h)));
        members(antecedent).all(|h| {
            let then = &c.consequent;
            match &then.subject {
                ThenSubject::VarRef(v) => self.predicates(&then.predicates, h.get(*v), h) != 0,
                ThenSubject::Something => self.individuals().any(|d| self.predicates(&then.predicates, d, h) != 0),
                ThenSubject::A(n) => self
                    .individuals()
                    .any(|d| self.concept(n, d) && self.predicates(&then.predicates, d, h) != 0),
            }
        })
    }

    fn clause(&self, clause: &Clause, g: Assignment) -> Outputs {
        let preds = &clause.predicates;
        match &clause.subject {
            ClauseSubject::Something(v) => self
                .individuals()
                .fold(0, |acc, d| acc | self.predicates(preds, d, g.bind(*v, d))),
            ClauseSubject::A(n, v) => self
                .individuals()
                .filter(|&d| self.concept(n, d))
                .fold(0, |acc, d| acc | self.predicates(preds, d, g.bind(*v, d))),
            ClauseSubject::VarRef(v) => self.predicates(preds, g.get(*v), g),
        }
    }
}

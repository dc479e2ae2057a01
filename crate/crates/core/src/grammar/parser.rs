//! Tree construction for token lists already accepted by the automaton.
//!
//! Every choice point of the grammar is decided by the next token, so a
//! single-token-lookahead descent suffices.

use crate::lexicon::{Word, WordCategory};

use super::ast::*;
use super::token::{FunctionWord as F, Token, Var};
use super::ParseError;

pub(crate) struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'t> Parser<'t> {
    pub(crate) fn new(tokens: &'t [Token]) -> Self {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn fail<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::Syntax {
            position: self.pos,
            expected: vec![expected.to_string()],
        })
    }

    fn at(&self, fw: F) -> bool {
        self.peek() == Some(&Token::Function(fw))
    }

    fn eat(&mut self, fw: F) -> bool {
        let hit = self.at(fw);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect(&mut self, fw: F) -> PResult<()> {
        if self.eat(fw) {
            Ok(())
        } else {
            self.fail(fw.as_str())
        }
    }

    fn word(&mut self, category: WordCategory) -> PResult<Word> {
        match self.peek() {
            Some(Token::Word(w)) if w.category == category => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => self.fail(category.label()),
        }
    }

    fn var(&mut self) -> Option<Var> {
        match self.peek() {
            Some(Token::Variable(v)) => {
                self.pos += 1;
                Some(*v)
            }
            _ => None,
        }
    }

    fn article(&mut self) -> bool {
        self.eat(F::A) || self.eat(F::An)
    }

    pub(crate) fn sentence(mut self) -> PResult<SentenceAst> {
        let ast = if self.eat(F::It) {
            self.expect(F::Is)?;
            self.expect(F::False)?;
            self.expect(F::That)?;
            SentenceAst::Negated(self.simple()?)
        } else if self.eat(F::If) {
            SentenceAst::Conditional(self.conditional()?)
        } else {
            SentenceAst::Simple(self.simple()?)
        };
        if self.peek() != Some(&Token::Period) {
            return self.fail(".");
        }
        self.pos += 1;
        if self.pos != self.tokens.len() {
            return self.fail("end of sentence");
        }
        Ok(ast)
    }

    fn simple(&mut self) -> PResult<Simple> {
        let subject = self.subject()?;
        let predicates = self.pred_list()?;
        Ok(Simple { subject, predicates })
    }

    fn subject(&mut self) -> PResult<Subject> {
        if self.eat(F::Every) {
            let n = self.word(WordCategory::Noun)?;
            return Ok(Subject::Every(n, self.rel()?));
        }
        if self.eat(F::No) {
            let n = self.word(WordCategory::Noun)?;
            return Ok(Subject::No(n, self.rel()?));
        }
        if self.article() {
            let n = self.word(WordCategory::Noun)?;
            return Ok(Subject::A(n, self.rel()?));
        }
        if self.eat(F::Something) {
            return Ok(Subject::Something(self.var()));
        }
        if self.eat(F::Everything) {
            return Ok(Subject::Everything);
        }
        Ok(Subject::ProperName(self.word(WordCategory::ProperName)?))
    }

    fn rel(&mut self) -> PResult<Option<RelClause>> {
        let pronoun = if self.eat(F::Who) {
            RelPronoun::Who
        } else if self.eat(F::That) {
            RelPronoun::That
        } else {
            return Ok(None);
        };
        let verb = self.word(WordCategory::TransitiveVerb)?;
        let object = self.object()?;
        Ok(Some(RelClause { pronoun, verb, object }))
    }

    fn pred_list(&mut self) -> PResult<PredList> {
        let first = self.predicate()?;
        let mut rest = Vec::new();
        loop {
            let connective = if self.at(F::Or) {
                Connective::Or
            } else if self.at(F::And) && self.starts_predicate(self.pos + 1) {
                Connective::And
            } else {
                // `and` before a clause subject separates conditions instead.
                break;
            };
            self.pos += 1;
            rest.push((connective, self.predicate()?));
        }
        Ok(PredList { first, rest })
    }

    fn starts_predicate(&self, at: usize) -> bool {
        match self.tokens.get(at) {
            Some(Token::Function(fw)) => matches!(fw, F::Is | F::Does),
            Some(Token::Word(w)) => w.category == WordCategory::TransitiveVerb,
            _ => false,
        }
    }

    fn predicate(&mut self) -> PResult<Predicate> {
        if self.eat(F::Is) {
            let negated = self.eat(F::Not);
            if !self.article() {
                return self.fail("a");
            }
            return match self.peek() {
                Some(Token::Word(w)) if w.category == WordCategory::OfConstruct => {
                    let of = self.word(WordCategory::OfConstruct)?;
                    self.expect(F::Of)?;
                    let object = self.object()?;
                    Ok(if negated {
                        Predicate::IsNotRoleOf(of, object)
                    } else {
                        Predicate::IsRoleOf(of, object)
                    })
                }
                _ => {
                    let n = self.word(WordCategory::Noun)?;
                    Ok(if negated { Predicate::IsNotA(n) } else { Predicate::IsA(n) })
                }
            };
        }
        if self.eat(F::Does) {
            self.expect(F::Not)?;
            let tv = self.word(WordCategory::TransitiveVerb)?;
            return Ok(Predicate::DoesNotVerb(tv, self.object()?));
        }
        let tv = self.word(WordCategory::TransitiveVerb)?;
        Ok(Predicate::Verb(tv, self.object()?))
    }

    fn object(&mut self) -> PResult<Object> {
        if self.article() {
            let n = self.word(WordCategory::Noun)?;
            return Ok(Object::A(n, self.var()));
        }
        if self.eat(F::Something) {
            return Ok(Object::Something(self.var()));
        }
        if self.eat(F::Everything) {
            return Ok(Object::Everything);
        }
        if let Some(v) = self.var() {
            return Ok(Object::VarRef(v));
        }
        Ok(Object::ProperName(self.word(WordCategory::ProperName)?))
    }

    fn conditional(&mut self) -> PResult<Conditional> {
        let mut conditions = vec![self.clause()?];
        while self.eat(F::And) {
            conditions.push(self.clause()?);
        }
        self.expect(F::Then)?;
        let subject = if let Some(v) = self.var() {
            ThenSubject::VarRef(v)
        } else if self.eat(F::Something) {
            ThenSubject::Something
        } else if self.article() {
            ThenSubject::A(self.word(WordCategory::Noun)?)
        } else {
            return self.fail("something");
        };
        let predicates = self.pred_list()?;
        Ok(Conditional {
            conditions,
            consequent: ThenClause { subject, predicates },
        })
    }

    fn clause(&mut self) -> PResult<Clause> {
        let subject = if self.eat(F::Something) {
            ClauseSubject::Something(self.var())
        } else if self.article() {
            let n = self.word(WordCategory::Noun)?;
            ClauseSubject::A(n, self.var())
        } else if let Some(v) = self.var() {
            ClauseSubject::VarRef(v)
        } else {
            return self.fail("something");
        };
        let predicates = self.pred_list()?;
        Ok(Clause { subject, predicates })
    }
}

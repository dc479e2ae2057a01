use crate::lexicon::Word;

use super::ast::*;
use super::token::{FunctionWord as F, Token};

/// Renders a tree back to its token list (including the final period).
pub fn verbalize(ast: &SentenceAst) -> Vec<Token> {
    let mut out = Vec::new();
    match ast {
        SentenceAst::Simple(s) => simple(s, &mut out),
        SentenceAst::Negated(s) => {
            out.extend([F::It, F::Is, F::False, F::That].map(Token::from));
            simple(s, &mut out);
        }
        SentenceAst::Conditional(c) => {
            out.push(F::If.into());
            for (i, clause) in c.conditions.iter().enumerate() {
                if i > 0 {
                    out.push(F::And.into());
                }
                match &clause.subject {
                    ClauseSubject::Something(v) => {
                        out.push(F::Something.into());
                        out.extend(v.map(Token::Variable));
                    }
                    ClauseSubject::A(n, v) => {
                        noun_phrase(n, &mut out);
                        out.extend(v.map(Token::Variable));
                    }
                    ClauseSubject::VarRef(v) => out.push(Token::Variable(*v)),
                }
                pred_list(&clause.predicates, &mut out);
            }
            out.push(F::Then.into());
            match &c.consequent.subject {
                ThenSubject::VarRef(v) => out.push(Token::Variable(*v)),
                ThenSubject::Something => out.push(F::Something.into()),
                ThenSubject::A(n) => noun_phrase(n, &mut out),
            }
            pred_list(&c.consequent.predicates, &mut out);
        }
    }
    out.push(Token::Period);
    out
}

fn article(word: &Word) -> Token {
    if word.takes_an() { F::An } else { F::A }.into()
}

fn noun_phrase(n: &Word, out: &mut Vec<Token>) {
    out.push(article(n));
    out.push(Token::Word(n.clone()));
}

fn simple(s: &Simple, out: &mut Vec<Token>) {
    match &s.subject {
        Subject::ProperName(w) => out.push(Token::Word(w.clone())),
        Subject::Every(n, rel) | Subject::No(n, rel) | Subject::A(n, rel) => {
            match &s.subject {
                Subject::Every(..) => out.extend([F::Every.into(), Token::Word(n.clone())]),
                Subject::No(..) => out.extend([F::No.into(), Token::Word(n.clone())]),
                _ => noun_phrase(n, out),
            }
            if let Some(rel) = rel {
                out.push(
                    match rel.pronoun {
                        RelPronoun::Who => F::Who,
                        RelPronoun::That => F::That,
                    }
                    .into(),
                );
                out.push(Token::Word(rel.verb.clone()));
                object(&rel.object, out);
            }
        }
        Subject::Something(v) => {
            out.push(F::Something.into());
            out.extend(v.map(Token::Variable));
        }
        Subject::Everything => out.push(F::Everything.into()),
    }
    pred_list(&s.predicates, out);
}

fn pred_list(list: &PredList, out: &mut Vec<Token>) {
    predicate(&list.first, out);
    for (connective, p) in &list.rest {
        out.push(
            match connective {
                Connective::And => F::And,
                Connective::Or => F::Or,
            }
            .into(),
        );
        predicate(p, out);
    }
}

fn predicate(p: &Predicate, out: &mut Vec<Token>) {
    match p {
        Predicate::IsA(n) => {
            out.push(F::Is.into());
            noun_phrase(n, out);
        }
        Predicate::IsNotA(n) => {
            out.extend([F::Is, F::Not].map(Token::from));
            noun_phrase(n, out);
        }
        Predicate::IsRoleOf(r, o) | Predicate::IsNotRoleOf(r, o) => {
            out.push(F::Is.into());
            if p.is_negated() {
                out.push(F::Not.into());
            }
            noun_phrase(r, out);
            out.push(F::Of.into());
            object(o, out);
        }
        Predicate::Verb(v, o) => {
            out.push(Token::Word(v.clone()));
            object(o, out);
        }
        Predicate::DoesNotVerb(v, o) => {
            out.extend([F::Does, F::Not].map(Token::from));
            out.push(Token::Word(v.clone()));
            object(o, out);
        }
    }
}

fn object(o: &Object, out: &mut Vec<Token>) {
    match o {
        Object::ProperName(w) => out.push(Token::Word(w.clone())),
        Object::A(n, v) => {
            noun_phrase(n, out);
            out.extend(v.map(Token::Variable));
        }
        Object::Something(v) => {
            out.push(F::Something.into());
            out.extend(v.map(Token::Variable));
        }
        Object::Everything => out.push(F::Everything.into()),
        Object::VarRef(v) => out.push(Token::Variable(*v)),
    }
}

//! Text syntax for terms.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := ['-'] [rational ['*']] factor (['*'] factor)*   |  ['-'] rational
//! factor := ident | '?' ident | '1' | '{' expr ',' expr '}' | 'D(' expr ')'
//!         | '<' expr ',' expr '>' | '(' expr ')'
//! ```
//!
//! Juxtaposition is the associative product. `D(a)` is `{a,1}` and `<a,b>`
//! is `{a,b} - (D(a) b - a D(b))`. The printed form of an element parses
//! back to the same element.

use crate::alphabet::{Alphabet, UNIT};
use crate::error::{Error, Result};
use crate::farkas::angle_term;
use crate::scalar::{self, Scalar};
use crate::term::{self, Term};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Num(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let b = src.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let c = b[i] as char;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'/') {
                    i += 1;
                }
                lx.toks.push((Tok::Num(src[start..i].to_string()), start));
            } else if c.is_ascii_alphabetic() || c == '_' || c == '?' {
                let start = i;
                if c == '?' {
                    i += 1;
                }
                let name_start = i;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_' || b[i] == b'\'') {
                    i += 1;
                }
                let name = src[name_start..i].to_string();
                if name.is_empty() {
                    return Err(error(src, start, "`?` must be followed by a name"));
                }
                let tok = if c == '?' { Tok::Var(name) } else { Tok::Ident(name) };
                lx.toks.push((tok, start));
            } else if "+-*{},()<>".contains(c) {
                lx.toks.push((Tok::Sym(c), i));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(error(src, i, &format!("unexpected character `{ch}`")));
            }
        }
        lx.toks.push((Tok::End, lx.src.len()));
        Ok(lx.toks)
    }
}

fn error(src: &str, offset: usize, message: &str) -> Error {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Error::Syntax { line, column, message: message.to_string() }
}

struct Parser<'a> {
    src: &'a str,
    alphabet: &'a Alphabet,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: &str) -> Result<T> {
        Err(error(self.src, self.offset(), message))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Term> {
        let mut terms = Vec::new();
        let mut negate = false;
        if *self.peek() == Tok::Sym('+') {
            self.bump();
        }
        loop {
            let (c, t) = self.term()?;
            terms.push((if negate { -c } else { c }, t));
            match self.peek() {
                Tok::Sym('+') => negate = false,
                Tok::Sym('-') => negate = true,
                _ => break,
            }
            self.bump();
        }
        Ok(if terms.len() == 1 && terms[0].0 == scalar::one() {
            terms.pop().expect("one term").1
        } else {
            term::lin(terms)
        })
    }

    fn term(&mut self) -> Result<(Scalar, Term)> {
        let mut c = scalar::one();
        while *self.peek() == Tok::Sym('-') {
            self.bump();
            c = -c;
        }
        let mut factors = Vec::new();
        if let Tok::Num(n) = self.peek().clone() {
            let at = self.offset();
            self.bump();
            c *= scalar::parse(&n).map_err(|_| error(self.src, at, &format!("invalid number `{n}`")))?;
            if *self.peek() == Tok::Sym('*') {
                self.bump();
                factors.push(self.factor()?);
            } else if !self.starts_factor() {
                return Ok((c, term::unit()));
            }
        } else if !self.starts_factor() {
            return self.fail("expected a term");
        }
        loop {
            if *self.peek() == Tok::Sym('*') {
                self.bump();
                factors.push(self.factor()?);
            } else if self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok((c, term::prods(factors)))
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Tok::Ident(_) | Tok::Var(_) => true,
            Tok::Num(n) => n == "1",
            Tok::Sym(c) => "{(<".contains(*c),
            Tok::End => false,
        }
    }

    fn factor(&mut self) -> Result<Term> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) if n == "1" => Ok(term::unit()),
            Tok::Num(n) => Err(error(self.src, at, &format!("number `{n}` where a factor was expected"))),
            Tok::Var(v) => Ok(term::var(&v)),
            Tok::Ident(name) if name == "D" && *self.peek() == Tok::Sym('(') => {
                self.bump();
                let a = self.expr()?;
                self.expect(')')?;
                Ok(term::d(a))
            }
            Tok::Ident(name) => match self.alphabet.lookup(&name) {
                Some(g) if g != UNIT => Ok(term::gen(g)),
                _ => Err(error(self.src, at, &format!("undeclared identifier `{name}`"))),
            },
            Tok::Sym('{') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect('}')?;
                Ok(term::br(a, b))
            }
            Tok::Sym('<') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect('>')?;
                Ok(angle_term(a, b))
            }
            Tok::Sym('(') => {
                let a = self.expr()?;
                self.expect(')')?;
                Ok(a)
            }
            Tok::End => Err(error(self.src, at, "unexpected end of input")),
            Tok::Sym(c) => Err(error(self.src, at, &format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `src` over the generators of `alphabet`; `?name` leaves become
/// identity variables.
pub fn parse(src: &str, alphabet: &Alphabet) -> Result<Term> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { src, alphabet, toks, pos: 0 };
    let t = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("unexpected trailing input");
    }
    Ok(t)
}

//! Expression grammar for ring elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' int)?
//! atom   := int | int '/' int | ident | '(' expr ')'
//! ```
//!
//! Unary minus applies to the whole power, so `-beta^2` is `-(beta^2)`.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{format_rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Rat(BigInt, BigInt),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

impl Lexer {
    fn new(src: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let (mut line, mut column) = (1, 1);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos { line, column };
            if c == '\n' {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            if c.is_whitespace() {
                column += 1;
                i += 1;
                continue;
            }
            let start = i;
            if c.is_ascii_digit() {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), pos));
            } else if c.is_alphabetic() || c == '_' {
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            } else if "+-*/^()".contains(c) {
                i += 1;
                toks.push((Tok::Sym(c), pos));
            } else {
                return Err(syntax(pos, format!("unexpected character '{c}'")));
            }
            column += i - start;
        }
        toks.push((Tok::End, Pos { line, column }));
        Ok(Lexer { toks, at: 0 })
    }

    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().0 == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.next() {
            (Tok::Int(n), pos) => {
                let n = if negative { -n } else { n };
                let e = i64::try_from(n).map_err(|_| syntax(pos, "exponent out of range"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            (Tok::End, pos) => Err(syntax(pos, "expected an exponent")),
            (_, pos) => Err(Error::NonIntegerExponent {
                line: pos.line,
                column: pos.column,
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.next() {
            (Tok::Int(n), _) => {
                if !self.eat('/') {
                    return Ok(Expr::Int(n));
                }
                match self.next() {
                    (Tok::Int(d), pos) if d.is_zero() => Err(syntax(pos, "zero denominator")),
                    (Tok::Int(d), _) => Ok(Expr::Rat(n, d)),
                    (_, pos) => Err(syntax(pos, "expected a denominator")),
                }
            }
            (Tok::Ident(name), pos) => Ok(Expr::Var(name, pos)),
            (Tok::Sym('('), _) => {
                let e = self.expr()?;
                match self.next() {
                    (Tok::Sym(')'), _) => Ok(e),
                    (_, pos) => Err(syntax(pos, "expected ')'")),
                }
            }
            (Tok::End, pos) => Err(syntax(pos, "unexpected end of input")),
            (t, pos) => Err(syntax(pos, format!("unexpected {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut lx = Lexer::new(src)?;
        let e = lx.expr()?;
        match lx.next() {
            (Tok::End, _) => Ok(e),
            (t, pos) => Err(syntax(pos, format!("unexpected {}", describe(&t)))),
        }
    }

    pub fn eval<R: Ring>(&self, ring: &R) -> Result<R::Elem> {
        Ok(match self {
            Expr::Int(n) => ring.from_bigint(n),
            Expr::Rat(n, d) => {
                let q = BigRational::new(n.clone(), d.clone());
                ring.from_rational(&q)
                    .ok_or_else(|| Error::NotInvertible(format_rational(&q)))?
            }
            Expr::Var(name, pos) => ring.variable(name).ok_or_else(|| Error::UnknownVariable {
                name: name.clone(),
                line: pos.line,
                column: pos.column,
            })?,
            Expr::Neg(a) => ring.neg(&a.eval(ring)?),
            Expr::Add(a, b) => ring.add(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Sub(a, b) => ring.sub(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Pow(a, e) => {
                let base = a.eval(ring)?;
                ring.pow(&base, *e)
                    .ok_or_else(|| Error::NotInvertible(ring.format(&base)))?
            }
        })
    }

    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Neg(_) | Expr::Pow(..) => 2,
            // a negative literal prints with a leading minus
            Expr::Int(n) | Expr::Rat(n, _) if n.sign() == Sign::Minus => 2,
            Expr::Int(_) | Expr::Rat(..) | Expr::Var(..) => 3,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Rat(n, d) => write!(f, "{n}/{d}"),
            Expr::Var(name, _) => write!(f, "{name}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 2)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 0)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                b.write_at(f, 1)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "*")?;
                b.write_at(f, 2)
            }
            Expr::Pow(a, e) => {
                a.write_at(f, 3)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// Canonical form: minimal parentheses, single spaces around `+` and `-`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// Parses `src` and evaluates it in `ring`.
pub fn parse_expression<R: Ring>(src: &str, ring: &R) -> Result<R::Elem> {
    Expr::parse(src)?.eval(ring)
}

//! Small recursive-descent parser for scalar expressions such as
//! `G1^2*(k - 1)*(k + 1)/(k*(-G1^3 + k*q))`.
//!
//! Accepts `+ - * /`, powers written `^` or `**` with integer exponents,
//! parentheses, juxtaposition as multiplication, integers and the symbols
//! `k`, `q`, `G1`, `G2`, ...

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{Scalar, Symbol};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Pow,
    Open,
    Close,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Int(s.parse().expect("digits")));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            '*' if chars.get(i + 1) == Some(&'*') => {
                out.push(Tok::Pow);
                i += 2;
            }
            _ => {
                out.push(match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Pow,
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
                });
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc
                        .div(&d)
                        .map_err(|_| Error::Parse("division by zero".into()))?;
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Open) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Pow) {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.exponent()?;
        base.pow(e)
            .map_err(|_| Error::Parse("negative power of zero".into()))
    }

    fn exponent(&mut self) -> Result<i64> {
        let sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        let v = match self.bump() {
            Some(Tok::Int(i)) => i,
            Some(Tok::Open) => {
                let inner = self.expr()?;
                self.expect_close()?;
                let c = inner
                    .as_poly()
                    .and_then(|p| p.as_constant())
                    .filter(BigRational::is_integer)
                    .ok_or_else(|| Error::Parse("exponent must be an integer".into()))?;
                c.to_integer()
            }
            t => return Err(Error::Parse(format!("expected exponent, found {t:?}"))),
        };
        v.to_i64()
            .map(|v| sign * v)
            .ok_or_else(|| Error::Parse("exponent too large".into()))
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.bump() {
            Some(Tok::Close) => Ok(()),
            t => Err(Error::Parse(format!("expected ')', found {t:?}"))),
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.bump() {
            Some(Tok::Int(i)) => Ok(Scalar::rational(BigRational::from_integer(i))),
            Some(Tok::Ident(name)) => Symbol::parse(&name)
                .map(Scalar::var)
                .ok_or_else(|| Error::Parse(format!("unknown symbol {name:?}"))),
            Some(Tok::Open) => {
                let e = self.expr()?;
                self.expect_close()?;
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses a scalar expression in the parameters.
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(v)
}

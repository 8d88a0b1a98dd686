//! Parser for the canonical scalar text grammar, e.g.
//! `(q^2*t - 1)/(q^(1/2)*u1^2)`.

use super::scalar::ExactScalar;
use super::vars::{Mono, Var};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            '[' => {
                it.next();
                out.push(Tok::LBracket);
            }
            ']' => {
                it.next();
                out.push(Tok::RBracket);
            }
            ',' => {
                it.next();
                out.push(Tok::Comma);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(n.parse().unwrap()));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut id = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        id.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(id));
            }
            other => return Err(Error::Parse(format!("unexpected character '{}'", other))),
        }
    }
    Ok(out)
}

/// Resolves identifiers (optionally with bracket indices, like `z[i,a]`) to
/// variables.
pub type VarResolver<'a> = &'a dyn Fn(&str, Option<(i64, i64)>) -> Option<Var>;

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    resolve: VarResolver<'a>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {:?}, got {:?}", t, got))),
        }
    }

    fn expr(&mut self) -> Result<ExactScalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.next();
                    acc = acc.checked_div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExactScalar> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            let f = self.factor()?;
            return Ok(&ExactScalar::zero() - &f);
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let (n2, d) = self.exponent()?;
            // exponent n2/d with d in {1, 2}
            return match d {
                1 => base.pow(n2),
                2 => {
                    // half power: base must be a single monomial
                    if base.denominator().num_terms() == 1 && base.numerator().num_terms() == 1 {
                        let (nm, nc) = base.numerator().leading().unwrap();
                        let (dm, dc) = base.denominator().leading().unwrap();
                        if nc == dc {
                            let m = nm.div(dm);
                            if m.exps().iter().any(|(_, e2)| (e2 * n2) % 2 != 0) {
                                return Err(Error::Parse(
                                    "fractional power not on the half-integer lattice".into(),
                                ));
                            }
                            let half = Mono::from_pairs(
                                m.exps().iter().map(|(v, e2)| (*v, e2 * n2 / 2)),
                            );
                            return Ok(ExactScalar::monomial(half));
                        }
                    }
                    Err(Error::Parse("half power of a non-monomial".into()))
                }
                _ => Err(Error::Parse("exponent denominator must be 1 or 2".into())),
            };
        }
        Ok(base)
    }

    /// Returns (numerator, denominator) of the exponent, denominator 1 or 2.
    fn exponent(&mut self) -> Result<(i64, i64)> {
        let mut neg = false;
        let mut parened = false;
        if let Some(Tok::LParen) = self.peek() {
            self.next();
            parened = true;
        }
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            neg = true;
        }
        let n = match self.next() {
            Some(Tok::Num(n)) => n,
            got => return Err(Error::Parse(format!("expected exponent, got {:?}", got))),
        };
        let mut num: i64 = n
            .try_into()
            .map_err(|_| Error::Parse("exponent too large".into()))?;
        if neg {
            num = -num;
        }
        let mut den = 1i64;
        if parened {
            if let Some(Tok::Slash) = self.peek() {
                self.next();
                match self.next() {
                    Some(Tok::Num(d)) => {
                        den = d
                            .try_into()
                            .map_err(|_| Error::Parse("exponent too large".into()))?;
                    }
                    got => return Err(Error::Parse(format!("expected number, got {:?}", got))),
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok((num, den))
    }

    fn atom(&mut self) -> Result<ExactScalar> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(ExactScalar::from_rational(BigRational::from(n))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                // optional bracket index: name[i,a]
                let idx = if let Some(Tok::LBracket) = self.peek() {
                    self.next();
                    let i = self.int()?;
                    self.expect(Tok::Comma)?;
                    let a = self.int()?;
                    self.expect(Tok::RBracket)?;
                    Some((i, a))
                } else {
                    None
                };
                match (self.resolve)(&name, idx) {
                    Some(v) => Ok(ExactScalar::var(v)),
                    None => Err(Error::Parse(format!("unknown variable '{}'", name))),
                }
            }
            got => Err(Error::Parse(format!("unexpected token {:?}", got))),
        }
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if let Some(Tok::Minus) = self.peek() {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(n)) => {
                let v: i64 = n
                    .try_into()
                    .map_err(|_| Error::Parse("index too large".into()))?;
                Ok(if neg { -v } else { v })
            }
            got => Err(Error::Parse(format!("expected integer, got {:?}", got))),
        }
    }
}

/// Default variable names: `q t p kappa hbar theta u1.. a1.. z1.. x1..`.
pub fn default_resolver(name: &str, idx: Option<(i64, i64)>) -> Option<Var> {
    if idx.is_some() {
        return None;
    }
    match name {
        "q" => Some(Var::Q),
        "t" => Some(Var::T),
        "p" => Some(Var::P),
        "kappa" => Some(Var::Kappa),
        "hbar" => Some(Var::HBar),
        "theta" => Some(Var::Theta),
        _ => {
            let (head, tail) = name.split_at(1);
            let k: u16 = tail.parse().ok()?;
            if k == 0 {
                return None;
            }
            match head {
                "u" => Some(Var::U(k - 1)),
                "a" => Some(Var::A(k - 1)),
                "z" => Some(Var::Z(k - 1)),
                "x" => Some(Var::X(k - 1)),
                _ => None,
            }
        }
    }
}

/// Parse with the default variable names.
pub fn parse_scalar(input: &str) -> Result<ExactScalar> {
    parse_scalar_with(input, &default_resolver)
}

/// Parse with a custom identifier resolver (used by the shuffle grammar for
/// indexed variables `z[i,a]`).
pub fn parse_scalar_with(input: &str, resolve: VarResolver) -> Result<ExactScalar> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        resolve,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_simple() {
        let s = parse_scalar("(q^2*t - 1)/(q^(1/2)*u1^2)").unwrap();
        let rendered = format!("{}", s);
        let s2 = parse_scalar(&rendered).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn half_powers() {
        let s = parse_scalar("q^(1/2) - q^(-1/2)").unwrap();
        let b = super::super::scalar::bracket(&Mono::var(Var::Q));
        assert_eq!(s, b);
    }

    #[test]
    fn precedence() {
        let s = parse_scalar("1 + 2*q^2").unwrap();
        let expect = &ExactScalar::one()
            + &(&ExactScalar::from_int(2) * &ExactScalar::var(Var::Q).pow(2).unwrap());
        assert_eq!(s, expect);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("q +").is_err());
        assert!(parse_scalar("unknown1x").is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}

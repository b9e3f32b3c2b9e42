//! Canonical text form of polynomials.
//!
//! `term := rational [" * " factor (" " factor)*]`, factors in ascending id
//! order, even factors with exponent above 1 written `name^n`. Terms follow
//! the monomial order and are joined by `" + "` or `" - "`; the first term
//! carries its sign in the rational. The zero polynomial prints as `0`.
//! The parser accepts any spacing, factors in any order, a missing
//! coefficient (meaning 1) and the Unicode minus sign.

use std::fmt::Write;
use std::sync::Arc;

use num::{BigInt, One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::GPoly;
use super::table::GeneratorTable;
use super::{AlgebraError, Rational};

fn write_rational(out: &mut String, q: &Rational) {
    if q.is_integer() {
        write!(out, "{}", q.numer()).unwrap();
    } else {
        write!(out, "{}/{}", q.numer(), q.denom()).unwrap();
    }
}

pub fn serialize_monomial(m: &Monomial, t: &GeneratorTable) -> String {
    let mut out = String::new();
    for (i, &(id, e)) in m.factors().iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&t.entry(id).name);
        if e > 1 {
            write!(out, "^{e}").unwrap();
        }
    }
    out
}

pub fn serialize(p: &GPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, q)) in p.terms().iter().enumerate() {
        if i == 0 {
            write_rational(&mut out, q);
        } else {
            out.push_str(if q.is_negative() { " - " } else { " + " });
            write_rational(&mut out, &q.abs());
        }
        if !m.is_one() {
            out.push_str(" * ");
            out.push_str(&serialize_monomial(m, p.table()));
        }
    }
    out
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse { pos: self.pos, msg: msg.into() }
    }
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }
    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }
    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }
    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }
    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            return None;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        Some(&self.src[start..self.pos])
    }
}

pub fn parse(src: &str, table: &Arc<GeneratorTable>) -> Result<GPoly, AlgebraError> {
    let mut lx = Lexer { src, pos: 0 };
    let mut out = GPoly::zero(table);
    let mut first = true;
    loop {
        lx.skip_ws();
        if lx.peek().is_none() {
            if first {
                return Err(lx.err("empty expression"));
            }
            break;
        }
        let mut negative = false;
        if let Some(s) = lx.sign() {
            negative = s;
            lx.skip_ws();
        } else if !first {
            return Err(lx.err("expected '+' or '-' between terms"));
        }
        if !first {
            // The coefficient may carry its own sign after the joiner.
            if let Some(s) = lx.sign() {
                negative ^= s;
            }
        }
        first = false;
        lx.skip_ws();
        let mut coeff = Rational::one();
        let mut has_coeff = false;
        if let Some(num) = lx.digits() {
            has_coeff = true;
            let n: BigInt = num.parse().map_err(|_| lx.err("bad integer"))?;
            let mut q = Rational::from_integer(n);
            if lx.peek() == Some('/') {
                lx.bump();
                let d = lx.digits().ok_or_else(|| lx.err("expected denominator"))?;
                let d: BigInt = d.parse().map_err(|_| lx.err("bad integer"))?;
                if d.is_zero() {
                    return Err(lx.err("zero denominator"));
                }
                q /= Rational::from_integer(d);
            }
            coeff = q;
            lx.skip_ws();
        }
        let mut ids: Vec<u16> = Vec::new();
        let expect_factors = if has_coeff {
            if lx.peek() == Some('*') {
                lx.bump();
                true
            } else {
                false
            }
        } else {
            true
        };
        if expect_factors {
            loop {
                lx.skip_ws();
                let at = lx.pos;
                let Some(name) = lx.ident() else { break };
                let id = table.lookup(name).ok_or(AlgebraError::Parse {
                    pos: at,
                    msg: format!("unknown generator '{name}'"),
                })?;
                let mut e = 1u32;
                if lx.peek() == Some('^') {
                    lx.bump();
                    let d = lx.digits().ok_or_else(|| lx.err("expected exponent"))?;
                    e = d.parse().map_err(|_| lx.err("bad exponent"))?;
                    if e > 1 && table.is_odd(id) {
                        return Err(AlgebraError::Parse {
                            pos: at,
                            msg: format!("odd generator '{name}' cannot carry an exponent"),
                        });
                    }
                }
                ids.extend(std::iter::repeat(id).take(e as usize));
                lx.skip_ws();
                if lx.peek() == Some('*') {
                    lx.bump();
                }
            }
            if ids.is_empty() {
                return Err(lx.err("expected a factor"));
            }
        }
        if negative {
            coeff = -coeff;
        }
        let term = GPoly::normalize(table, &[(coeff, ids)])?;
        out = &out + &term;
    }
    Ok(out)
}

//! Canonical text form of polynomials: `3/2*x^2*y^-1 + 5`.
//!
//! Terms are printed in descending lexicographic exponent order, unit
//! coefficients are omitted, and complex coefficients are written as
//! `[re, im]`. Printing then parsing is the identity.

use alloc::string::ToString;
#[cfg(test)]
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::complex::ComplexPolynomial;
use super::exponent::ExponentVector;
use super::poly::{Polynomial, Ring};
use super::{Complex64, Rational};
use crate::{Error, Result};

fn write_monomial(f: &mut dyn fmt::Write, ring: &Ring, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.entries().iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&ring.vars()[i])?;
        if k != 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

fn write_rational(f: &mut dyn fmt::Write, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn write_polynomial(f: &mut dyn fmt::Write, p: &Polynomial) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (idx, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let a = c.abs();
        if e.is_zero() {
            write_rational(f, &a)?;
        } else {
            if !a.is_one() {
                write_rational(f, &a)?;
                f.write_str("*")?;
            }
            write_monomial(f, p.ring(), e)?;
        }
    }
    Ok(())
}

pub(crate) fn write_complex_polynomial(
    f: &mut dyn fmt::Write,
    p: &ComplexPolynomial,
) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (idx, (e, c)) in p.terms().rev().enumerate() {
        if idx > 0 {
            f.write_str(" + ")?;
        }
        write!(f, "[{:?}, {:?}]", c.re, c.im)?;
        if !e.is_zero() {
            f.write_str("*")?;
            write_monomial(f, p.ring(), e)?;
        }
    }
    Ok(())
}

enum Factor {
    Num(Rational),
    Cplx(Complex64),
    Var(usize, i64),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
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

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if pred(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err("expected digits");
        }
        digits.parse::<BigInt>().or_else(|_| self.err("bad integer"))
    }

    fn float(&mut self) -> Result<f64> {
        self.skip_ws();
        let s = self.take_while(|c| {
            c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '-' | '+') || c.is_ascii_alphabetic()
        });
        s.parse::<f64>().or_else(|_| self.err("bad floating-point literal"))
    }

    fn factor(&mut self) -> Result<Factor> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.eat('/') {
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    Ok(Factor::Num(Rational::new(num, den)))
                } else {
                    Ok(Factor::Num(Rational::from_integer(num)))
                }
            }
            Some('[') => {
                self.pos += 1;
                let re = self.float()?;
                if !self.eat(',') {
                    return self.err("expected `,` in complex literal");
                }
                let im = self.float()?;
                if !self.eat(']') {
                    return self.err("expected `]`");
                }
                Ok(Factor::Cplx(Complex64::new(re, im)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                let idx = match self.ring.index_of(name) {
                    Some(i) => i,
                    None => return self.err("unknown variable"),
                };
                let mut k = 1i64;
                if self.eat('^') {
                    let neg = self.eat('-');
                    let mag = self.integer()?;
                    let mag: i64 = mag.try_into().or_else(|_| self.err("exponent too large"))?;
                    k = if neg { -mag } else { mag };
                    if k < 0 && !self.ring.is_laurent() {
                        return self.err("negative exponent in a non-Laurent ring");
                    }
                }
                Ok(Factor::Var(idx, k))
            }
            _ => self.err("expected a number, `[`, or a variable"),
        }
    }

    fn terms(&mut self) -> Result<Vec<(bool, Vec<Factor>)>> {
        let mut out = Vec::new();
        let mut neg = false;
        self.skip_ws();
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        loop {
            let mut factors = alloc::vec![self.factor()?];
            while self.eat('*') {
                factors.push(self.factor()?);
            }
            out.push((neg, factors));
            self.skip_ws();
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}

/// Parses a polynomial over `ring` from its text form.
pub fn parse_polynomial(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
    if text.trim() == "0" {
        return Ok(Polynomial::zero(ring));
    }
    let mut p = Parser {
        src: text,
        pos: 0,
        ring,
    };
    let mut out = Polynomial::zero(ring);
    for (neg, factors) in p.terms()? {
        let mut c = Rational::one();
        let mut e = ExponentVector::zero(ring.nvars());
        for f in factors {
            match f {
                Factor::Num(q) => c *= q,
                Factor::Var(i, k) => e.0[i] += k,
                Factor::Cplx(_) => return p.err("complex coefficient in a rational polynomial"),
            }
        }
        if neg {
            c = -c;
        }
        out.add_term(e, c);
    }
    Ok(out)
}

/// Parses a polynomial whose coefficients may be `[re, im]` literals.
pub fn parse_complex_polynomial(ring: &Arc<Ring>, text: &str) -> Result<ComplexPolynomial> {
    if text.trim() == "0" {
        return Ok(ComplexPolynomial::zero(ring));
    }
    let mut p = Parser {
        src: text,
        pos: 0,
        ring,
    };
    let mut out = ComplexPolynomial::zero(ring);
    for (neg, factors) in p.terms()? {
        let mut c = Complex64::new(1.0, 0.0);
        let mut e = ExponentVector::zero(ring.nvars());
        for f in factors {
            match f {
                Factor::Num(q) => c *= super::rational_to_f64(&q),
                Factor::Cplx(z) => c *= z,
                Factor::Var(i, k) => e.0[i] += k,
            }
        }
        if neg {
            c = -c;
        }
        out.add_term(e, c);
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) fn to_text(p: &Polynomial) -> String {
    let mut s = String::new();
    let _ = write_polynomial(&mut s, p);
    s
}

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::exponent::ExponentVector;
use super::Rational;
use crate::{Error, Result};

/// Named variables plus a flag allowing negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    laurent: bool,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            laurent: false,
        })
    }

    pub fn laurent<S: AsRef<str>>(vars: &[S]) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            laurent: true,
        })
    }

    pub fn with_flag<S: AsRef<str>>(vars: &[S], laurent: bool) -> Arc<Ring> {
        if laurent {
            Self::laurent(vars)
        } else {
            Self::new(vars)
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same variables followed by `extra`.
    pub fn extended(&self, extra: &str) -> Arc<Ring> {
        let mut vars = self.vars.clone();
        vars.push(extra.to_string());
        Arc::new(Ring {
            vars,
            laurent: self.laurent,
        })
    }

    /// Header line declaring the variables, e.g. `ring(x, y)` or `laurent(u)`.
    pub fn header(&self) -> String {
        let kind = if self.laurent { "laurent" } else { "ring" };
        format!("{kind}({})", self.vars.join(", "))
    }

    /// Parses a header produced by [`Ring::header`].
    pub fn parse_header(text: &str) -> Result<Arc<Ring>> {
        let text = text.trim();
        let (laurent, rest) = if let Some(r) = text.strip_prefix("laurent(") {
            (true, r)
        } else if let Some(r) = text.strip_prefix("ring(") {
            (false, r)
        } else {
            return Err(Error::Parse {
                pos: 0,
                msg: "expected `ring(` or `laurent(`".into(),
            });
        };
        let inner = rest.strip_suffix(')').ok_or(Error::Parse {
            pos: text.len(),
            msg: "missing `)`".into(),
        })?;
        let vars: Vec<&str> = inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Ok(Ring::with_flag(&vars, laurent))
    }
}

/// Sparse multivariate (Laurent) polynomial with exact rational coefficients.
///
/// No zero coefficients are stored; negative exponents only occur in Laurent
/// rings.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<ExponentVector, Rational>,
}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, ExponentVector::zero(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, ExponentVector::unit(ring.nvars(), i), Rational::one())
    }

    pub fn monomial(ring: &Arc<Ring>, exp: ExponentVector, c: Rational) -> Self {
        debug_assert_eq!(exp.len(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from terms, summing duplicates and validating
    /// exponent lengths and signs against the ring.
    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (e, c) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.nvars(),
                    found: e.len(),
                });
            }
            if !ring.is_laurent() && e.has_negative() {
                return Err(Error::InvalidDatum(format!(
                    "negative exponent {e} in a non-Laurent ring"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_zero)
    }

    /// Lex-minimal term.
    pub fn min_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next()
    }

    /// Lex-maximal term.
    pub fn max_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(ExponentVector::total).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c · x^e`.
    pub fn mul_monomial(&self, e: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k + e, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// target ring; negative exponents require monomial images.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        if images.iter().any(|p| !same_ring(p.ring(), target)) {
            return Err(Error::RingMismatch);
        }
        let mut cache: BTreeMap<(usize, i64), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !cache.contains_key(&(i, k)) {
                    let p = if k > 0 {
                        images[i].pow(k as u32)
                    } else {
                        images[i].invert_monomial()?.pow((-k) as u32)
                    };
                    cache.insert((i, k), p);
                }
                term = &term * &cache[&(i, k)];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Inverse of a single-term polynomial in a Laurent ring (or a constant).
    pub fn invert_monomial(&self) -> Result<Polynomial> {
        if self.terms.len() != 1 {
            return Err(Error::Evaluation(
                "only monomials can be inverted".into(),
            ));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if !e.is_zero() && !self.ring.is_laurent() {
            return Err(Error::Evaluation(
                "inverting a non-constant monomial needs a Laurent ring".into(),
            ));
        }
        Ok(Polynomial::monomial(&self.ring, -e, c.recip()))
    }

    /// Replaces variable `var` by the constant `value`.
    pub fn specialize(&self, var: usize, value: &Rational) -> Result<Polynomial> {
        let mut out = Polynomial::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e[var];
            if k < 0 && value.is_zero() {
                return Err(Error::Evaluation(
                    "negative power of a variable specialised to zero".into(),
                ));
            }
            let factor = if k >= 0 {
                num_traits::pow(value.clone(), k as usize)
            } else {
                num_traits::pow(value.recip(), (-k) as usize)
            };
            let mut e2 = e.clone();
            e2.0[var] = 0;
            out.add_term(e2, c * factor);
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[var] -= 1;
            out.add_term(e2, c * Rational::from_integer(k.into()));
        }
        out
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `map[i]` of the target ring.
    pub fn relabel(&self, target: &Arc<Ring>, map: &[usize]) -> Result<Polynomial> {
        if map.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: map.len(),
            });
        }
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = ExponentVector::zero(target.nvars());
            for (i, &k) in e.entries().iter().enumerate() {
                e2.0[map[i]] += k;
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Drops variables at the given positions; every dropped exponent must be zero.
    pub fn restrict(&self, target: &Arc<Ring>, keep: &[usize]) -> Result<Polynomial> {
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let dropped: i64 = (0..e.len())
                .filter(|i| !keep.contains(i))
                .map(|i| e[i].abs())
                .sum();
            if dropped != 0 {
                return Err(Error::InvalidDatum(
                    "cannot restrict: polynomial involves a dropped variable".into(),
                ));
            }
            out.add_term(
                ExponentVector(keep.iter().map(|&i| e[i]).collect()),
                c.clone(),
            );
        }
        Ok(out)
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomial arithmetic across different rings: {} vs {}",
            self.ring.header(),
            other.ring.header()
        );
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_ring(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::grammar::write_polynomial(f, self)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :: {}", self.ring.header(), self)
    }
}

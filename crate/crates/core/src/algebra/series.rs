use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::grammar::parse_polynomial;
use super::poly::{Polynomial, Ring};
use super::Rational;
use crate::{Error, Result};

/// Truncated Laurent series `u^start · Σ cᵢ uⁱ + O(u^precision)`.
///
/// Precision is tracked honestly through every operation, so a nonzero
/// leading coefficient is always exact. A series whose known coefficients
/// all vanish carries only its absolute precision.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    start: i64,
    coeffs: Vec<Rational>,
}

impl LaurentSeries {
    /// Series with coefficients `coeffs` starting at `u^start`; leading zeros
    /// are absorbed into the exponent.
    pub fn from_coeffs(start: i64, coeffs: Vec<Rational>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => LaurentSeries { start, coeffs },
            Some(k) => LaurentSeries {
                start: start + k as i64,
                coeffs: coeffs[k..].to_vec(),
            },
            None => LaurentSeries {
                start: start + coeffs.len() as i64,
                coeffs: Vec::new(),
            },
        }
    }

    /// `O(u^precision)`.
    pub fn zero(precision: i64) -> Self {
        LaurentSeries {
            start: precision,
            coeffs: Vec::new(),
        }
    }

    /// `c · u^e` known to relative precision `rel`.
    pub fn monomial(e: i64, c: Rational, rel: usize) -> Self {
        if c.is_zero() {
            return Self::zero(e + rel as i64);
        }
        let mut coeffs = vec![Rational::zero(); rel.max(1)];
        coeffs[0] = c;
        LaurentSeries { start: e, coeffs }
    }

    /// Exponent of the leading term, or `None` if every known coefficient vanishes.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Absolute precision: the first exponent whose coefficient is unknown.
    pub fn precision(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^e`, or `None` beyond the precision.
    pub fn coefficient(&self, e: i64) -> Option<Rational> {
        if e >= self.precision() {
            None
        } else if e < self.start {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(e - self.start) as usize].clone())
        }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let start = match (self.order(), other.order()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Self::zero(prec),
        };
        if start >= prec {
            return Self::zero(prec);
        }
        let mut coeffs = vec![Rational::zero(); (prec - start) as usize];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.start + i as i64;
                if e >= prec {
                    break;
                }
                coeffs[(e - start) as usize] += c;
            }
        }
        Self::from_coeffs(start, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Self::zero(self.start + other.start),
            (true, false) => return Self::zero(self.start + other.start),
            (false, true) => return Self::zero(self.start + other.start),
            _ => {}
        }
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(self.start + other.start, coeffs)
    }

    /// Multiplicative inverse; `None` when the series is zero to precision.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = self.coeffs.first()?;
        let inv0 = a0.recip();
        let n = self.coeffs.len();
        let mut b: Vec<Rational> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut s = Rational::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &b[k - i];
                }
            }
            b.push(-(s * &inv0));
        }
        Some(LaurentSeries {
            start: -self.start,
            coeffs: b,
        })
    }

    /// Integer power; negative exponents need a nonzero series.
    pub fn powi(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::monomial(0, Rational::one(), base.coeffs.len().max(1));
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

/// An implicitly defined power series `Z(u)` with `Z = rhs(u, Z, …)`.
///
/// The right-hand side lives in the local ring; it may mention earlier
/// branches and must be contracting: no constant term and no bare linear
/// `Z` term, so the fixed-point iteration fixes one more coefficient each pass.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub symbol: String,
    pub rhs: Polynomial,
}

/// Image of one ambient variable as a Laurent polynomial in the local
/// parameter and the branch symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct Substitution {
    pub var: String,
    pub image: Polynomial,
}

/// Local expansion of a curve at a smooth point.
///
/// Ambient variables are replaced by Laurent series in one local parameter;
/// orders of vanishing are then read off the expanded series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesContext {
    parameter: String,
    local: Arc<Ring>,
    branches: Vec<Branch>,
    substitutions: Vec<Substitution>,
    order: usize,
    cap: usize,
}

pub const DEFAULT_SERIES_CAP: usize = 256;

impl SeriesContext {
    /// Builds a context from text.
    ///
    /// `branches` pairs each branch symbol with its right-hand side; `images`
    /// gives one local expression per ambient variable, in ring order. All
    /// expressions are parsed in the Laurent ring `(parameter, branch symbols…)`.
    pub fn new<S: AsRef<str>>(
        ambient: &Arc<Ring>,
        parameter: &str,
        branches: &[(S, S)],
        images: &[S],
        order: usize,
        cap: usize,
    ) -> Result<Self> {
        if order == 0 || order > cap {
            return Err(Error::InvalidDatum(format!(
                "series order {order} must lie in 1..={cap}"
            )));
        }
        if images.len() != ambient.nvars() {
            return Err(Error::DimensionMismatch {
                expected: ambient.nvars(),
                found: images.len(),
            });
        }
        let mut names: Vec<&str> = vec![parameter];
        names.extend(branches.iter().map(|(s, _)| s.as_ref()));
        let local = Ring::laurent(&names);
        let mut parsed = Vec::with_capacity(branches.len());
        for (k, (sym, rhs)) in branches.iter().enumerate() {
            let rhs = parse_polynomial(&local, rhs.as_ref())?;
            if rhs.terms().any(|(e, _)| e.has_negative()) {
                return Err(Error::InvalidDatum(format!(
                    "branch {} must be a power series",
                    sym.as_ref()
                )));
            }
            for (e, _) in rhs.terms() {
                let later = e.entries()[k + 2..].iter().any(|&x| x != 0);
                let own = e[k + 1];
                let other_z: i64 = e.entries()[1..].iter().sum::<i64>() - own;
                let contracting = e[0] >= 1 || own >= 2 || (own == 1 && other_z >= 1);
                if later || (own > 0 && !contracting) || e.is_zero() {
                    return Err(Error::InvalidDatum(format!(
                        "branch {} is not a contracting fixed-point equation",
                        sym.as_ref()
                    )));
                }
            }
            parsed.push(Branch {
                symbol: String::from(sym.as_ref()),
                rhs,
            });
        }
        let substitutions = images
            .iter()
            .zip(ambient.vars())
            .map(|(img, var)| {
                Ok(Substitution {
                    var: var.clone(),
                    image: parse_polynomial(&local, img.as_ref())?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesContext {
            parameter: String::from(parameter),
            local,
            branches: parsed,
            substitutions,
            order,
            cap,
        })
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn local_ring(&self) -> &Arc<Ring> {
        &self.local
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn substitutions(&self) -> &[Substitution] {
        &self.substitutions
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Solves the branch equations to absolute precision `prec`.
    fn solve_branches(&self, prec: usize) -> Result<Vec<LaurentSeries>> {
        let mut solved: Vec<LaurentSeries> = Vec::with_capacity(self.branches.len());
        for (k, br) in self.branches.iter().enumerate() {
            let mut z = LaurentSeries::zero(prec as i64);
            let mut converged = false;
            for _ in 0..=prec + 1 {
                let mut vals = solved.clone();
                vals.push(z.clone());
                let next = truncate(&eval_local(&br.rhs, &vals, k + 1, prec)?, prec as i64);
                if next == z {
                    converged = true;
                    break;
                }
                z = next;
            }
            if !converged {
                return Err(Error::Chart(format!(
                    "branch {} did not converge",
                    br.symbol
                )));
            }
            solved.push(z);
        }
        Ok(solved)
    }

    /// Local series of every ambient variable at working precision `n`.
    pub fn images(&self, n: usize) -> Result<Vec<LaurentSeries>> {
        let branches = self.solve_branches(n)?;
        self.substitutions
            .iter()
            .map(|s| eval_local(&s.image, &branches, branches.len(), n))
            .collect()
    }

    /// Series expansion of `f` at working precision `n`.
    pub fn expand(&self, f: &Polynomial, n: usize) -> Result<LaurentSeries> {
        if f.ring().nvars() != self.substitutions.len() {
            return Err(Error::DimensionMismatch {
                expected: self.substitutions.len(),
                found: f.ring().nvars(),
            });
        }
        let images = self.images(n)?;
        expand_with(f, &images, n)
    }

    /// Order and leading coefficient of `num/den`, escalating precision.
    pub fn leading(&self, num: &Polynomial, den: &Polynomial) -> Result<(i64, Rational)> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::UndefinedValuation);
        }
        let mut n = self.order;
        loop {
            let images = self.images(n)?;
            let a = expand_with(num, &images, n)?;
            let b = expand_with(den, &images, n)?;
            if let (Some(oa), Some(ob)) = (a.order(), b.order()) {
                let c = a.leading_coefficient().unwrap() / b.leading_coefficient().unwrap();
                return Ok((oa - ob, c));
            }
            if n >= self.cap {
                return Err(Error::InconclusiveValuation { cap: self.cap });
            }
            n = (2 * n).min(self.cap);
        }
    }
}

fn truncate(s: &LaurentSeries, prec: i64) -> LaurentSeries {
    if s.precision() <= prec {
        return s.clone();
    }
    if s.start >= prec {
        return LaurentSeries::zero(prec);
    }
    let keep = (prec - s.start) as usize;
    LaurentSeries::from_coeffs(s.start, s.coeffs[..keep].to_vec())
}

/// Evaluates a local-ring polynomial with the first `nsym` branch symbols
/// bound to `vals`; the parameter itself is exact to relative precision `n`.
fn eval_local(
    p: &Polynomial,
    vals: &[LaurentSeries],
    nsym: usize,
    n: usize,
) -> Result<LaurentSeries> {
    let mut out: Option<LaurentSeries> = None;
    let mut cache: BTreeMap<(usize, i64), LaurentSeries> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut term = LaurentSeries::monomial(e[0], c.clone(), n);
        for j in 0..nsym {
            let k = e[j + 1];
            if k == 0 {
                continue;
            }
            if !cache.contains_key(&(j, k)) {
                let pw = vals[j].powi(k).ok_or_else(|| {
                    Error::Chart("negative power of a branch vanishing to precision".into())
                })?;
                cache.insert((j, k), pw);
            }
            term = term.mul(&cache[&(j, k)]);
        }
        out = Some(match out {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    Ok(out.unwrap_or_else(|| LaurentSeries::zero(n as i64)))
}

fn expand_with(f: &Polynomial, images: &[LaurentSeries], n: usize) -> Result<LaurentSeries> {
    let mut out: Option<LaurentSeries> = None;
    let mut cache: BTreeMap<(usize, i64), Option<LaurentSeries>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let mut term = LaurentSeries::monomial(0, c.clone(), n);
        for (i, &k) in e.entries().iter().enumerate() {
            if k == 0 {
                continue;
            }
            let pw = cache
                .entry((i, k))
                .or_insert_with(|| images[i].powi(k))
                .clone();
            match pw {
                Some(pw) => term = term.mul(&pw),
                // A vanishing-to-precision image inverted: this precision
                // cannot decide anything.
                None => return Ok(LaurentSeries::zero(i64::MIN / 4)),
            }
        }
        out = Some(match out {
            None => term,
            Some(acc) => acc.add(&term),
        });
    }
    Ok(out.unwrap_or_else(|| LaurentSeries::zero(n as i64)))
}

/// Order of vanishing of `num/den` at the expansion point.
pub fn series_valuation(num: &Polynomial, den: &Polynomial, ctx: &SeriesContext) -> Result<i64> {
    ctx.leading(num, den).map(|(o, _)| o)
}

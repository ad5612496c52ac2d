use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use core::fmt;

use super::exponent::ExponentVector;
use super::poly::{Polynomial, Ring};
use super::{rational_to_f64, Complex64};
use crate::{Error, Result};

/// Polynomial with double-precision complex coefficients, used for fibers
/// specialised at a complex parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<ExponentVector, Complex64>,
}

impl ComplexPolynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        ComplexPolynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_rational(p: &Polynomial) -> Self {
        let mut out = ComplexPolynomial::zero(p.ring());
        for (e, c) in p.terms() {
            out.add_term(e.clone(), Complex64::new(rational_to_f64(c), 0.0));
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&e);
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Complex64 {
        self.terms.get(e).copied().unwrap_or_default()
    }

    /// Largest coefficient-wise distance to `other` (same ring assumed).
    pub fn max_coefficient_distance(&self, other: &ComplexPolynomial) -> f64 {
        let mut d: f64 = 0.0;
        for (e, c) in &self.terms {
            d = d.max((c - other.coefficient(e)).norm());
        }
        for (e, c) in &other.terms {
            if !self.terms.contains_key(e) {
                d = d.max(c.norm());
            }
        }
        d
    }
}

impl fmt::Display for ComplexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::grammar::write_complex_polynomial(f, self)
    }
}

fn monomial_value(e: &ExponentVector, point: &[Complex64]) -> Result<Complex64> {
    let mut m = Complex64::new(1.0, 0.0);
    for (i, &k) in e.entries().iter().enumerate() {
        if k == 0 {
            continue;
        }
        let x = point[i];
        if k < 0 {
            if x.norm_sqr() == 0.0 {
                return Err(Error::Evaluation(format!(
                    "coordinate {i} is zero but carries exponent {k}"
                )));
            }
            m *= x.inv().powi((-k) as i32);
        } else {
            m *= x.powi(k as i32);
        }
    }
    Ok(m)
}

/// Evaluates `f` at a complex point, accumulating terms in ascending
/// exponent order.
pub fn evaluate_complex(f: &Polynomial, point: &[Complex64]) -> Result<Complex64> {
    if point.len() != f.ring().nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.ring().nvars(),
            found: point.len(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (e, c) in f.terms() {
        acc += monomial_value(e, point)? * rational_to_f64(c);
    }
    Ok(acc)
}

impl ComplexPolynomial {
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += monomial_value(e, point)? * c;
        }
        Ok(acc)
    }
}

/// `|f(p)| / Σ |c_α p^α|`, the residual relative to the size of the terms.
pub fn relative_residual(f: &Polynomial, point: &[Complex64]) -> Result<f64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for (e, c) in f.terms() {
        let t = monomial_value(e, point)? * rational_to_f64(c);
        acc += t;
        scale += t.norm();
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(acc.norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    #[test]
    fn evaluates_examples() {
        let r = Ring::new(&["x", "y"]);
        let f = parse_polynomial(&r, "x + y").unwrap();
        let v = evaluate_complex(&f, &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)]).unwrap();
        assert_eq!(v, Complex64::new(1.0, 2.0));
        let g = parse_polynomial(&r, "x^2").unwrap();
        let v = evaluate_complex(&g, &[Complex64::new(3.0, 0.0), Complex64::new(-7.5, 0.25)]).unwrap();
        assert_eq!(v, Complex64::new(9.0, 0.0));
        let r1 = Ring::new(&["x"]);
        let h = parse_polynomial(&r1, "x^3 + 1").unwrap();
        assert_eq!(evaluate_complex(&h, &[Complex64::new(-1.0, 0.0)]).unwrap().norm(), 0.0);
    }

    #[test]
    fn laurent_zero_coordinate_is_an_error() {
        let r = Ring::laurent(&["u"]);
        let f = parse_polynomial(&r, "u^-1 + 1").unwrap();
        assert!(matches!(
            evaluate_complex(&f, &[Complex64::new(0.0, 0.0)]),
            Err(Error::Evaluation(_))
        ));
        assert!(evaluate_complex(&f, &[]).is_err());
    }
}

//! Exact arithmetic foundation.
//!
//! Rationals are arbitrary precision ([`Rational`]); polynomials are sparse
//! maps from [`ExponentVector`] to nonzero rational coefficients over a named
//! [`Ring`]. Two valuation backends are provided: the lex-extremal monomial
//! valuation and the Laurent-series order at a smooth point of a curve.

mod complex;
mod exponent;
mod grammar;
mod order;
mod poly;
mod reduce;
mod series;
mod valuation;

pub use complex::{evaluate_complex, relative_residual, ComplexPolynomial};
pub use exponent::ExponentVector;
pub use grammar::{parse_complex_polynomial, parse_polynomial};
pub use order::{compare_composite, BiDegree};
pub use poly::{Polynomial, Ring};
pub use reduce::{Reduction, Reductions};
pub use series::{series_valuation, DEFAULT_SERIES_CAP, Branch, LaurentSeries, SeriesContext, Substitution};
pub use valuation::{monomial_valuation, Orientation, ValuationBackend};

pub use num_complex::Complex64;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Converts a rational to the nearest double.
pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Returns `(numerator, denominator)` as `i64`, or `None` on overflow.
pub fn rational_parts(q: &Rational) -> Option<(i64, i64)> {
    use num_traits::ToPrimitive;
    Some((q.numer().to_i64()?, q.denom().to_i64()?))
}

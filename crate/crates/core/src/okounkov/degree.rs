use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::{rational_to_f64, Rational};
use crate::{Error, Result};

use super::linalg::{solve, Matrix};
use super::semigroup::{hilbert_function, okounkov_body, ValueSemigroup};

/// Comparison of Hilbert-function growth with the body's volume.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeReport {
    pub volume: Rational,
    /// Leading coefficient of the degree-`n` polynomial fitted to `H_S(1..=K)`.
    pub fitted: Rational,
    pub relative_error: f64,
    /// `n! · Vol(Δ)`, the degree of the embedding.
    pub degree: Rational,
    pub samples: Vec<u64>,
}

/// Fits `H_S(k) ≈ c kⁿ + …` by exact least squares over `k = 1..=K` and
/// compares `c` with `Vol(Δ(S))`.
///
/// Needs at least `n + 1` samples to determine the fit.
pub fn degree_check(s: &ValueSemigroup, samples: u64) -> Result<DegreeReport> {
    let n = s.rank();
    if (samples as usize) < n + 1 {
        return Err(Error::InsufficientSamples {
            needed: n + 1,
            got: samples as usize,
        });
    }
    let body = okounkov_body(s)?;
    let h = hilbert_function(s, samples);
    let ks: Vec<Rational> = (1..=samples).map(|k| Rational::from_integer((k as i64).into())).collect();
    let rows: Vec<Vec<Rational>> = ks
        .iter()
        .map(|k| {
            let mut row = Vec::with_capacity(n + 1);
            let mut p = Rational::from_integer(1.into());
            for _ in 0..=n {
                row.push(p.clone());
                p *= k;
            }
            row
        })
        .collect();
    let normal: Matrix = (0..=n)
        .map(|i| (0..=n).map(|j| rows.iter().map(|r| &r[i] * &r[j]).sum()).collect())
        .collect();
    let rhs: Vec<Rational> = (0..=n)
        .map(|i| {
            rows.iter()
                .zip(&h[1..])
                .map(|(r, &hk)| &r[i] * Rational::from_integer((hk as i64).into()))
                .sum()
        })
        .collect();
    let coeffs = solve(&normal, &rhs).expect("Vandermonde normal equations are regular");
    let fitted = coeffs[n].clone();
    let volume = body.volume().clone();
    let relative_error = if volume.is_zero() {
        rational_to_f64(&fitted.abs())
    } else {
        rational_to_f64(&((&fitted - &volume).abs() / &volume))
    };
    let nfact: i64 = (1..=n as i64).product();
    let degree = &volume * Rational::from_integer(nfact.into());
    Ok(DegreeReport {
        volume,
        fitted,
        relative_error,
        degree,
        samples: h[1..].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, BiDegree};
    use alloc::vec;

    #[test]
    fn elliptic_and_point() {
        let s = ValueSemigroup::new(
            1,
            vec![BiDegree::new(1, vec![0]), BiDegree::new(1, vec![1]), BiDegree::new(1, vec![3])],
        )
        .unwrap();
        let r = degree_check(&s, 10).unwrap();
        assert_eq!((r.volume.clone(), r.fitted.clone(), r.relative_error), (rat(3, 1), rat(3, 1), 0.0));
        assert_eq!(r.degree, rat(3, 1));
        let pt = ValueSemigroup::new(1, vec![BiDegree::new(1, vec![0])]).unwrap();
        let r = degree_check(&pt, 5).unwrap();
        assert_eq!((r.volume, r.fitted), (rat(0, 1), rat(0, 1)));
        assert!(matches!(degree_check(&pt, 1), Err(Error::InsufficientSamples { .. })));
    }
}

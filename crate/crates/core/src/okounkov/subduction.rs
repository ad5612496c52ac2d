use alloc::format;
use alloc::vec::Vec;

use core::cmp::Ordering;

use num_traits::One;
use rand::Rng;

use crate::algebra::{BiDegree, ExponentVector, Polynomial, Rational};
use crate::{Error, Result};

use super::datum::SagbiDatum;
use super::semigroup::{decompose, semigroup_hilbert};

/// Outcome of rewriting an element as a polynomial in the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Subduction {
    /// Polynomial in the generator symbols `x_ij`.
    pub expression: Polynomial,
    /// Values of the successive remainders, strictly increasing in the
    /// valuation's orientation.
    pub chain: Vec<BiDegree>,
}

/// Writes a representative `f` of an element of `R_k` as a polynomial in the
/// generators by repeatedly cancelling its leading term.
///
/// Each step subtracts `λ·∏ f_ij^{α_ij}` whose value equals the remainder's,
/// so the remainder's value strictly moves away from the initial end of the
/// order. Values live in the finite set of level-`k` values, which bounds the
/// number of steps by `H_S(k)`.
pub fn subduct(f: &Polynomial, k: u32, datum: &SagbiDatum) -> Result<Subduction> {
    let orient = datum.backend().orientation();
    let gens = datum.bidegrees();
    let symbols = datum.symbols().clone();
    let bound = semigroup_hilbert(&datum.semigroup(), k as u64) as usize;
    let hk = datum.normal_form(&datum.section().pow(k))?;
    let mut rest = datum.normal_form(f)?;
    let mut expression = Polynomial::zero(&symbols);
    let mut chain: Vec<BiDegree> = Vec::new();
    while !rest.is_zero() {
        let (u, c) = datum.backend().leading(&rest, &hk)?;
        let value = BiDegree::new(k as u64, u);
        if let Some(prev) = chain.last() {
            if orient.cmp_values(&prev.value, &value.value) != Ordering::Less {
                return Err(Error::Verification(format!(
                    "subduction chain is not monotone: {prev} then {value}"
                )));
            }
        }
        if chain.len() >= bound {
            return Err(Error::Verification(format!(
                "subduction exceeded {bound} steps at level {k}"
            )));
        }
        let mult = decompose(&gens, &value).ok_or_else(|| {
            Error::NotInSemigroup(format!("{value} is not a sum of generator values"))
        })?;
        let mono = ExponentVector(mult.iter().map(|&m| m as i64).collect());
        let product = datum.substitute_generators(&Polynomial::monomial(&symbols, mono.clone(), Rational::one()))?;
        let (pu, pc) = datum.backend().leading(&product, &hk)?;
        if pu != value.value {
            return Err(Error::Verification(format!(
                "generator product has value {pu}, expected {}",
                value.value
            )));
        }
        let lambda = c / pc;
        expression = &expression + &Polynomial::monomial(&symbols, mono, lambda.clone());
        rest = datum.normal_form(&(&rest - &product.scale(&lambda)))?;
        chain.push(value);
    }
    Ok(Subduction { expression, chain })
}

/// Exact residual `f − expression(f_ij)` reduced to normal form.
pub fn subduction_residual(f: &Polynomial, s: &Subduction, datum: &SagbiDatum) -> Result<Polynomial> {
    let back = datum.substitute_generators(&s.expression)?;
    datum.normal_form(&(f - &back))
}

/// Exponent vectors in the generator symbols whose level is exactly `k`.
pub fn level_monomials(datum: &SagbiDatum, k: u32) -> Vec<ExponentVector> {
    fn rec(levels: &[u32], i: usize, left: u32, cur: &mut Vec<i64>, out: &mut Vec<ExponentVector>) {
        if i == levels.len() {
            if left == 0 {
                out.push(ExponentVector(cur.clone()));
            }
            return;
        }
        for a in 0..=left / levels[i] {
            cur[i] = a as i64;
            rec(levels, i + 1, left - a * levels[i], cur, out);
        }
        cur[i] = 0;
    }
    let levels: Vec<u32> = datum.generators().iter().map(|g| g.level).collect();
    let mut out = Vec::new();
    rec(&levels, 0, k, &mut alloc::vec![0; levels.len()], &mut out);
    out
}

/// A random nonzero element of `R_k` for some `1 ≤ k ≤ max_level`: an
/// integer combination of up to four level-`k` generator monomials, written
/// out in the intrinsic coordinates. Returns the representative and `k`.
pub fn random_combination<R: Rng + ?Sized>(
    datum: &SagbiDatum,
    max_level: u32,
    rng: &mut R,
) -> Result<(Polynomial, u32)> {
    let symbols = datum.symbols();
    for _ in 0..64 {
        let k = rng.random_range(1..=max_level);
        let monos = level_monomials(datum, k);
        if monos.is_empty() {
            continue;
        }
        let mut expr = Polynomial::zero(symbols);
        for _ in 0..rng.random_range(1..=4usize) {
            let e = monos[rng.random_range(0..monos.len())].clone();
            let c = loop {
                let c = rng.random_range(-5i64..=5);
                if c != 0 {
                    break c;
                }
            };
            expr = &expr + &Polynomial::monomial(symbols, e, Rational::from_integer(c.into()));
        }
        let f = datum.substitute_generators(&expr)?;
        if !f.is_zero() {
            return Ok((f, k));
        }
    }
    Err(Error::InvalidDatum(format!("no nonzero element found up to level {max_level}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Orientation, Reductions, Ring, ValuationBackend};
    use crate::okounkov::datum::Generator;
    use alloc::string::ToString;
    use alloc::vec;

    fn p1() -> SagbiDatum {
        let r = Ring::new(&["u"]);
        let gens = vec![
            Generator { level: 1, rep: Polynomial::one(&r), value: ExponentVector(vec![0]) },
            Generator { level: 1, rep: parse_polynomial(&r, "u").unwrap(), value: ExponentVector(vec![1]) },
        ];
        SagbiDatum::new(r, ValuationBackend::Monomial(Orientation::Min), Reductions::none(), gens, 0).unwrap()
    }

    #[test]
    fn square_on_the_line() {
        let d = p1();
        let f = parse_polynomial(d.ring(), "u^2 + 2*u + 1").unwrap();
        let s = subduct(&f, 2, &d).unwrap();
        assert_eq!(s.expression, parse_polynomial(d.symbols(), "x1_1^2 + 2*x1_1*x1_2 + x1_2^2").unwrap());
        assert_eq!(s.chain.len(), 3);
        assert!(subduction_residual(&f, &s, &d).unwrap().is_zero());
    }

    #[test]
    fn generator_and_scalar() {
        let d = p1();
        let s = subduct(&parse_polynomial(d.ring(), "1").unwrap(), 1, &d).unwrap();
        assert_eq!(s.expression.to_string(), "x1_1");
        assert_eq!(s.chain.len(), 1);
        let s = subduct(&parse_polynomial(d.ring(), "5*u").unwrap(), 1, &d).unwrap();
        assert_eq!(s.expression.to_string(), "5*x1_2");
    }

    #[test]
    fn outside_the_span_fails() {
        let d = p1();
        let err = subduct(&parse_polynomial(d.ring(), "u^2").unwrap(), 1, &d);
        assert!(matches!(err, Err(Error::NotInSemigroup(_))));
    }
}

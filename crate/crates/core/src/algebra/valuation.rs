use alloc::vec;

use core::cmp::Ordering;

use super::exponent::ExponentVector;
use super::poly::Polynomial;
use super::series::SeriesContext;
use super::Rational;
use crate::{Error, Result};

/// Which extremal term a monomial valuation reads off.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Orientation {
    #[default]
    Min,
    Max,
}

impl Orientation {
    /// Compares two values so that `Less` means "more initial".
    pub fn cmp_values(self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            Orientation::Min => a.cmp(b),
            Orientation::Max => b.cmp(a),
        }
    }

    /// The extremal term of `f` under this orientation.
    pub fn initial_term(self, f: &Polynomial) -> Option<(&ExponentVector, &Rational)> {
        match self {
            Orientation::Min => f.min_term(),
            Orientation::Max => f.max_term(),
        }
    }
}

/// Lex-minimal exponent of a nonzero polynomial.
pub fn monomial_valuation(f: &Polynomial) -> Result<ExponentVector> {
    f.min_term()
        .map(|(e, _)| e.clone())
        .ok_or(Error::UndefinedValuation)
}

/// A valuation with one-dimensional leaves on the function field of `X`.
#[derive(Clone, Debug, PartialEq)]
pub enum ValuationBackend {
    /// Extremal exponent of the (Laurent) polynomial representative.
    Monomial(Orientation),
    /// Order of vanishing at a smooth point of a curve.
    Series(SeriesContext),
}

impl ValuationBackend {
    /// Rank `n` of the value lattice `ℤⁿ` for representatives in `ring_vars` variables.
    pub fn rank(&self, ring_vars: usize) -> usize {
        match self {
            ValuationBackend::Monomial(_) => ring_vars,
            ValuationBackend::Series(_) => 1,
        }
    }

    pub fn orientation(&self) -> Orientation {
        match self {
            ValuationBackend::Monomial(o) => *o,
            ValuationBackend::Series(_) => Orientation::Min,
        }
    }

    /// Value and leading coefficient of the quotient `num/den`.
    ///
    /// The coefficient is the `λ` of the one-dimensional-leaves axiom: two
    /// quotients of equal value differ by their coefficient ratio to higher order.
    pub fn leading(&self, num: &Polynomial, den: &Polynomial) -> Result<(ExponentVector, Rational)> {
        match self {
            ValuationBackend::Monomial(o) => {
                let (en, cn) = o.initial_term(num).ok_or(Error::UndefinedValuation)?;
                let (ed, cd) = o.initial_term(den).ok_or(Error::UndefinedValuation)?;
                Ok((en - ed, cn / cd))
            }
            ValuationBackend::Series(ctx) => {
                let (o, c) = ctx.leading(num, den)?;
                Ok((ExponentVector(vec![o]), c))
            }
        }
    }

    /// Value of a polynomial representative.
    pub fn value(&self, f: &Polynomial) -> Result<ExponentVector> {
        self.leading(f, &Polynomial::one(f.ring())).map(|(e, _)| e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat, Ring};
    use alloc::vec::Vec;
    use alloc::sync::Arc;
    use proptest::prelude::*;

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn examples() {
        let r = Ring::new(&["u"]);
        assert_eq!(monomial_valuation(&p(&r, "7")).unwrap(), ExponentVector(vec![0]));
        assert_eq!(monomial_valuation(&p(&r, "u^2 + u^5")).unwrap(), ExponentVector(vec![2]));
        let prod = &p(&r, "u + u^2") * &p(&r, "u^3");
        assert_eq!(monomial_valuation(&prod).unwrap(), ExponentVector(vec![4]));
        assert_eq!(
            monomial_valuation(&Polynomial::zero(&r)),
            Err(Error::UndefinedValuation)
        );
    }

    #[test]
    fn max_orientation_reads_top_term() {
        let r = Ring::new(&["a", "b"]);
        let f = p(&r, "3*a*b + 2*b^2");
        let b = ValuationBackend::Monomial(Orientation::Max);
        assert_eq!(b.leading(&f, &Polynomial::one(&r)).unwrap(), (ExponentVector(vec![1, 1]), rat(3, 1)));
        let b = ValuationBackend::Monomial(Orientation::Min);
        assert_eq!(b.leading(&f, &Polynomial::one(&r)).unwrap(), (ExponentVector(vec![0, 2]), rat(2, 1)));
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
        prop::collection::vec((prop::collection::vec(0i64..=3, 4), -5i64..=5), 1..6)
    }

    fn build(r: &Arc<Ring>, ts: Vec<(Vec<i64>, i64)>) -> Polynomial {
        Polynomial::from_terms(r, ts.into_iter().map(|(e, c)| (ExponentVector(e), rat(c, 1)))).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn valuation_axioms(f in arb_terms(), g in arb_terms(), lam in 1i64..7) {
            let r = Ring::laurent(&["a", "b", "c", "d"]);
            let f = build(&r, f);
            let g = build(&r, g);
            prop_assume!(!f.is_zero() && !g.is_zero());
            let vf = monomial_valuation(&f).unwrap();
            let vg = monomial_valuation(&g).unwrap();
            // multiplicative
            prop_assert_eq!(monomial_valuation(&(&f * &g)).unwrap(), &vf + &vg);
            // ultrametric
            let s = &f + &g;
            if !s.is_zero() {
                let m = if vf < vg { vf.clone() } else { vg.clone() };
                prop_assert!(monomial_valuation(&s).unwrap() >= m);
            }
            // scalar invariance
            prop_assert_eq!(monomial_valuation(&f.scale(&rat(lam, 1))).unwrap(), vf.clone());
            // one-dimensional leaves
            let g2 = g.mul_monomial(&(&vf - &vg), &rat(lam, 1));
            let back = ValuationBackend::Monomial(Orientation::Min);
            let one = Polynomial::one(&r);
            let (e1, c1) = back.leading(&f, &one).unwrap();
            let (e2, c2) = back.leading(&g2, &one).unwrap();
            prop_assert_eq!(&e1, &e2);
            let diff = &f - &g2.scale(&(c1 / c2));
            if !diff.is_zero() {
                prop_assert!(monomial_valuation(&diff).unwrap() > vf);
            }
        }

        #[test]
        fn exact_arithmetic(f in arb_terms(), g in arb_terms()) {
            let r = Ring::new(&["a", "b", "c", "d"]);
            let f = build(&r, f);
            let g = build(&r, g);
            prop_assert_eq!(&(&f + &g) - &g, f);
        }
    }
}

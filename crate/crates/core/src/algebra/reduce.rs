use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::One;

use super::exponent::ExponentVector;
use super::poly::{Polynomial, Ring};
use crate::{Error, Result};

/// Rewrite rule `x^lead → tail`, e.g. `y^2 → x^3 + 1` on a plane curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub lead: ExponentVector,
    pub tail: Polynomial,
}

/// Normal forms modulo an ideal presented by rewrite rules.
///
/// The rules must terminate (e.g. come from a Gröbner basis); normal forms of
/// equal ring elements then coincide, which is what makes exact zero tests
/// in a coordinate ring possible.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Reductions {
    rules: Vec<Reduction>,
}

const MAX_REWRITES: usize = 1_000_000;

impl Reductions {
    pub fn none() -> Self {
        Reductions { rules: Vec::new() }
    }

    pub fn new(rules: Vec<Reduction>) -> Result<Self> {
        for r in &rules {
            if r.lead.has_negative() || r.lead.is_zero() {
                return Err(Error::InvalidDatum(format!(
                    "reduction lead {} must be a nonconstant monomial",
                    r.lead
                )));
            }
            if r.tail.terms().any(|(e, _)| r.lead.divides(e)) {
                return Err(Error::InvalidDatum(format!(
                    "reduction tail is divisible by its lead {}",
                    r.lead
                )));
            }
        }
        Ok(Reductions { rules })
    }

    /// Builds the rule `lead = tail` from two polynomials; `lead` must be a
    /// monic monomial.
    pub fn rule(lead: &Polynomial, tail: &Polynomial) -> Result<Reduction> {
        let mut it = lead.terms();
        match (it.next(), it.next()) {
            (Some((e, c)), None) if c.is_one() => Ok(Reduction {
                lead: e.clone(),
                tail: tail.clone(),
            }),
            _ => Err(Error::InvalidDatum(
                "reduction lead must be a monic monomial".into(),
            )),
        }
    }

    pub fn rules(&self) -> &[Reduction] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if self.rules.is_empty() {
            return Ok(p.clone());
        }
        let ring: &Arc<Ring> = p.ring();
        let mut cur = p.clone();
        let mut rewrites = 0usize;
        loop {
            let hit = cur.terms().rev().find_map(|(e, c)| {
                self.rules
                    .iter()
                    .find(|r| r.lead.divides(e))
                    .map(|r| (e.clone(), c.clone(), r))
            });
            let Some((e, c, rule)) = hit else {
                return Ok(cur);
            };
            rewrites += 1;
            if rewrites > MAX_REWRITES {
                return Err(Error::TooLarge(
                    "normal form did not terminate; check the reduction rules".into(),
                ));
            }
            let quotient = &e - &rule.lead;
            let mut next = cur.clone();
            next.add_term(e, -c.clone());
            let replacement = rule.tail.mul_monomial(&quotient, &c);
            cur = &next + &replacement;
            debug_assert!(Arc::ptr_eq(cur.ring(), ring) || **cur.ring() == **ring);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    #[test]
    fn curve_normal_form() {
        let r = Ring::new(&["x", "y"]);
        let rule = Reductions::rule(
            &parse_polynomial(&r, "y^2").unwrap(),
            &parse_polynomial(&r, "x^3 + 1").unwrap(),
        )
        .unwrap();
        let red = Reductions::new(alloc::vec![rule]).unwrap();
        let p = parse_polynomial(&r, "y^3 + y^2 - x^3").unwrap();
        let nf = red.normal_form(&p).unwrap();
        assert_eq!(nf, parse_polynomial(&r, "x^3*y + y + 1").unwrap());
    }

    #[test]
    fn rejects_non_monic_lead() {
        let r = Ring::new(&["x"]);
        let two_x = parse_polynomial(&r, "2*x").unwrap();
        assert!(Reductions::rule(&two_x, &Polynomial::one(&r)).is_err());
    }
}

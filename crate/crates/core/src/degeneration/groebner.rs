use alloc::vec::Vec;

use core::cmp::Ordering;

use num_traits::One;

use crate::algebra::{BiDegree, ExponentVector, Polynomial, Rational};
use crate::{Error, Result};

use super::projection::WeightFunctional;

/// Largest problem accepted by [`buchberger_small`].
pub const MAX_VARIABLES: usize = 8;
pub const MAX_RELATIONS: usize = 6;
const MAX_BASIS: usize = 64;

/// Monomial order: level, then `p`-weight, then lex.
#[derive(Clone, Debug)]
struct WeightOrder {
    levels: Vec<i64>,
    weights: Vec<i64>,
}

impl WeightOrder {
    fn key(&self, e: &ExponentVector) -> (i64, i64) {
        (e.dot(&self.levels), e.dot(&self.weights))
    }

    fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        self.key(a).cmp(&self.key(b)).then_with(|| a.cmp(b))
    }

    fn lead<'a>(&self, f: &'a Polynomial) -> Option<(&'a ExponentVector, &'a Rational)> {
        f.terms().max_by(|x, y| self.cmp(x.0, y.0))
    }
}

fn lcm(a: &ExponentVector, b: &ExponentVector) -> ExponentVector {
    ExponentVector(a.entries().iter().zip(b.entries()).map(|(x, y)| *x.max(y)).collect())
}

fn reduce(f: &Polynomial, basis: &[Polynomial], ord: &WeightOrder) -> Polynomial {
    let mut rest = f.clone();
    let mut rem = Polynomial::zero(f.ring());
    while let Some((e, c)) = ord.lead(&rest).map(|(e, c)| (e.clone(), c.clone())) {
        let divisor = basis.iter().find_map(|g| {
            let (ge, gc) = ord.lead(g)?;
            ge.divides(&e).then(|| (g, ge.clone(), gc.clone()))
        });
        match divisor {
            Some((g, ge, gc)) => {
                rest = &rest - &g.mul_monomial(&(&e - &ge), &(c / gc));
            }
            None => {
                let m = Polynomial::monomial(f.ring(), e, c);
                rest = &rest - &m;
                rem = &rem + &m;
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &WeightOrder) -> Option<Polynomial> {
    let (fe, fc) = ord.lead(f)?;
    let (ge, gc) = ord.lead(g)?;
    if fe.entries().iter().zip(ge.entries()).all(|(a, b)| *a == 0 || *b == 0) {
        return None;
    }
    let l = lcm(fe, ge);
    let a = f.mul_monomial(&(&l - fe), &(Rational::one() / fc));
    let b = g.mul_monomial(&(&l - ge), &(Rational::one() / gc));
    Some(&a - &b)
}

/// Buchberger completion of `rels` under the weight order from `p`.
///
/// Input relations come first in the output, followed by any remainders the
/// completion had to add; a Gröbner input is returned unchanged.
pub fn buchberger_small(
    rels: &[Polynomial],
    p: &WeightFunctional,
    degrees: &[BiDegree],
) -> Result<Vec<Polynomial>> {
    let Some(first) = rels.first() else {
        return Ok(Vec::new());
    };
    let nvars = first.ring().nvars();
    if nvars > MAX_VARIABLES || rels.len() > MAX_RELATIONS {
        return Err(Error::TooLarge(alloc::format!(
            "{} variables and {} relations exceed the limit of {MAX_VARIABLES} and {MAX_RELATIONS}",
            nvars,
            rels.len()
        )));
    }
    let ord = WeightOrder {
        levels: degrees.iter().map(|d| d.level as i64).collect(),
        weights: degrees.iter().map(|d| p.value(d)).collect(),
    };
    let mut basis: Vec<Polynomial> = rels.to_vec();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let Some(s) = s_polynomial(&basis[i], &basis[j], &ord) else {
            continue;
        };
        let r = reduce(&s, &basis, &ord);
        if !r.is_zero() {
            if basis.len() >= MAX_BASIS {
                return Err(Error::TooLarge("Gröbner completion grew past 64 elements".into()));
            }
            let k = basis.len();
            basis.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    Ok(basis)
}

/// Whether the relations already form a Gröbner basis under the weight order.
pub fn is_groebner(rels: &[Polynomial], p: &WeightFunctional, degrees: &[BiDegree]) -> Result<bool> {
    Ok(buchberger_small(rels, p, degrees)?.len() == rels.len())
}

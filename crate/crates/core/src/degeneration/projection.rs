use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use core::cmp::Ordering;

use crate::algebra::{BiDegree, Orientation, Polynomial};
use crate::{Error, Result};

use super::relations::RelationSet;

/// Linear functional `p` on `ℤⁿ⁺¹`, acting by `p·(k, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightFunctional {
    pub p: Vec<i64>,
}

impl WeightFunctional {
    pub fn value(&self, d: &BiDegree) -> i64 {
        let v = d.as_lattice_vector();
        self.p.iter().zip(&v).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.p.iter().all(|&x| x == 0)
    }
}

/// Composite-order comparison where `Less` means "more initial".
pub(crate) fn initial_cmp(o: Orientation, a: &BiDegree, b: &BiDegree) -> Ordering {
    match b.level.cmp(&a.level) {
        Ordering::Equal => o.cmp_values(&a.value, &b.value),
        c => c,
    }
}

/// Distinct monomial degrees of each relation.
fn relation_degrees(rels: &RelationSet) -> Vec<Vec<BiDegree>> {
    rels.relations()
        .iter()
        .map(|g| {
            let mut ds: Vec<BiDegree> = g.terms().map(|(e, _)| rels.monomial_degree(e)).collect();
            ds.sort();
            ds.dedup();
            ds
        })
        .collect()
}

/// Checks the order, parity and gap conditions of `p` on every relation.
pub fn check_projection(rels: &RelationSet, p: &WeightFunctional) -> Result<()> {
    if p.p.len() != rels.rank() + 1 {
        return Err(Error::DimensionMismatch {
            expected: rels.rank() + 1,
            found: p.p.len(),
        });
    }
    if p.p.iter().any(|x| x % 2 != 0) {
        return Err(Error::NoProjection(format!("p = {:?} has odd entries", p.p)));
    }
    for (k, ds) in relation_degrees(rels).iter().enumerate() {
        for (i, a) in ds.iter().enumerate() {
            for b in &ds[i + 1..] {
                let (pa, pb) = (p.value(a), p.value(b));
                // more initial in the valuation order must get the larger weight
                let want = initial_cmp(rels.orientation(), a, b).reverse();
                if pa.cmp(&pb) != want {
                    return Err(Error::NoProjection(format!(
                        "relation {}: p does not order {a} and {b}",
                        k + 1
                    )));
                }
                if (pa - pb).abs() == 1 {
                    return Err(Error::NoProjection(format!(
                        "relation {}: weights of {a} and {b} differ by one",
                        k + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Finds an order-preserving weight functional for the relations.
///
/// Constraints only compare monomials of the same relation, which share a
/// level, so the value part decides. With `B` one more than the largest
/// coordinate spread of values inside any relation, the nested weighting
/// `(B^{n−1}, …, 1)` reproduces lex order on those values; the level
/// coefficient `Bⁿ` keeps every generator weight positive. The result is
/// doubled so that all weight gaps are even.
pub fn build_projection(rels: &RelationSet) -> Result<WeightFunctional> {
    let n = rels.rank();
    let degs = relation_degrees(rels);
    if degs.iter().all(|ds| ds.len() <= 1) {
        return Ok(WeightFunctional { p: vec![0; n + 1] });
    }
    let mut spread = 0i64;
    for ds in &degs {
        for i in 0..n {
            let lo = ds.iter().map(|d| d.value[i]).min().unwrap();
            let hi = ds.iter().map(|d| d.value[i]).max().unwrap();
            spread = spread.max(hi - lo);
        }
    }
    let b = spread + 1;
    let value_span = degree_value_span(rels);
    // big enough that every generator weight p·(i, u_ij) is positive
    let mut base = b.checked_pow(n as u32).ok_or_else(overflow)?;
    while base <= value_span.checked_mul(b.checked_pow(n.saturating_sub(1) as u32).ok_or_else(overflow)?).ok_or_else(overflow)? {
        base = base.checked_mul(b).ok_or_else(overflow)?;
    }
    let sign = match rels.orientation() {
        Orientation::Min => -1,
        Orientation::Max => 1,
    };
    let mut p = vec![2 * base];
    for i in 0..n {
        let w = b.checked_pow((n - 1 - i) as u32).ok_or_else(overflow)?;
        p.push(2 * sign * w);
    }
    let p = WeightFunctional { p };
    check_projection(rels, &p)?;
    Ok(p)
}

fn overflow() -> Error {
    Error::NoProjection("weight functional overflows 64-bit integers".into())
}

/// Largest `Σ|u_ij|` over generators, scaled per level.
fn degree_value_span(rels: &RelationSet) -> i64 {
    rels.degrees()
        .iter()
        .map(|d| {
            let s: i64 = d.value.entries().iter().map(|x| x.abs()).sum();
            (s + d.level as i64 - 1) / d.level.max(1) as i64
        })
        .max()
        .unwrap_or(0)
}

/// The part of `g` of largest `p`-weight; must equal the valuation-initial part.
pub fn initial_form(g: &Polynomial, p: &WeightFunctional, rels: &RelationSet) -> Result<Polynomial> {
    if g.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let top = g
        .terms()
        .map(|(e, _)| p.value(&rels.monomial_degree(e)))
        .max()
        .unwrap();
    let degrees: Vec<BiDegree> = g.terms().map(|(e, _)| rels.monomial_degree(e)).collect();
    let extremal = degrees
        .iter()
        .min_by(|a, b| initial_cmp(rels.orientation(), a, b))
        .unwrap()
        .clone();
    let mut by_weight = Polynomial::zero(g.ring());
    let mut by_order = Polynomial::zero(g.ring());
    for ((e, c), d) in g.terms().zip(&degrees) {
        if p.value(d) == top {
            by_weight = &by_weight + &Polynomial::monomial(g.ring(), e.clone(), c.clone());
        }
        if *d == extremal {
            by_order = &by_order + &Polynomial::monomial(g.ring(), e.clone(), c.clone());
        }
    }
    if by_weight != by_order {
        return Err(Error::InconsistentProjection(format!(
            "weight-initial part {by_weight} differs from order-initial part {by_order}"
        )));
    }
    Ok(by_weight)
}

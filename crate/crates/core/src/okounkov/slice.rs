use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{BiDegree, ExponentVector, Rational};
use crate::{Error, Result};

use super::polytope::{lcm_all, Facet, OkounkovBody};
use super::semigroup::ValueSemigroup;

/// Integer matrix `λ̃ : ℤⁿ⁺¹ → ℤᵐ`, columns indexed by `(k, u₁, …, uₙ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingHomomorphism {
    rows: Vec<Vec<i64>>,
    cols: usize,
}

impl GradingHomomorphism {
    pub fn new(rows: Vec<Vec<i64>>, cols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(GradingHomomorphism { rows, cols })
    }

    pub fn zero(rank: usize) -> Self {
        GradingHomomorphism {
            rows: Vec::new(),
            cols: rank + 1,
        }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, b: &BiDegree) -> Vec<i64> {
        let v = b.as_lattice_vector();
        self.rows
            .iter()
            .map(|r| r.iter().zip(&v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// `λ̃_ℝ(1, x)` for a point of the body.
    pub fn apply_normalized(&self, x: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r[0] as f64 + r[1..].iter().zip(x).map(|(&a, xi)| a as f64 * xi).sum::<f64>())
            .collect()
    }

    /// The slice `{1} × ℝⁿ ∩ ker λ̃_ℝ` as affine equations on `ℝⁿ`.
    pub fn affine_equations(&self) -> Vec<Facet> {
        self.rows
            .iter()
            .map(|r| Facet {
                normal: r[1..].iter().map(|&a| Rational::from_integer(a.into())).collect(),
                offset: Rational::from_integer((-r[0]).into()),
            })
            .collect()
    }
}

/// Semigroup and body of the quotient.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceResult {
    pub semigroup: ValueSemigroup,
    pub body: OkounkovBody,
    /// Level up to which `S ∩ ker λ̃` was enumerated.
    pub bound: u64,
    /// Whether the generators found also produce every kernel element up to
    /// twice the bound.
    pub complete: bool,
}

/// Default enumeration bound: lcm of generator levels times `n + 1`.
pub fn default_slice_bound(s: &ValueSemigroup) -> u64 {
    lcm_all(s.generators().iter().map(|g| g.level)) * (s.rank() as u64 + 1)
}

/// Restricts `S` and `Δ` to the kernel of `λ̃`.
pub fn slice(
    s: &ValueSemigroup,
    body: &OkounkovBody,
    lambda: &GradingHomomorphism,
    bound: u64,
) -> Result<SliceResult> {
    if lambda.cols() != s.rank() + 1 {
        return Err(Error::DimensionMismatch {
            expected: s.rank() + 1,
            found: lambda.cols(),
        });
    }
    if bound == 0 {
        return Err(Error::InvalidConfig(format!("slice bound must be positive, got {bound}")));
    }
    let sliced_body = body.intersect_affine(&lambda.affine_equations())?;

    let levels = s.level_sets(2 * bound);
    let kernel: Vec<BTreeSet<ExponentVector>> = levels
        .iter()
        .enumerate()
        .map(|(k, set)| {
            set.iter()
                .filter(|u| {
                    let b = BiDegree::new(k as u64, (*u).clone());
                    lambda.apply(&b).iter().all(|&x| x == 0)
                })
                .cloned()
                .collect()
        })
        .collect();
    let mut gens: Vec<BiDegree> = Vec::new();
    for j in 1..=bound as usize {
        for u in &kernel[j] {
            let decomposable = (1..j).any(|i| {
                kernel[i].iter().any(|a| kernel[j - i].contains(&(u - a)))
            });
            if !decomposable {
                gens.push(BiDegree::new(j as u64, u.clone()));
            }
        }
    }
    let semigroup = ValueSemigroup::new(s.rank(), gens)?;
    let produced = semigroup.level_sets(2 * bound);
    let complete = (0..=2 * bound as usize).all(|k| produced[k] == kernel[k]);
    Ok(SliceResult {
        semigroup,
        body: sliced_body,
        bound,
        complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::okounkov::semigroup::okounkov_body;
    use alloc::vec;

    fn elliptic() -> ValueSemigroup {
        ValueSemigroup::new(
            1,
            vec![BiDegree::new(1, vec![0]), BiDegree::new(1, vec![1]), BiDegree::new(1, vec![3])],
        )
        .unwrap()
    }

    #[test]
    fn zero_homomorphism_is_identity() {
        let s = elliptic();
        let b = okounkov_body(&s).unwrap();
        let r = slice(&s, &b, &GradingHomomorphism::zero(1), default_slice_bound(&s)).unwrap();
        assert_eq!(r.semigroup.canonical_generators(), s.canonical_generators());
        assert_eq!(r.body, b);
        assert!(r.complete);
    }

    #[test]
    fn diagonal_slice() {
        let s = elliptic();
        let b = okounkov_body(&s).unwrap();
        let lam = GradingHomomorphism::new(vec![vec![-1, 1]], 2).unwrap();
        let r = slice(&s, &b, &lam, default_slice_bound(&s)).unwrap();
        assert_eq!(r.semigroup.generators(), &[BiDegree::new(1, vec![1])]);
        assert_eq!(r.body.vertices(), &[vec![rat(1, 1)]][..]);
        assert!(r.complete);
        for g in r.semigroup.generators() {
            assert!(lam.apply(g).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn trivial_kernel() {
        let s = elliptic();
        let b = okounkov_body(&s).unwrap();
        let lam = GradingHomomorphism::new(vec![vec![1, 0], vec![0, 1]], 2).unwrap();
        let r = slice(&s, &b, &lam, 2).unwrap();
        assert!(r.body.is_empty());
        assert!(r.semigroup.generators().is_empty());
    }
}

use alloc::format;
use alloc::vec::Vec;

use crate::okounkov::OkounkovBody;
use crate::{Error, Result};

/// Dimension of the irreducible `GL(n)` representation of highest weight
/// `λ₁ ≥ … ≥ λₙ`, by the Weyl dimension formula.
pub fn weyl_dimension(lambda: &[i64]) -> u128 {
    let n = lambda.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= (lambda[i] - lambda[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

/// Integer Gel'fand–Cetlin patterns with top row `λ`, flattened row by row
/// below the top row, in lexicographic order.
pub fn gc_patterns(lambda: &[i64]) -> Vec<Vec<i64>> {
    fn rows(top: &[i64], acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if top.len() <= 1 {
            out.push(acc.clone());
            return;
        }
        let m = top.len() - 1;
        let mut row = Vec::with_capacity(m);
        fn fill(
            top: &[i64],
            i: usize,
            row: &mut Vec<i64>,
            acc: &mut Vec<i64>,
            out: &mut Vec<Vec<i64>>,
        ) {
            if i == top.len() - 1 {
                let before = acc.len();
                acc.extend_from_slice(row);
                let next = row.clone();
                rows(&next, acc, out);
                acc.truncate(before);
                return;
            }
            for x in (top[i + 1]..=top[i]).rev() {
                row.push(x);
                fill(top, i + 1, row, acc, out);
                row.pop();
            }
        }
        fill(top, 0, &mut row, acc, out);
    }
    let mut out = Vec::new();
    rows(lambda, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Unimodular affine identification of the body with a Gel'fand–Cetlin polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub highest_weight: Vec<i64>,
    pub matrix: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

impl Representation {
    /// Pattern coordinates of the lattice point `u` of `k·Δ`.
    pub fn pattern_of(&self, u: &[i64], k: i64) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, o)| row.iter().zip(u).map(|(a, x)| a * x).sum::<i64>() + k * o)
            .collect()
    }

    pub fn scaled_weight(&self, k: i64) -> Vec<i64> {
        self.highest_weight.iter().map(|x| x * k).collect()
    }

    /// Checks, for `k = 1..=kmax`, that the map sends the lattice points of
    /// `k·Δ` bijectively onto the patterns of `kλ`, and that their number is
    /// the Weyl dimension. Returns the counts.
    pub fn verify(&self, body: &OkounkovBody, kmax: u64) -> Result<Vec<u64>> {
        let n = body.dim();
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) || self.offset.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.matrix.len(),
            });
        }
        let m: crate::okounkov::linalg::Matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| crate::algebra::rat(x, 1)).collect())
            .collect();
        let d = crate::okounkov::linalg::det(&m);
        if d != crate::algebra::rat(1, 1) && d != crate::algebra::rat(-1, 1) {
            return Err(Error::Verification(format!("pattern map has determinant {d}")));
        }
        let mut counts = Vec::new();
        for k in 1..=kmax {
            let mut image: Vec<Vec<i64>> = body
                .lattice_points(k)
                .iter()
                .map(|u| self.pattern_of(u, k as i64))
                .collect();
            image.sort();
            let lambda = self.scaled_weight(k as i64);
            let patterns = gc_patterns(&lambda);
            let dim = weyl_dimension(&lambda);
            if image != patterns || patterns.len() as u128 != dim {
                return Err(Error::Verification(format!(
                    "level {k}: {} lattice points, {} patterns, Weyl dimension {dim}",
                    image.len(),
                    patterns.len()
                )));
            }
            counts.push(image.len() as u64);
        }
        Ok(counts)
    }
}

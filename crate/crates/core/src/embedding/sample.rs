use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use core::f64::consts::PI;

use num_traits::Float;
use rand::Rng;

use crate::algebra::{evaluate_complex, Complex64};
use crate::okounkov::SagbiDatum;
use crate::{Error, Result};

/// Draws points of the intrinsic variety.
///
/// Free coordinates get a uniform phase and a log-uniform modulus
/// `10^U(lo, hi)`, so samples spread over many torus scales. A coordinate
/// that leads a rewrite rule `y^m → tail` is solved for as a random `m`-th
/// root of the tail.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicSampler {
    log10_range: (f64, f64),
    solved: Vec<Option<(u32, usize)>>,
}

impl IntrinsicSampler {
    pub fn new(datum: &SagbiDatum, log10_range: (f64, f64)) -> Result<Self> {
        if !(log10_range.0 <= log10_range.1) {
            return Err(Error::InvalidConfig(format!("empty modulus range {log10_range:?}")));
        }
        let nv = datum.ring().nvars();
        let mut solved = vec![None; nv];
        for (k, r) in datum.reductions().rules().iter().enumerate() {
            let vars: Vec<usize> = (0..nv).filter(|&i| r.lead[i] != 0).collect();
            let [v] = vars[..] else {
                return Err(Error::Unsupported(format!(
                    "sampling needs reduction leads that are pure powers, got {}",
                    r.lead
                )));
            };
            solved[v] = Some((r.lead[v] as u32, k));
        }
        for r in datum.reductions().rules() {
            if r.tail.terms().any(|(e, _)| (0..nv).any(|i| e[i] != 0 && solved[i].is_some())) {
                return Err(Error::Unsupported(
                    "sampling needs reduction tails in the free coordinates only".into(),
                ));
            }
        }
        Ok(IntrinsicSampler { log10_range, solved })
    }

    pub fn sample<R: Rng + ?Sized>(&self, datum: &SagbiDatum, rng: &mut R) -> Result<Vec<Complex64>> {
        let (lo, hi) = self.log10_range;
        let mut x: Vec<Complex64> = self
            .solved
            .iter()
            .map(|s| {
                let r = if s.is_none() { Float::powf(10.0f64, lo + (hi - lo) * rng.random::<f64>()) } else { 0.0 };
                Complex64::from_polar(r, 2.0 * PI * rng.random::<f64>())
            })
            .collect();
        let rules = datum.reductions().rules();
        for (i, s) in self.solved.iter().enumerate() {
            if let Some((m, k)) = s {
                let tail = evaluate_complex(&rules[*k].tail, &x)?;
                let branch = rng.random_range(0..*m);
                let root = Complex64::from_polar(
                    Float::powf(tail.norm(), 1.0 / *m as f64),
                    (tail.arg() + 2.0 * PI * branch as f64) / *m as f64,
                );
                x[i] = root;
            }
        }
        Ok(x)
    }
}

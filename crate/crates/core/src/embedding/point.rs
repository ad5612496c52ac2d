use alloc::format;
use alloc::vec::Vec;


use crate::algebra::{evaluate_complex, relative_residual, Complex64};
use crate::degeneration::FamilyPresentation;
use crate::okounkov::{GradingHomomorphism, SagbiDatum};
use crate::{Error, Result};

use super::basis::VdBasis;

/// Below this `|h(x)|` the point is treated as lying on the base locus.
pub const BASE_LOCUS_TOLERANCE: f64 = 1e-12;
/// Largest relative residual of `g̃_k` accepted for an embedded point.
pub const EMBEDDING_TOLERANCE: f64 = 1e-9;

/// A point of `ℙ(V_d*) × ℂ` with a unit-norm representative.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivePoint {
    pub z: Vec<Complex64>,
    pub t: Complex64,
}

impl ProjectivePoint {
    /// Scales to unit norm and rotates the largest coordinate onto the positive reals.
    pub fn normalized(z: Vec<Complex64>, t: Complex64) -> Result<Self> {
        let mut z = z;
        normalize(&mut z)?;
        Ok(ProjectivePoint { z, t })
    }

    /// Largest coordinate distance to another point.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        self.z
            .iter()
            .zip(&other.z)
            .map(|(a, b)| (a - b).norm())
            .fold((self.t - other.t).norm(), f64::max)
    }
}

/// Deterministic representative: unit norm, first largest-modulus entry real positive.
pub fn normalize(z: &mut [Complex64]) -> Result<()> {
    let norm = num_traits::Float::sqrt(z.iter().map(|c| c.norm_sqr()).sum::<f64>());
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Chart(format!("cannot normalize a point of norm {norm}")));
    }
    let mut best = 0;
    for (i, c) in z.iter().enumerate() {
        if c.norm() > z[best].norm() {
            best = i;
        }
    }
    let phase = z[best].conj() / z[best].norm();
    for c in z.iter_mut() {
        *c = *c * phase / norm;
    }
    z[best] = Complex64::new(z[best].re, 0.0);
    Ok(())
}

/// `t^{w_ij} f_ij(x) / h(x)^i`: coordinates of `x` in the fibre over `t`.
pub fn generator_coordinates(
    x: &[Complex64],
    datum: &SagbiDatum,
    fam: &FamilyPresentation,
    t: Complex64,
) -> Result<Vec<Complex64>> {
    let h = evaluate_complex(datum.section(), x)?;
    if h.norm() <= BASE_LOCUS_TOLERANCE {
        return Err(Error::Chart(format!(
            "|h(x)| = {:e} is on the base locus; re-sample x",
            h.norm()
        )));
    }
    let mut out = Vec::with_capacity(datum.generators().len());
    for (g, &w) in datum.generators().iter().zip(fam.weights()) {
        let f = evaluate_complex(&g.rep, x)?;
        out.push(t.powi(w as i32) * f / h.powi(g.level as i32));
    }
    Ok(out)
}

/// Largest relative residual of the family relations at generator coordinates `c` over `t`.
pub fn family_residual(fam: &FamilyPresentation, c: &[Complex64], t: Complex64) -> Result<f64> {
    let mut p = c.to_vec();
    p.push(t);
    let mut worst: f64 = 0.0;
    for g in fam.family() {
        worst = worst.max(relative_residual(g, &p)?);
    }
    Ok(worst)
}

/// `ρ_t(x)` followed by the Veronese-type map into `ℙ(V_d*)`.
///
/// The coordinate at `α` is `t^{ω_α − ω_min} ∏ (f_ij/hⁱ)^{α_ij}`, projectively
/// equal to `t^{ω_α} ∏ f_ij^{α_ij} / h^d` for `t ≠ 0` and its limit at `t = 0`.
pub fn embed_point(
    x: &[Complex64],
    datum: &SagbiDatum,
    fam: &FamilyPresentation,
    t: Complex64,
    basis: &VdBasis,
) -> Result<ProjectivePoint> {
    let one = Complex64::new(1.0, 0.0);
    let c = generator_coordinates(x, datum, fam, one)?;
    let lowest = basis.entries().iter().map(|e| e.cstar_weight).min().unwrap_or(0);
    let z: Vec<Complex64> = basis
        .entries()
        .iter()
        .map(|e| {
            let m = e
                .alpha
                .iter()
                .zip(&c)
                .filter(|(&a, _)| a > 0)
                .fold(one, |m, (&a, v)| m * v.powi(a as i32));
            m * t.powi((e.cstar_weight - lowest) as i32)
        })
        .collect();
    let res = if basis.is_linear() {
        family_residual(fam, &z, t)?
    } else {
        family_residual(fam, &generator_coordinates(x, datum, fam, t)?, t)?
    };
    if !(res < EMBEDDING_TOLERANCE) {
        return Err(Error::Evaluation(format!(
            "point is off the fibre: family residual {res:e}"
        )));
    }
    ProjectivePoint::normalized(z, t)
}

/// The `ℂ*`-action `z_α ↦ s^{ω_α} z_α`, `t ↦ s·t`.
pub fn rescale_action(pt: &ProjectivePoint, s: Complex64, basis: &VdBasis) -> Result<ProjectivePoint> {
    if s.norm() == 0.0 {
        return Err(Error::InvalidScale);
    }
    let z = pt
        .z
        .iter()
        .zip(basis.entries())
        .map(|(z, e)| z * s.powi(e.cstar_weight as i32))
        .collect();
    ProjectivePoint::normalized(z, pt.t * s)
}

fn weighted_average(z: &[Complex64], weights: impl Iterator<Item = Vec<f64>>, dim: usize) -> Vec<f64> {
    let mut acc = alloc::vec![0.0; dim];
    let mut mass = 0.0;
    for (c, w) in z.iter().zip(weights) {
        let m = c.norm_sqr();
        mass += m;
        for (a, x) in acc.iter_mut().zip(w) {
            *a += m * x;
        }
    }
    acc.iter().map(|a| a / mass).collect()
}

/// `μ(z) = Σ|z_α|² λ_α / (d Σ|z_α|²)`.
pub fn toric_moment(z: &[Complex64], basis: &VdBasis) -> Vec<f64> {
    let d = basis.degree() as f64;
    let w = basis
        .entries()
        .iter()
        .map(|e| e.torus_weight.entries().iter().map(|&x| x as f64 / d).collect());
    weighted_average(z, w, basis.rank())
}

/// Moment map of the subtorus acting on `V_d` through `λ̃(d, λ_α) / d`.
pub fn subtorus_moment(z: &[Complex64], basis: &VdBasis, hom: &GradingHomomorphism) -> Vec<f64> {
    let d = basis.degree() as f64;
    let w = basis.entries().iter().map(|e| {
        let mut v = alloc::vec![basis.degree() as i64];
        v.extend_from_slice(e.torus_weight.entries());
        hom.rows()
            .iter()
            .map(|row| row.iter().zip(&v).map(|(a, b)| (a * b) as f64).sum::<f64>() / d)
            .collect()
    });
    weighted_average(z, w, hom.rows().len())
}

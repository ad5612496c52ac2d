//! Numerical diagnostics shared by `check`, `slice` and the acceptance run.

use okkit_core::algebra::{rational_to_f64, Complex64, Polynomial};
use okkit_core::catalog::CatalogEntry;
use okkit_core::embedding::subtorus_moment;
use okkit_core::flow::{
    poisson_matrix, random_fiber_vector, sample_points, start_point, symplectic_residual, FlowConfig, FlowSystem,
};
use okkit_core::okounkov::{random_combination, semigroup_hilbert, subduct, subduction_residual, GradingHomomorphism};
use okkit_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::batch::{body_margin, FlowBatch};

/// Outcome of subducting random generator combinations.
#[derive(Clone, Debug, PartialEq)]
pub struct SubductionStats {
    pub count: usize,
    pub longest_chain: usize,
}

/// Subducts `count` random elements of level `≤ max_level` and checks that
/// each rewrites back exactly. The chain bound and its monotonicity are
/// enforced by `subduct` itself.
pub fn subduction_soundness(entry: &CatalogEntry, count: usize, max_level: u32, seed: u64) -> Result<SubductionStats> {
    let d = entry.datum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut longest = 0;
    for _ in 0..count {
        let (f, k) = random_combination(d, max_level, &mut rng)?;
        let s = subduct(&f, k, d)?;
        if !subduction_residual(&f, &s, d)?.is_zero() {
            return Err(Error::Verification(format!("nonzero subduction residual for {f}")));
        }
        if s.chain.len() as u64 > semigroup_hilbert(entry.semigroup(), k as u64) {
            return Err(Error::Verification(format!("chain of {} steps for {f}", s.chain.len())));
        }
        longest = longest.max(s.chain.len());
    }
    Ok(SubductionStats { count, longest_chain: longest })
}

/// Seed offset keeping tangent-vector draws apart from point draws.
const VECTOR_STREAM: u64 = 0x5eed_0f7a;

/// `symplectic_residual` on `count` seeded point/vector triples.
pub fn symplectic_residuals(
    entry: &CatalogEntry,
    sys: &FlowSystem,
    cfg: &FlowConfig,
    count: usize,
    pool: &rayon::ThreadPool,
) -> Result<Vec<Result<f64>>> {
    let points = sample_points(entry.datum(), cfg, count)?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                let pt = start_point(x, cfg, entry.datum(), entry.family(), sys)?;
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ VECTOR_STREAM);
                rng.set_stream(i as u64);
                let u = random_fiber_vector(&pt, sys, &mut rng)?;
                let v = random_fiber_vector(&pt, sys, &mut rng)?;
                symplectic_residual(&pt, &u, &v, cfg, sys)
            })
            .collect()
    }))
}

/// Largest `|{F_i, F_j}|` at points whose value lies at least `margin` inside
/// `Δ`; stops after `count` such points. Points off the interior are skipped.
pub fn poisson_brackets(
    entry: &CatalogEntry,
    sys: &FlowSystem,
    cfg: &FlowConfig,
    batch: &FlowBatch,
    count: usize,
    margin: f64,
    pool: &rayon::ThreadPool,
) -> Vec<Result<f64>> {
    let interior: Vec<_> = batch
        .outcomes
        .iter()
        .filter(|o| o.value().is_some_and(|v| body_margin(entry.body(), v).0 > margin))
        .filter_map(|o| o.start.clone())
        .take(count)
        .collect();
    pool.install(|| {
        interior
            .par_iter()
            .map(|pt| {
                let m = poisson_matrix(pt, cfg, sys)?;
                Ok(m.iter().flatten().fold(0.0, |a: f64, x| a.max(x.abs())))
            })
            .collect()
    })
}

/// Whether every relation is homogeneous for `λ̃`, so that the subtorus acts
/// on the general fibre and not only on the toric one.
pub fn grading_preserves_relations(entry: &CatalogEntry, hom: &GradingHomomorphism) -> bool {
    let rels = entry.relations();
    rels.relations().iter().all(|g| {
        let mut grades = g.terms().map(|(e, _)| hom.apply(&rels.monomial_degree(e)));
        match grades.next() {
            Some(first) => grades.all(|x| x == first),
            None => true,
        }
    })
}

/// Where the subtorus moment map was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutationMode {
    /// At the sample itself, on the fibre over `ε`.
    GeneralFibre,
    /// At the end of the flow, on the toric fibre.
    ToricFibre,
}

impl CommutationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CommutationMode::GeneralFibre => "general fibre",
            CommutationMode::ToricFibre => "toric fibre",
        }
    }
}

/// `max |λ_ℝ(F(x)) − μ_H(x)|` per successful sample.
///
/// When `λ̃` grades the relations the subtorus acts on every fibre and `μ_H`
/// is taken at the starting point; otherwise it only acts on the toric fibre
/// and is taken at the flowed point there.
pub fn commutation_residuals(
    entry: &CatalogEntry,
    hom: &GradingHomomorphism,
    sys: &FlowSystem,
    batch: &FlowBatch,
) -> (CommutationMode, Vec<f64>) {
    let mode = if grading_preserves_relations(entry, hom) {
        CommutationMode::GeneralFibre
    } else {
        CommutationMode::ToricFibre
    };
    let res = batch
        .outcomes
        .iter()
        .filter_map(|o| {
            let v = o.result.as_ref().ok()?;
            let z = match mode {
                CommutationMode::GeneralFibre => o.start.as_ref()?.homogeneous(),
                CommutationMode::ToricFibre => v.flow.terminal.homogeneous(),
            };
            let mu_h = subtorus_moment(&z, sys.basis(), hom);
            let lam = hom.apply_normalized(&v.value);
            Some(mu_h.iter().zip(&lam).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        })
        .collect();
    (mode, res)
}

/// Gradient of `g` at `p`.
fn gradient(g: &Polynomial, p: &[Complex64]) -> Vec<Complex64> {
    let mut grad = vec![Complex64::new(0.0, 0.0); p.len()];
    for (e, c) in g.terms() {
        let c = rational_to_f64(c);
        let exps = e.entries();
        for (i, &k) in exps.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let mut d = p[i].powi(k as i32 - 1) * (c * k as f64);
            for (j, &kj) in exps.iter().enumerate() {
                if j != i && kj != 0 {
                    d *= p[j].powi(kj as i32);
                }
            }
            grad[i] += d;
        }
    }
    grad
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest relative first-order change of the family relations along `V_π`
/// over every accepted step of the batch.
///
/// `V_π` lowers `Re π` at unit rate by construction of its `t`-component; this
/// measures, independently of the frame computation, that it is also tangent
/// to the total space. At each point the defect is `max_k |dg̃_k[V]|` over
/// `max_k ‖∇g̃_k‖ · ‖V‖`, the Cauchy-Schwarz bound at the same scale the
/// frame computation uses for its rows.
pub fn velocity_tangency(entry: &CatalogEntry, sys: &FlowSystem, batch: &FlowBatch) -> Result<f64> {
    let fam = entry.family().family();
    let mut worst = 0.0f64;
    for v in batch.outcomes.iter().filter_map(|o| o.result.as_ref().ok()) {
        for s in &v.flow.samples {
            let vel = sys.gradient_hamiltonian(&s.point)?;
            let mut here = sys.lift(&s.point)?;
            here.push(s.point.t);
            let (mut top, mut change) = (0.0f64, 0.0f64);
            for g in fam {
                let grad = gradient(g, &here);
                let d: Complex64 = grad.iter().zip(&vel).map(|(a, b)| a * b).sum();
                top = top.max(norm(&grad));
                change = change.max(d.norm());
            }
            if top > 0.0 {
                worst = worst.max(change / (top * norm(&vel)));
            }
        }
    }
    Ok(worst)
}

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Complex64;
use crate::degeneration::FamilyPresentation;
use crate::embedding::{embed_point, toric_moment, IntrinsicSampler};
use crate::okounkov::SagbiDatum;
use crate::{Error, Result};

use super::config::FlowConfig;
use super::integrate::{run, FlowResult, Origin, Steps};
use super::system::{horizontal, kahler_form, unit, ChartPoint, FlowSystem, Lift};

type C = Complex64;

/// `F(x)` with the data behind it.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrableValue {
    /// Richardson extrapolation `2 F(δ/2) − F(δ)`.
    pub value: Vec<f64>,
    pub at_delta: Vec<f64>,
    pub at_half_delta: Vec<f64>,
    /// `max |F(δ/2) − F(δ)|`.
    pub error_estimate: f64,
    /// The whole trajectory from `ε` to `δ/2`.
    pub flow: FlowResult,
}

fn moment(sys: &FlowSystem, l: &Lift) -> Vec<f64> {
    toric_moment(&l.z, sys.basis())
}

/// Starting lift on the fibre over `ε` for an intrinsic point.
pub fn start_point(
    x: &[C],
    cfg: &FlowConfig,
    datum: &SagbiDatum,
    fam: &FamilyPresentation,
    sys: &FlowSystem,
) -> Result<ChartPoint> {
    let p = embed_point(x, datum, fam, C::new(cfg.epsilon, 0.0), sys.basis())?;
    ChartPoint::from_projective(&p)
}

fn retracted(sys: &FlowSystem, cfg: &FlowConfig, pt: &ChartPoint) -> Result<Lift> {
    let mut l = Lift::from_chart(pt)?;
    sys.retract(&mut l.z, l.t, cfg.retraction_tol, cfg.max_retraction_iters)?;
    Ok(l)
}

/// Both legs `ε → δ → δ/2` from a lift on the fibre over `ε`.
fn two_legs(sys: &FlowSystem, cfg: &FlowConfig, start: Lift) -> Result<(FlowResult, FlowResult)> {
    let eps = start.t.re;
    let first = run(sys, cfg, start, cfg.delta, Origin { t_ref: eps, s0: 0.0 }, Steps::Adaptive, true).into_result()?;
    let s0 = first.samples.last().map_or(0.0, |s| s.s);
    let second = run(
        sys,
        cfg,
        first.lift.clone(),
        cfg.delta / 2.0,
        Origin { t_ref: eps, s0 },
        Steps::Adaptive,
        true,
    )
    .into_result()?;
    Ok((first, second))
}

fn extrapolate(a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    let v = a.iter().zip(b).map(|(x, y)| 2.0 * y - x).collect();
    let e = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    (v, e)
}

/// `F = μ₀ ∘ φ ∘ ρ_ε` at a point of the fibre over `ε`.
pub fn integrable_system_at(pt: &ChartPoint, cfg: &FlowConfig, sys: &FlowSystem) -> Result<IntegrableValue> {
    cfg.validate()?;
    let start = retracted(sys, cfg, pt)?;
    let (first, second) = two_legs(sys, cfg, start)?;
    let at_delta = moment(sys, &first.lift);
    let at_half_delta = moment(sys, &second.lift);
    let (value, error_estimate) = extrapolate(&at_delta, &at_half_delta);
    let mut flow = first;
    flow.diagnostics.merge(&second.diagnostics);
    flow.samples.extend(second.samples);
    flow.schedule.extend(second.schedule);
    flow.terminal = second.terminal;
    flow.lift = second.lift;
    flow.moment = Some(value.clone());
    Ok(IntegrableValue {
        value,
        at_delta,
        at_half_delta,
        error_estimate,
        flow,
    })
}

/// `F(x)` for an intrinsic point `x`: embed over `ε`, flow, take the toric moment.
pub fn integrable_system_eval(
    x: &[C],
    cfg: &FlowConfig,
    datum: &SagbiDatum,
    fam: &FamilyPresentation,
    sys: &FlowSystem,
) -> Result<IntegrableValue> {
    integrable_system_at(&start_point(x, cfg, datum, fam, sys)?, cfg, sys)
}

/// Recorded step schedules of both legs from a base point.
struct Schedules {
    first: Vec<f64>,
    second: Vec<f64>,
    eps: f64,
}

impl Schedules {
    fn record(sys: &FlowSystem, cfg: &FlowConfig, start: &Lift) -> Result<Self> {
        let (a, b) = two_legs(sys, cfg, start.clone())?;
        Ok(Schedules { first: a.schedule, second: b.schedule, eps: start.t.re })
    }

    fn origin(&self) -> Origin {
        Origin { t_ref: self.eps, s0: 0.0 }
    }

    /// End point of the first leg, replayed.
    fn terminal(&self, sys: &FlowSystem, cfg: &FlowConfig, start: Lift) -> Result<Lift> {
        let r = run(sys, cfg, start, cfg.delta, self.origin(), Steps::Replay(&self.first), false);
        Ok(r.into_result()?.lift)
    }

    /// Extrapolated `F`, replayed.
    fn value(&self, sys: &FlowSystem, cfg: &FlowConfig, start: Lift) -> Result<Vec<f64>> {
        let a = self.terminal(sys, cfg, start)?;
        let r = run(sys, cfg, a.clone(), cfg.delta / 2.0, self.origin(), Steps::Replay(&self.second), false);
        let b = r.into_result()?.lift;
        Ok(extrapolate(&moment(sys, &a), &moment(sys, &b)).0)
    }
}

/// Moves `base` by `h·v` along the fibre and retracts.
fn nudge(sys: &FlowSystem, cfg: &FlowConfig, base: &Lift, v: &[C], h: f64) -> Result<Lift> {
    let mut z: Vec<C> = base.z.iter().zip(v).map(|(a, b)| a + b * h).collect();
    unit(&mut z)?;
    sys.retract(&mut z, base.t, cfg.retraction_tol, cfg.max_retraction_iters)?;
    Ok(Lift { z, t: base.t })
}

/// `W_ab = ω(e_a, e_b)` on a real frame.
fn form_matrix(frame: &[Vec<C>]) -> DMatrix<f64> {
    let k = frame.len();
    let mut w = DMatrix::zeros(k, k);
    for a in 0..k {
        for b in a + 1..k {
            let v = kahler_form(&frame[a], &frame[b]);
            w[(a, b)] = v;
            w[(b, a)] = -v;
        }
    }
    w
}

/// All brackets `{F_i, F_j} = ω(ξ_{F_j}, ξ_{F_i})` at a point of the fibre over `ε`,
/// with `ι_ξ ω = dF` and `dF` from central differences through the flow.
pub fn poisson_matrix(pt: &ChartPoint, cfg: &FlowConfig, sys: &FlowSystem) -> Result<Vec<Vec<f64>>> {
    cfg.validate()?;
    let base = retracted(sys, cfg, pt)?;
    let sched = Schedules::record(sys, cfg, &base)?;
    let frame = sys.fiber_frame_lift(&base)?.real();
    let n = sys.dim();
    let h = cfg.fd_step;
    // dF[i][a] = dF_i(e_a)
    let mut df = vec![vec![0.0; frame.len()]; n];
    for (a, e) in frame.iter().enumerate() {
        let plus = sched.value(sys, cfg, nudge(sys, cfg, &base, e, h)?)?;
        let minus = sched.value(sys, cfg, nudge(sys, cfg, &base, e, -h)?)?;
        for i in 0..n {
            df[i][a] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    let w = form_matrix(&frame);
    let wt_lu = w.transpose().lu();
    let xi: Vec<Vec<f64>> = df
        .iter()
        .map(|d| {
            wt_lu
                .solve(&nalgebra::DVector::from_vec(d.clone()))
                .map(|v| v.iter().copied().collect())
                .ok_or(Error::DegenerateForm)
        })
        .collect::<Result<_>>()?;
    let k = frame.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            // Σ_{a<b} W_ab (ξ_j[a] ξ_i[b] − ξ_j[b] ξ_i[a]) is exactly antisymmetric in (i, j)
            let mut acc = 0.0;
            for a in 0..k {
                for b in a + 1..k {
                    acc += w[(a, b)] * (xi[j][a] * xi[i][b] - xi[j][b] * xi[i][a]);
                }
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

/// `{F_i, F_j}` at a point of the fibre over `ε`.
pub fn poisson_bracket(i: usize, j: usize, pt: &ChartPoint, cfg: &FlowConfig, sys: &FlowSystem) -> Result<f64> {
    let n = sys.dim();
    if i >= n || j >= n {
        return Err(Error::DimensionMismatch { expected: n, found: i.max(j) + 1 });
    }
    Ok(poisson_matrix(pt, cfg, sys)?[i][j])
}

/// `|ω_δ(u′, v′) − ω_ε(u, v)|` for fibre tangent vectors pushed forward by the flow.
///
/// `u`, `v` are vectors at the unit lift of `pt` (see [`FlowSystem::lift`]);
/// they are first projected onto the fibre tangent space.
pub fn symplectic_residual(
    pt: &ChartPoint,
    u: &[C],
    v: &[C],
    cfg: &FlowConfig,
    sys: &FlowSystem,
) -> Result<f64> {
    cfg.validate()?;
    let m = sys.coordinates();
    if u.len() != m || v.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: u.len().min(v.len()) });
    }
    let base = retracted(sys, cfg, pt)?;
    let frame = sys.fiber_frame_lift(&base)?.complex;
    let project = |w: &[C]| -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); m];
        for q in &frame {
            let c: C = q.iter().zip(w).map(|(a, b)| a.conj() * b).sum();
            for (o, a) in out.iter_mut().zip(q) {
                *o += a * c;
            }
        }
        out
    };
    let (u, v) = (project(u), project(v));
    let before = kahler_form(&u, &v);
    if u.iter().all(|c| c.norm() == 0.0) || v.iter().all(|c| c.norm() == 0.0) {
        return Ok(0.0);
    }
    let sched = Schedules::record(sys, cfg, &base)?;
    let end = sched.terminal(sys, cfg, base.clone())?;
    let h = cfg.fd_step;
    let push = |w: &[C]| -> Result<Vec<C>> {
        let p = sched.terminal(sys, cfg, nudge(sys, cfg, &base, w, h)?)?;
        let q = sched.terminal(sys, cfg, nudge(sys, cfg, &base, w, -h)?)?;
        let mut d: Vec<C> = p.z.iter().zip(&q.z).map(|(a, b)| (a - b) / (2.0 * h)).collect();
        horizontal(&end.z, &mut d);
        Ok(d)
    };
    let after = kahler_form(&push(&u)?, &push(&v)?);
    Ok((after - before).abs())
}

/// Intrinsic sample points with per-sample deterministic streams.
///
/// Sample `i` depends only on `(seed, i)`; points on the base locus are redrawn.
pub fn sample_points(datum: &SagbiDatum, cfg: &FlowConfig, count: usize) -> Result<Vec<Vec<C>>> {
    let smp = IntrinsicSampler::new(datum, cfg.sample_log10_range)?;
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            for _ in 0..100 {
                let x = smp.sample(datum, &mut rng)?;
                let h = crate::algebra::evaluate_complex(datum.section(), &x)?;
                if h.norm() > 1e-6 {
                    return Ok(x);
                }
            }
            Err(Error::Chart("could not draw a point off the base locus".into()))
        })
        .collect()
}

/// A random unit tangent vector of the fibre at a chart point, drawn from `rng`.
pub fn random_fiber_vector<R: Rng + ?Sized>(pt: &ChartPoint, sys: &FlowSystem, rng: &mut R) -> Result<Vec<C>> {
    let frame = sys.fiber_frame(pt)?.real();
    let m = sys.coordinates();
    let mut v = vec![C::new(0.0, 0.0); m];
    for e in &frame {
        let c: f64 = rng.random::<f64>() * 2.0 - 1.0;
        for (o, x) in v.iter_mut().zip(e) {
            *o += x * c;
        }
    }
    let n = num_traits::Float::sqrt(v.iter().map(|c| c.norm_sqr()).sum::<f64>());
    if n > 0.0 {
        v.iter_mut().for_each(|c| *c /= n);
    }
    Ok(v)
}

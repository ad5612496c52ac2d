use alloc::format;
use alloc::vec::Vec;

use num_traits::Float;

use crate::algebra::Complex64;
use crate::{Error, Result};

use super::config::FlowConfig;
use super::system::{ChartPoint, FlowSystem, Lift};

type C = Complex64;

/// One accepted step of a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowSample {
    /// Flow time since the start of the trajectory.
    pub s: f64,
    pub t: C,
    pub point: ChartPoint,
    /// Largest relative residual of `g̃_k` after retraction.
    pub residual: f64,
    /// `|Im π|`.
    pub im_pi: f64,
    /// `|Re π − (ε − s)|`.
    pub re_lin_err: f64,
    /// `|dRe(π)[V_π] + 1|` at the sample.
    pub normalization_err: f64,
}

/// Worst-case quantities over a trajectory.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FlowDiagnostics {
    pub max_im_pi: f64,
    pub max_re_lin_err: f64,
    pub max_normalization_err: f64,
    pub max_residual: f64,
    pub steps: usize,
    pub rejected: usize,
}

impl FlowDiagnostics {
    fn absorb(&mut self, s: &FlowSample) {
        self.max_im_pi = self.max_im_pi.max(s.im_pi);
        self.max_re_lin_err = self.max_re_lin_err.max(s.re_lin_err);
        self.max_normalization_err = self.max_normalization_err.max(s.normalization_err);
        self.max_residual = self.max_residual.max(s.residual);
    }

    pub(crate) fn merge(&mut self, o: &FlowDiagnostics) {
        self.max_im_pi = self.max_im_pi.max(o.max_im_pi);
        self.max_re_lin_err = self.max_re_lin_err.max(o.max_re_lin_err);
        self.max_normalization_err = self.max_normalization_err.max(o.max_normalization_err);
        self.max_residual = self.max_residual.max(o.max_residual);
        self.steps += o.steps;
        self.rejected += o.rejected;
    }
}

/// A trajectory of the gradient-Hamiltonian flow.
///
/// On failure `failure` is set and `terminal` is the last valid sample.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowResult {
    pub samples: Vec<FlowSample>,
    pub terminal: ChartPoint,
    /// Extrapolated moment value, when the trajectory fed an evaluation of `F`.
    pub moment: Option<Vec<f64>>,
    pub diagnostics: FlowDiagnostics,
    pub failure: Option<Error>,
    pub(crate) lift: Lift,
    pub(crate) schedule: Vec<f64>,
}

impl FlowResult {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }

    /// Accepted step sizes, in order.
    pub fn schedule(&self) -> &[f64] {
        &self.schedule
    }

    pub fn into_result(self) -> Result<Self> {
        match self.failure {
            Some(e) => Err(e),
            None => Ok(self),
        }
    }
}

// Dormand–Prince 5(4)
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// `V_π` at an unnormalized state `(z, t)` packed as one vector.
fn field(sys: &FlowSystem, y: &[C]) -> Result<Vec<C>> {
    let m = sys.coordinates();
    let lift = Lift::new(y[..m].to_vec(), y[m])?;
    sys.gradient_hamiltonian_lift(&lift)
}

fn combine(y: &[C], h: f64, ks: &[Vec<C>], w: &[f64]) -> Vec<C> {
    let mut out = y.to_vec();
    for (k, &c) in ks.iter().zip(w) {
        if c != 0.0 {
            for (o, v) in out.iter_mut().zip(k) {
                *o += v * (h * c);
            }
        }
    }
    out
}

/// One Dormand–Prince step; returns the 5th-order state, the error vector and the stages.
fn dopri_step(sys: &FlowSystem, y: &[C], k1: Vec<C>, h: f64) -> Result<(Vec<C>, Vec<C>)> {
    let mut ks = Vec::with_capacity(7);
    ks.push(k1);
    for row in A.iter() {
        let stage = combine(y, h, &ks, row);
        ks.push(field(sys, &stage)?);
        if ks.len() == 7 {
            let err = combine(&alloc::vec![C::new(0.0, 0.0); y.len()], h, &ks, &E);
            return Ok((stage, err));
        }
    }
    unreachable!()
}

fn error_norm(cfg: &FlowConfig, y0: &[C], y1: &[C], err: &[C]) -> f64 {
    let sum: f64 = y0
        .iter()
        .zip(y1)
        .zip(err)
        .map(|((a, b), e)| {
            let sc = cfg.atol + cfg.rtol * a.norm().max(b.norm());
            (e.norm() / sc).powi(2)
        })
        .sum();
    Float::sqrt(sum / y0.len() as f64)
}

/// How step sizes are chosen.
pub(crate) enum Steps<'a> {
    Adaptive,
    /// Replays a recorded schedule without error control, so the end point
    /// depends smoothly on the start point.
    Replay(&'a [f64]),
}

/// Origin of the `Re π` linearity check: `Re π(s) = t_ref − s`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Origin {
    pub t_ref: f64,
    pub s0: f64,
}

fn pack(l: &Lift) -> Vec<C> {
    let mut y = l.z.clone();
    y.push(l.t);
    y
}

pub(crate) fn run(
    sys: &FlowSystem,
    cfg: &FlowConfig,
    start: Lift,
    target: f64,
    origin: Origin,
    steps: Steps<'_>,
    record: bool,
) -> FlowResult {
    let m = sys.coordinates();
    let mut lift = start;
    let mut s = origin.s0;
    let mut samples = Vec::new();
    let mut diag = FlowDiagnostics::default();
    let mut schedule = Vec::new();
    let fail = |lift: Lift, samples, diag, schedule, e: Error| FlowResult {
        samples,
        terminal: lift.chart(),
        moment: None,
        diagnostics: diag,
        failure: Some(e),
        lift,
        schedule,
    };
    let mut k1 = match sys.gradient_hamiltonian_lift(&lift) {
        Ok(k) => k,
        Err(e) => return fail(lift, samples, diag, schedule, e),
    };
    let mut h = match steps {
        Steps::Adaptive => (lift.t.re - target).min(cfg.max_step).min(1e-3),
        Steps::Replay(_) => 0.0,
    };
    let mut idx = 0usize;
    loop {
        let remaining = lift.t.re - target;
        let step = match steps {
            Steps::Adaptive => {
                if remaining <= 1e-15 * target.max(1e-300) {
                    break;
                }
                if diag.steps >= cfg.max_steps {
                    let e = Error::Flow(format!("step limit {} reached at t = {}", cfg.max_steps, lift.t));
                    return fail(lift, samples, diag, schedule, e);
                }
                let cap = cfg.max_step * lift.t.re.max(0.0).powf(cfg.lojasiewicz_alpha).min(1.0);
                h = h.min(cap);
                if h >= remaining * (1.0 - 1e-12) {
                    h = remaining;
                }
                h
            }
            Steps::Replay(hs) => {
                if idx == hs.len() {
                    break;
                }
                idx += 1;
                hs[idx - 1]
            }
        };
        let y = pack(&lift);
        let (y5, err) = match dopri_step(sys, &y, k1.clone(), step) {
            Ok(r) => r,
            Err(e) => match steps {
                Steps::Adaptive if step > 1e-14 => {
                    // a stage hit a bad point; retry with a shorter step
                    diag.rejected += 1;
                    h = step * 0.25;
                    continue;
                }
                _ => return fail(lift, samples, diag, schedule, e),
            },
        };
        if let Steps::Adaptive = steps {
            let en = error_norm(cfg, &y, &y5, &err);
            if !(en <= 1.0) {
                diag.rejected += 1;
                let fac = if en.is_finite() { (0.9 * en.powf(-0.2)).max(0.2) } else { 0.2 };
                h = step * fac;
                if h < 1e-14 {
                    let e = Error::Flow(format!("step size underflow at t = {}", lift.t));
                    return fail(lift, samples, diag, schedule, e);
                }
                continue;
            }
            h = step * (0.9 * en.max(1e-10).powf(-0.2)).min(5.0);
        }
        let t = y5[m];
        let mut z = y5[..m].to_vec();
        let residual = match sys.retract(&mut z, t, cfg.retraction_tol, cfg.max_retraction_iters) {
            Ok(r) => r,
            Err(e) => return fail(lift, samples, diag, schedule, e),
        };
        let next = Lift { z, t };
        k1 = match sys.gradient_hamiltonian_lift(&next) {
            Ok(k) => k,
            Err(e) => return fail(lift, samples, diag, schedule, e),
        };
        lift = next;
        s += step;
        schedule.push(step);
        diag.steps += 1;
        let sample = FlowSample {
            s,
            t: lift.t,
            point: lift.chart(),
            residual,
            im_pi: lift.t.im.abs(),
            re_lin_err: (lift.t.re - (origin.t_ref - s)).abs(),
            normalization_err: (k1[m].re + 1.0).abs(),
        };
        diag.absorb(&sample);
        if record {
            samples.push(sample);
        }
    }
    FlowResult {
        samples,
        terminal: lift.chart(),
        moment: None,
        diagnostics: diag,
        failure: None,
        lift,
        schedule,
    }
}

/// Flows a point on the fibre over `Re t = ε` down to `Re t = target`.
pub fn flow_to(pt: &ChartPoint, target: f64, cfg: &FlowConfig, sys: &FlowSystem) -> Result<FlowResult> {
    cfg.validate()?;
    if !(target > 0.0 && target < pt.t.re) {
        return Err(Error::InvalidConfig(format!(
            "flow target {target} must lie in (0, Re t = {})",
            pt.t.re
        )));
    }
    let mut start = Lift::from_chart(pt)?;
    sys.retract(&mut start.z, start.t, cfg.retraction_tol, cfg.max_retraction_iters)?;
    let origin = Origin { t_ref: start.t.re, s0: 0.0 };
    Ok(run(sys, cfg, start, target, origin, Steps::Adaptive, true))
}

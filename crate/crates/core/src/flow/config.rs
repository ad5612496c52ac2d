use alloc::format;

use crate::{Error, Result};

/// Numerical settings for the gradient-Hamiltonian flow.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowConfig {
    /// Fibre the flow starts on.
    pub epsilon: f64,
    /// Terminal cutoff; the limit `t → 0` is extrapolated from `δ` and `δ/2`.
    pub delta: f64,
    pub rtol: f64,
    pub atol: f64,
    /// Largest relative residual of any `g̃_k` after retraction.
    pub retraction_tol: f64,
    pub max_retraction_iters: usize,
    pub max_steps: usize,
    /// Exponent `α` of the step cap `max_step · min(1, (Re t)^α)`.
    pub lojasiewicz_alpha: f64,
    pub max_step: f64,
    /// Step for central differences through the flow.
    pub fd_step: f64,
    /// Range of `log₁₀|x_i|` for sampled intrinsic points.
    pub sample_log10_range: (f64, f64),
    pub seed: u64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            epsilon: 0.5,
            delta: 1e-4,
            rtol: 1e-10,
            atol: 1e-12,
            retraction_tol: 1e-10,
            max_retraction_iters: 20,
            max_steps: 200_000,
            lojasiewicz_alpha: 0.5,
            max_step: 0.05,
            fd_step: 1e-5,
            sample_log10_range: (-3.0, 3.0),
            seed: 0,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.into()));
        if !(0.0 < self.delta && self.delta < self.epsilon && self.epsilon < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < delta < epsilon < 1, got delta = {}, epsilon = {}",
                self.delta, self.epsilon
            )));
        }
        if !(self.rtol > 0.0 && self.atol > 0.0 && self.retraction_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.max_step > 0.0 && self.fd_step > 0.0) {
            return bad("step sizes must be positive");
        }
        if !(0.0 < self.lojasiewicz_alpha && self.lojasiewicz_alpha < 1.0) {
            return bad("the Lojasiewicz exponent must lie in (0, 1)");
        }
        if self.max_steps == 0 || self.max_retraction_iters == 0 {
            return bad("iteration limits must be positive");
        }
        if !(self.sample_log10_range.0 <= self.sample_log10_range.1) {
            return bad("empty sampling range");
        }
        Ok(())
    }
}

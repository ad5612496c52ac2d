//! Parallel evaluation of the integrable system over sample batches.

use okkit_core::algebra::{rational_to_f64, Complex64};
use okkit_core::catalog::CatalogEntry;
use okkit_core::embedding::{enumerate_vd_basis, VdBasis};
use okkit_core::flow::{
    integrable_system_at, sample_points, start_point, ChartPoint, FlowConfig, FlowDiagnostics, FlowSystem,
    IntegrableValue,
};
use okkit_core::okounkov::OkounkovBody;
use okkit_core::Error;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::svg::{hull_2d, polygon_area};

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "OKKIT_THREADS";

/// Worker pool honouring `OKKIT_THREADS`.
pub fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n = v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))
}

/// Degree-one embedding and the flow system on it.
pub fn flow_system(entry: &CatalogEntry) -> CliResult<FlowSystem> {
    let basis: VdBasis = enumerate_vd_basis(entry.datum(), entry.family(), 1)?;
    Ok(FlowSystem::new(entry.family(), &basis)?)
}

/// One sample of a batch.
#[derive(Clone, Debug)]
pub struct SampleOutcome {
    pub id: usize,
    /// Intrinsic coordinates of the sample.
    pub point: Vec<Complex64>,
    /// Lift on the fibre over `ε`, when the point could be embedded.
    pub start: Option<ChartPoint>,
    pub result: Result<IntegrableValue, Error>,
}

impl SampleOutcome {
    pub fn value(&self) -> Option<&[f64]> {
        self.result.as_ref().ok().map(|v| v.value.as_slice())
    }
}

fn evaluate(id: usize, x: Vec<Complex64>, entry: &CatalogEntry, sys: &FlowSystem, cfg: &FlowConfig) -> SampleOutcome {
    match start_point(&x, cfg, entry.datum(), entry.family(), sys) {
        Ok(pt) => {
            let result = integrable_system_at(&pt, cfg, sys);
            SampleOutcome { id, point: x, start: Some(pt), result }
        }
        Err(e) => SampleOutcome { id, point: x, start: None, result: Err(e) },
    }
}

/// Results of evaluating `F` on `count` seeded samples.
#[derive(Clone, Debug)]
pub struct FlowBatch {
    pub outcomes: Vec<SampleOutcome>,
}

impl FlowBatch {
    /// Samples `0..count` in parallel; sample `i` depends only on `(seed, i)`.
    pub fn run(
        entry: &CatalogEntry,
        sys: &FlowSystem,
        cfg: &FlowConfig,
        count: usize,
        pool: &rayon::ThreadPool,
    ) -> CliResult<FlowBatch> {
        let points = sample_points(entry.datum(), cfg, count)?;
        let outcomes = pool.install(|| {
            points
                .into_par_iter()
                .enumerate()
                .map(|(i, x)| evaluate(i, x, entry, sys, cfg))
                .collect()
        });
        Ok(FlowBatch { outcomes })
    }

    pub fn succeeded(&self) -> usize {
        self.outcomes.iter().filter(|o| o.result.is_ok()).count()
    }

    pub fn success_rate(&self) -> f64 {
        if self.outcomes.is_empty() {
            return 0.0;
        }
        self.succeeded() as f64 / self.outcomes.len() as f64
    }

    pub fn values(&self) -> Vec<Vec<f64>> {
        self.outcomes.iter().filter_map(|o| o.value().map(<[f64]>::to_vec)).collect()
    }

    /// Worst case over the successful trajectories.
    pub fn diagnostics(&self) -> FlowDiagnostics {
        let mut d = FlowDiagnostics::default();
        for v in self.outcomes.iter().filter_map(|o| o.result.as_ref().ok()) {
            let f = &v.flow.diagnostics;
            d.max_im_pi = d.max_im_pi.max(f.max_im_pi);
            d.max_re_lin_err = d.max_re_lin_err.max(f.max_re_lin_err);
            d.max_normalization_err = d.max_normalization_err.max(f.max_normalization_err);
            d.max_residual = d.max_residual.max(f.max_residual);
            d.steps += f.steps;
            d.rejected += f.rejected;
        }
        d
    }

    pub fn max_error_estimate(&self) -> f64 {
        self.outcomes
            .iter()
            .filter_map(|o| o.result.as_ref().ok())
            .map(|v| v.error_estimate)
            .fold(0.0, f64::max)
    }
}

/// Smallest facet slack `offset − normal·x` (negative outside) and largest
/// equation defect of a point.
pub fn body_margin(body: &OkounkovBody, x: &[f64]) -> (f64, f64) {
    let eval = |f: &okkit_core::okounkov::Facet| {
        rational_to_f64(&f.offset) - f.normal.iter().zip(x).map(|(a, b)| rational_to_f64(a) * b).sum::<f64>()
    };
    let slack = body.facets().iter().map(eval).fold(f64::INFINITY, f64::min);
    let defect = body.equations().iter().map(|f| eval(f).abs()).fold(0.0, f64::max);
    (slack, defect)
}

/// Share of `Δ` covered by the convex hull of the values: length for
/// intervals, area for polygons. `None` in higher dimension or for a
/// degenerate body.
pub fn coverage(body: &OkounkovBody, values: &[Vec<f64>]) -> Option<f64> {
    let verts: Vec<Vec<f64>> = body.vertices().iter().map(|v| v.iter().map(rational_to_f64).collect()).collect();
    let size = rational_to_f64(body.volume());
    if size <= 0.0 || values.is_empty() {
        return None;
    }
    match body.dim() {
        1 => {
            let (lo, hi) = verts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v[0]), b.max(v[0])));
            let (vlo, vhi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v[0]), b.max(v[0])));
            Some(((vhi.min(hi) - vlo.max(lo)).max(0.0) / size).min(1.0))
        }
        2 => {
            let pts: Vec<(f64, f64)> = values.iter().map(|v| (v[0], v[1])).collect();
            Some((polygon_area(&hull_2d(&pts)) / size).min(1.0))
        }
        _ => None,
    }
}

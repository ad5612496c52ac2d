//! The subcommands, writing their artifacts into an output directory.

use std::path::{Path, PathBuf};

use okkit_core::catalog::{list_examples, CatalogEntry};
use okkit_core::flow::FlowConfig;
use okkit_core::okounkov::{default_slice_bound, slice, GradingHomomorphism, SliceResult};
use serde_json::{json, Value};

use crate::batch::{body_margin, coverage, flow_system, FlowBatch};
use crate::diagnostics::{commutation_residuals, CommutationMode};
use crate::error::{CliError, CliResult};
use crate::{json, svg};

/// Least share of successful samples for a flow run to count as a success.
pub const FLOW_SUCCESS_SHARE: f64 = 0.9;
/// Largest accepted `|λ_ℝ(F) − μ_H|`.
pub const COMMUTATION_TOLERANCE: f64 = 1e-6;

fn write(dir: &Path, file: &str, contents: &str) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(file);
    std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn cmd_list() -> String {
    let items = list_examples();
    let w = items.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    items.iter().map(|(n, d)| format!("{n:<w$}  {d}\n")).collect()
}

/// `<name>.body.json` and `<name>.body.svg`.
pub fn cmd_body(entry: &CatalogEntry, out: &Path) -> CliResult<Vec<PathBuf>> {
    let name = entry.name();
    Ok(vec![
        write(out, &format!("{name}.body.json"), &json::to_string(&json::body(entry.body())))?,
        write(out, &format!("{name}.body.svg"), &svg::render_body(entry.body(), &format!("Δ for {name}"), &[]))?,
    ])
}

/// `<name>.family.json`, written only once the family passes its invariants.
pub fn cmd_degenerate(entry: &CatalogEntry, out: &Path) -> CliResult<Vec<PathBuf>> {
    entry.family().verify()?;
    let mut v = json::family(entry.name(), entry.family());
    v["verified"] = json!(true);
    Ok(vec![write(out, &format!("{}.family.json", entry.name()), &json::to_string(&v))?])
}

/// Outcome of a flow run.
#[derive(Debug)]
pub struct FlowReport {
    pub batch: FlowBatch,
    pub coverage: Option<f64>,
    pub files: Vec<PathBuf>,
}

impl FlowReport {
    pub fn succeeded(&self) -> bool {
        self.batch.success_rate() >= FLOW_SUCCESS_SHARE
    }
}

fn trajectories_csv(batch: &FlowBatch, n: usize) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["sample_id", "s", "t_re", "t_im", "chart", "residual", "Impi", "ReLinErr"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((1..=n).map(|i| format!("F_{i}")));
    header.push("status".into());
    let csv_err = |e: csv::Error| CliError::Quality(format!("writing CSV: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for o in &batch.outcomes {
        match &o.result {
            Ok(v) => {
                let f: Vec<String> = v.value.iter().map(|x| float(*x)).collect();
                for s in &v.flow.samples {
                    let mut rec = vec![
                        o.id.to_string(),
                        float(s.s),
                        float(s.t.re),
                        float(s.t.im),
                        s.point.chart.to_string(),
                        float(s.residual),
                        float(s.im_pi),
                        float(s.re_lin_err),
                    ];
                    rec.extend(f.iter().cloned());
                    rec.push("ok".into());
                    w.write_record(&rec).map_err(csv_err)?;
                }
            }
            Err(e) => {
                let mut rec = vec![o.id.to_string()];
                rec.extend(std::iter::repeat_n(String::new(), 7 + n));
                rec.push(format!("failed: {e}"));
                w.write_record(&rec).map_err(csv_err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Quality(format!("writing CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of UTF-8 fields"))
}

fn flow_json(entry: &CatalogEntry, cfg: &FlowConfig, batch: &FlowBatch, cov: Option<f64>) -> Value {
    let d = batch.diagnostics();
    let values = batch.values();
    let n = entry.semigroup().rank();
    let lo: Vec<f64> = (0..n).map(|i| values.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..n).map(|i| values.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let violation = values
        .iter()
        .map(|v| {
            let (slack, defect) = body_margin(entry.body(), v);
            (-slack).max(defect).max(0.0)
        })
        .fold(0.0, f64::max);
    let samples: Vec<Value> = batch
        .outcomes
        .iter()
        .map(|o| {
            let mut s = json!({
                "id": o.id,
                "point": o.point.iter().map(json::complex).collect::<Vec<_>>(),
            });
            match &o.result {
                Ok(v) => {
                    let f = &v.flow.diagnostics;
                    s["status"] = json!("ok");
                    s["value"] = json!(v.value);
                    s["error_estimate"] = json!(v.error_estimate);
                    s["max_normalization_err"] = json!(f.max_normalization_err);
                    s["max_im_pi"] = json!(f.max_im_pi);
                    s["max_re_lin_err"] = json!(f.max_re_lin_err);
                    s["max_residual"] = json!(f.max_residual);
                    s["steps"] = json!(f.steps);
                    s["rejected"] = json!(f.rejected);
                }
                Err(e) => s["status"] = json!(format!("failed: {e}")),
            }
            s
        })
        .collect();
    json!({
        "entry": entry.name(),
        "config": {
            "epsilon": cfg.epsilon,
            "delta": cfg.delta,
            "seed": cfg.seed,
            "rtol": cfg.rtol,
            "atol": cfg.atol,
            "retraction_tol": cfg.retraction_tol,
            "max_step": cfg.max_step,
            "lojasiewicz_alpha": cfg.lojasiewicz_alpha,
            "sample_log10_range": [cfg.sample_log10_range.0, cfg.sample_log10_range.1],
        },
        "samples": batch.outcomes.len(),
        "succeeded": batch.succeeded(),
        "success_rate": batch.success_rate(),
        "coverage": cov,
        "summary": {
            "value_min": lo,
            "value_max": hi,
            "max_body_violation": violation,
            "max_normalization_err": d.max_normalization_err,
            "max_im_pi": d.max_im_pi,
            "max_re_lin_err": d.max_re_lin_err,
            "max_residual": d.max_residual,
            "max_error_estimate": batch.max_error_estimate(),
            "steps": d.steps,
            "rejected": d.rejected,
        },
        "per_sample": samples,
    })
}

/// Evaluates `F` on `samples` points and writes the trajectories CSV, the
/// diagnostics JSON and a scatter of the values over `Δ`.
pub fn cmd_flow(
    entry: &CatalogEntry,
    cfg: &FlowConfig,
    samples: usize,
    out: &Path,
    pool: &rayon::ThreadPool,
) -> CliResult<FlowReport> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let sys = flow_system(entry)?;
    let batch = FlowBatch::run(entry, &sys, cfg, samples, pool)?;
    let cov = coverage(entry.body(), &batch.values());
    let name = entry.name();
    let n = entry.semigroup().rank();
    let files = vec![
        write(out, &format!("{name}.flow.csv"), &trajectories_csv(&batch, n)?)?,
        write(out, &format!("{name}.flow.json"), &json::to_string(&flow_json(entry, cfg, &batch, cov)))?,
        write(
            out,
            &format!("{name}.flow.svg"),
            &svg::render_body(entry.body(), &format!("F over Δ for {name}, {samples} samples"), &batch.values()),
        )?,
    ];
    Ok(FlowReport { batch, coverage: cov, files })
}

/// Reads `λ̃` as a JSON integer matrix; `[]` is the zero homomorphism.
pub fn read_homomorphism(path: &Path, rank: usize) -> CliResult<GradingHomomorphism> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: expected an integer matrix: {e}", path.display())))?;
    if rows.is_empty() {
        return Ok(GradingHomomorphism::zero(rank));
    }
    GradingHomomorphism::new(rows, rank + 1).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Outcome of a slice run.
#[derive(Debug)]
pub struct SliceReport {
    pub slice: SliceResult,
    pub mode: CommutationMode,
    pub residuals: Vec<f64>,
    pub samples: usize,
    pub files: Vec<PathBuf>,
}

impl SliceReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn succeeded(&self) -> bool {
        self.residuals.len() as f64 >= FLOW_SUCCESS_SHARE * self.samples as f64
            && self.max_residual() < COMMUTATION_TOLERANCE
    }
}

/// `Δ′ = Δ ∩ ker λ̃` with its semigroup, and the commutation of `λ_ℝ ∘ F`
/// with the subtorus moment map on `samples` points.
pub fn cmd_slice(
    entry: &CatalogEntry,
    hom: &GradingHomomorphism,
    cfg: &FlowConfig,
    samples: usize,
    out: &Path,
    pool: &rayon::ThreadPool,
) -> CliResult<SliceReport> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let s = entry.semigroup();
    let sl = slice(s, entry.body(), hom, default_slice_bound(s))?;
    let sys = flow_system(entry)?;
    let batch = FlowBatch::run(entry, &sys, cfg, samples, pool)?;
    let (mode, residuals) = commutation_residuals(entry, hom, &sys, &batch);
    let max = residuals.iter().copied().fold(0.0, f64::max);
    let v = json!({
        "entry": entry.name(),
        "homomorphism": hom.rows(),
        "slice": json::slice(&sl),
        "commutation": {
            "evaluated_on": mode.as_str(),
            "samples": samples,
            "succeeded": residuals.len(),
            "max_residual": max,
            "tolerance": COMMUTATION_TOLERANCE,
        },
    });
    let name = entry.name();
    let files = vec![
        write(out, &format!("{name}.slice.json"), &json::to_string(&v))?,
        write(out, &format!("{name}.slice.svg"), &svg::render_body(&sl.body, &format!("Δ′ for {name}"), &[]))?,
    ];
    Ok(SliceReport { slice: sl, mode, residuals, samples, files })
}

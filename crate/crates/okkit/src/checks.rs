//! The invariant suite behind `okkit check`.

use std::fmt::Write;
use std::time::Instant;

use okkit_core::algebra::{rational_to_f64, BiDegree};
use okkit_core::catalog::{weyl_dimension, CatalogEntry, REPRESENTATION_LEVELS};
use okkit_core::flow::FlowConfig;
use okkit_core::okounkov::{brute_force_level, degree_check, hilbert_function, okounkov_body, ValueSemigroup};

use crate::batch::{body_margin, flow_system, thread_pool, FlowBatch};
use crate::diagnostics::{
    commutation_residuals, poisson_brackets, subduction_soundness, symplectic_residuals, velocity_tangency,
};
use crate::error::CliResult;
use crate::input::load_input;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckRow {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

/// Sizes of the sampled checks.
#[derive(Clone, Debug)]
pub struct CheckPlan {
    pub subductions: usize,
    pub subduction_level: u32,
    pub hilbert_levels: u64,
    pub flow_samples: usize,
    pub symplectic_samples: usize,
    pub poisson_points: usize,
}

impl Default for CheckPlan {
    fn default() -> Self {
        CheckPlan {
            subductions: 200,
            subduction_level: 4,
            hilbert_levels: 6,
            flow_samples: 10,
            symplectic_samples: 5,
            poisson_points: 5,
        }
    }
}

struct Rows(Vec<CheckRow>);

impl Rows {
    fn run(&mut self, name: &str, f: impl FnOnce() -> (Status, String)) {
        let t = Instant::now();
        let (status, detail) = f();
        self.0.push(CheckRow { name: name.into(), status, detail, seconds: t.elapsed().as_secs_f64() });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.0.push(CheckRow { name: name.into(), status: Status::Skip, detail: why.into(), seconds: 0.0 });
    }
}

fn fail(e: impl std::fmt::Display) -> (Status, String) {
    (Status::Fail, e.to_string())
}

/// Loads `input` and runs the suite. A load failure other than an unknown
/// name becomes a single failing row carrying the diff.
pub fn check_input(input: &str, cfg_for: impl FnOnce(&CatalogEntry) -> CliResult<FlowConfig>) -> CliResult<Vec<CheckRow>> {
    let t = Instant::now();
    let entry = match load_input(input) {
        Ok(e) => e,
        Err(crate::error::CliError::Core(e)) if !matches!(e, okkit_core::Error::UnknownEntry(_)) => {
            return Ok(vec![CheckRow {
                name: "entry data re-derived".into(),
                status: Status::Fail,
                detail: e.to_string(),
                seconds: t.elapsed().as_secs_f64(),
            }]);
        }
        Err(e) => return Err(e),
    };
    let cfg = cfg_for(&entry)?;
    let mut rows = vec![CheckRow {
        name: "entry data re-derived".into(),
        status: Status::Pass,
        detail: format!("semigroup, vertices and degree {} match", entry.degree()),
        seconds: t.elapsed().as_secs_f64(),
    }];
    rows.extend(run_checks(&entry, &cfg, &CheckPlan::default())?);
    Ok(rows)
}

/// Every invariant that applies to `entry`.
pub fn run_checks(entry: &CatalogEntry, cfg: &FlowConfig, plan: &CheckPlan) -> CliResult<Vec<CheckRow>> {
    let mut rows = Rows(Vec::new());
    let s = entry.semigroup();
    let n = s.rank();

    rows.run("subduction of random elements", || {
        match subduction_soundness(entry, plan.subductions, plan.subduction_level, cfg.seed) {
            Ok(st) => (Status::Pass, format!("{} exact, longest chain {}", st.count, st.longest_chain)),
            Err(e) => fail(e),
        }
    });
    rows.run("Hilbert function vs enumeration", || {
        let h = hilbert_function(s, plan.hilbert_levels);
        let bad = (0..=plan.hilbert_levels).find(|&k| h[k as usize] != brute_force_level(s, k).len() as u64);
        match bad {
            None => (Status::Pass, format!("H = {:?}", &h[1..])),
            Some(k) => fail(format!("mismatch at level {k}")),
        }
    });
    rows.run("degree from Hilbert growth", || {
        let levels = if n <= 2 { 10 } else { 6 };
        match degree_check(s, levels) {
            Ok(r) => (
                Status::from_bool(r.relative_error < 1e-9),
                format!("n!·vol = {}, fitted error {:.1e}", r.degree, r.relative_error),
            ),
            Err(e) => fail(e),
        }
    });
    rows.run("body V/H consistency", || {
        (Status::from_bool(entry.body().cross_check()), format!("{} vertices, {} facets", entry.body().vertices().len(), entry.body().facets().len()))
    });
    rows.run("body invariant under level doubling", || {
        let doubled: Vec<BiDegree> = s
            .generators()
            .iter()
            .map(|g| BiDegree::new(2 * g.level, g.value.scaled(2).entries().to_vec()))
            .collect();
        match ValueSemigroup::new(n, doubled).and_then(|d| okounkov_body(&d)) {
            Ok(b) => (Status::from_bool(b == *entry.body()), String::new()),
            Err(e) => fail(e),
        }
    });
    rows.run("family invariants", || match entry.family().verify() {
        Ok(()) => (Status::Pass, format!("p = {:?}", entry.projection().p)),
        Err(e) => fail(e),
    });
    if let (Some(hom), Some(sl)) = (entry.homomorphism(), entry.slice()) {
        rows.run("quotient slice", || {
            let gens_ok = sl.semigroup.generators().iter().all(|g| hom.apply(g).iter().all(|&x| x == 0));
            let verts_ok = sl.body.vertices().iter().all(|v| {
                let x: Vec<f64> = v.iter().map(rational_to_f64).collect();
                hom.apply_normalized(&x).iter().all(|y| y.abs() < 1e-12)
            });
            let exact = entry.body().intersect_affine(&hom.affine_equations()).is_ok_and(|b| b == sl.body);
            (
                Status::from_bool(gens_ok && verts_ok && exact && sl.complete),
                format!("{} generators, complete = {}", sl.semigroup.generators().len(), sl.complete),
            )
        });
    }
    if let Some(rep) = entry.representation() {
        rows.run("lattice points vs Weyl dimension", || match rep.verify(entry.body(), REPRESENTATION_LEVELS) {
            Ok(counts) => {
                let weyl: Vec<u128> = (1..=REPRESENTATION_LEVELS as i64)
                    .map(|k| weyl_dimension(&rep.scaled_weight(k)))
                    .collect();
                let ok = counts.iter().zip(&weyl).all(|(&a, &b)| a as u128 == b);
                (Status::from_bool(ok), format!("{counts:?}"))
            }
            Err(e) => fail(e),
        });
    }

    let flow_rows = ["flow normalization", "values inside the body", "symplectic transport", "Poisson brackets"];
    if entry.flow_defaults().extended {
        for r in flow_rows {
            rows.skip(r, "extended entry");
        }
        if entry.homomorphism().is_some() {
            rows.skip("quotient commutation", "extended entry");
        }
        return Ok(rows.0);
    }
    let sys = match flow_system(entry) {
        Ok(s) => s,
        Err(e) => {
            for r in flow_rows {
                rows.run(r, || fail(&e));
            }
            return Ok(rows.0);
        }
    };
    let pool = thread_pool()?;
    let t = Instant::now();
    let batch = FlowBatch::run(entry, &sys, cfg, plan.flow_samples, &pool)?;
    let batch_time = t.elapsed().as_secs_f64();
    rows.run("flow normalization", || {
        let d = batch.diagnostics();
        let tangency = match velocity_tangency(entry, &sys, &batch) {
            Ok(x) => x,
            Err(e) => return fail(&e),
        };
        let ok = batch.success_rate() == 1.0
            && tangency < 1e-8
            && d.max_normalization_err < 1e-8
            && d.max_im_pi < 1e-8
            && d.max_re_lin_err < 1e-6
            && d.max_residual < cfg.retraction_tol;
        (
            Status::from_bool(ok),
            format!(
                "{}/{} ok, |dRe π[V]+1| {:.1e}, tangency {:.1e}, |Im π| {:.1e}, |Re π−(ε−s)| {:.1e}",
                batch.succeeded(),
                batch.outcomes.len(),
                d.max_normalization_err,
                tangency,
                d.max_im_pi,
                d.max_re_lin_err
            ),
        )
    });
    rows.0.last_mut().unwrap().seconds += batch_time;
    rows.run("values inside the body", || {
        let worst = batch
            .values()
            .iter()
            .map(|v| {
                let (slack, defect) = body_margin(entry.body(), v);
                (-slack).max(defect).max(0.0)
            })
            .fold(0.0, f64::max);
        (Status::from_bool(worst < 1e-2), format!("largest violation {worst:.1e}"))
    });
    rows.run("symplectic transport", || match symplectic_residuals(entry, &sys, cfg, plan.symplectic_samples, &pool) {
        Ok(rs) => {
            let worst = rs.iter().map(|r| r.as_ref().map_or(f64::INFINITY, |x| *x)).fold(0.0, f64::max);
            (Status::from_bool(worst < 1e-4), format!("largest residual {worst:.1e}"))
        }
        Err(e) => fail(e),
    });
    if n >= 2 {
        rows.run("Poisson brackets", || {
            let rs = poisson_brackets(entry, &sys, cfg, &batch, plan.poisson_points, 1e-3, &pool);
            if rs.is_empty() {
                return fail("no sample landed in the interior");
            }
            let worst = rs.iter().map(|r| r.as_ref().map_or(f64::INFINITY, |x| *x)).fold(0.0, f64::max);
            (Status::from_bool(worst < 1e-3), format!("{} points, largest |{{F_i,F_j}}| {worst:.1e}", rs.len()))
        });
    } else {
        rows.skip("Poisson brackets", "one function");
    }
    if let Some(hom) = entry.homomorphism() {
        rows.run("quotient commutation", || {
            let (mode, rs) = commutation_residuals(entry, hom, &sys, &batch);
            let worst = rs.iter().copied().fold(0.0, f64::max);
            (
                Status::from_bool(!rs.is_empty() && worst < 1e-6),
                format!("{} samples on the {}, largest residual {worst:.1e}", rs.len(), mode.as_str()),
            )
        });
    }
    Ok(rows.0)
}

pub fn all_passed(rows: &[CheckRow]) -> bool {
    rows.iter().all(|r| r.status != Status::Fail)
}

pub fn render_table(title: &str, rows: &[CheckRow]) -> String {
    let w = rows.iter().map(|r| r.name.chars().count()).max().unwrap_or(0).max(5);
    let mut s = format!("{title}\n");
    for r in rows {
        let _ = writeln!(s, "{:<w$}  {}  {:>7.2}s  {}", r.name, r.status.as_str(), r.seconds, r.detail);
    }
    s
}

//! Line-oriented run configuration: `key = value`, `#` starts a comment.

use std::path::PathBuf;
use std::str::FromStr;

use okkit_core::catalog::CatalogEntry;
use okkit_core::flow::FlowConfig;

use crate::error::{CliError, CliResult};

/// Settings shared by all commands. Every field is optional so that command
/// line flags can override what a file sets.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub input: Option<String>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub homomorphism: Option<PathBuf>,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub retraction_tol: Option<f64>,
    pub max_retraction_iters: Option<usize>,
    pub max_steps: Option<usize>,
    pub lojasiewicz_alpha: Option<f64>,
    pub max_step: Option<f64>,
    pub fd_step: Option<f64>,
    pub sample_log10_min: Option<f64>,
    pub sample_log10_max: Option<f64>,
}

fn value<T: FromStr>(line: usize, key: &str, raw: &str) -> CliResult<T> {
    raw.parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: cannot parse `{raw}` for `{key}`")))
}

fn set<T>(slot: &mut Option<T>, v: T, line: usize, key: &str) -> CliResult<()> {
    if slot.is_some() {
        return Err(CliError::Usage(format!("config line {line}: `{key}` given twice")));
    }
    *slot = Some(v);
    Ok(())
}

impl RunConfig {
    /// Parses the text of a config file. Unknown or repeated keys are errors.
    pub fn parse(text: &str) -> CliResult<RunConfig> {
        let mut c = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, val) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {n}: expected `key = value`")))?;
            let (key, val) = (key.trim(), val.trim().trim_matches('"'));
            if val.is_empty() {
                return Err(CliError::Usage(format!("config line {n}: `{key}` has no value")));
            }
            match key {
                "input" => set(&mut c.input, val.to_string(), n, key)?,
                "output" => set(&mut c.output, PathBuf::from(val), n, key)?,
                "homomorphism" => set(&mut c.homomorphism, PathBuf::from(val), n, key)?,
                "seed" => set(&mut c.seed, value(n, key, val)?, n, key)?,
                "samples" => set(&mut c.samples, value(n, key, val)?, n, key)?,
                "epsilon" => set(&mut c.epsilon, value(n, key, val)?, n, key)?,
                "delta" => set(&mut c.delta, value(n, key, val)?, n, key)?,
                "rtol" => set(&mut c.rtol, value(n, key, val)?, n, key)?,
                "atol" => set(&mut c.atol, value(n, key, val)?, n, key)?,
                "retraction_tol" => set(&mut c.retraction_tol, value(n, key, val)?, n, key)?,
                "max_retraction_iters" => set(&mut c.max_retraction_iters, value(n, key, val)?, n, key)?,
                "max_steps" => set(&mut c.max_steps, value(n, key, val)?, n, key)?,
                "lojasiewicz_alpha" => set(&mut c.lojasiewicz_alpha, value(n, key, val)?, n, key)?,
                "max_step" => set(&mut c.max_step, value(n, key, val)?, n, key)?,
                "fd_step" => set(&mut c.fd_step, value(n, key, val)?, n, key)?,
                "sample_log10_min" => set(&mut c.sample_log10_min, value(n, key, val)?, n, key)?,
                "sample_log10_max" => set(&mut c.sample_log10_max, value(n, key, val)?, n, key)?,
                _ => return Err(CliError::Usage(format!("config line {n}: unknown key `{key}`"))),
            }
        }
        Ok(c)
    }

    pub fn from_file(path: &std::path::Path) -> CliResult<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        RunConfig::parse(&text)
    }

    /// Fills every unset field of `self` from `base`.
    pub fn or(self, base: RunConfig) -> RunConfig {
        RunConfig {
            input: self.input.or(base.input),
            output: self.output.or(base.output),
            seed: self.seed.or(base.seed),
            samples: self.samples.or(base.samples),
            homomorphism: self.homomorphism.or(base.homomorphism),
            epsilon: self.epsilon.or(base.epsilon),
            delta: self.delta.or(base.delta),
            rtol: self.rtol.or(base.rtol),
            atol: self.atol.or(base.atol),
            retraction_tol: self.retraction_tol.or(base.retraction_tol),
            max_retraction_iters: self.max_retraction_iters.or(base.max_retraction_iters),
            max_steps: self.max_steps.or(base.max_steps),
            lojasiewicz_alpha: self.lojasiewicz_alpha.or(base.lojasiewicz_alpha),
            max_step: self.max_step.or(base.max_step),
            fd_step: self.fd_step.or(base.fd_step),
            sample_log10_min: self.sample_log10_min.or(base.sample_log10_min),
            sample_log10_max: self.sample_log10_max.or(base.sample_log10_max),
        }
    }

    /// Flow settings: library defaults, then the entry's own, then these.
    pub fn flow_config(&self, entry: &CatalogEntry) -> CliResult<FlowConfig> {
        let d = FlowConfig::default();
        let fd = entry.flow_defaults();
        let cfg = FlowConfig {
            epsilon: self.epsilon.unwrap_or(fd.epsilon),
            delta: self.delta.unwrap_or(fd.delta),
            rtol: self.rtol.unwrap_or(d.rtol),
            atol: self.atol.unwrap_or(d.atol),
            retraction_tol: self.retraction_tol.unwrap_or(d.retraction_tol),
            max_retraction_iters: self.max_retraction_iters.unwrap_or(d.max_retraction_iters),
            max_steps: self.max_steps.unwrap_or(d.max_steps),
            lojasiewicz_alpha: self.lojasiewicz_alpha.unwrap_or(d.lojasiewicz_alpha),
            max_step: self.max_step.unwrap_or(d.max_step),
            fd_step: self.fd_step.unwrap_or(d.fd_step),
            sample_log10_range: (
                self.sample_log10_min.unwrap_or(d.sample_log10_range.0),
                self.sample_log10_max.unwrap_or(d.sample_log10_range.1),
            ),
            seed: self.seed.unwrap_or(d.seed),
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use okkit::batch::thread_pool;
use okkit::checks::{all_passed, check_input, render_table};
use okkit::commands::{cmd_body, cmd_degenerate, cmd_flow, cmd_list, cmd_slice, read_homomorphism};
use okkit::config::RunConfig;
use okkit::{load_input, CliError, CliResult};

/// Newton–Okounkov bodies, toric degenerations and the integrable systems
/// they carry.
#[derive(Parser, Debug)]
#[command(name = "okkit", version)]
struct Cli {
    /// Config file of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for written artifacts [default: okkit-out].
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in catalog entries.
    List,
    /// Compute the Okounkov body: JSON and SVG.
    Body { input: Option<String> },
    /// Build and verify the degenerating family: JSON.
    Degenerate { input: Option<String> },
    /// Flow samples to the toric fibre: trajectories CSV, diagnostics JSON, scatter SVG.
    Flow {
        /// Built-in entry name or path to an entry JSON file.
        input: Option<String>,
        /// Starting fibre `t = ε`; defaults to the entry's value.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Stopping fibre `t = δ`, also run to `δ/2` for extrapolation.
        #[arg(long)]
        delta: Option<f64>,
        /// Number of random starting points [default: 100].
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the invariant suite and print a table.
    Check { input: Option<String> },
    /// Slice by a grading homomorphism and check the quotient diagram.
    Slice {
        /// Built-in entry name or path to an entry JSON file.
        input: Option<String>,
        /// JSON integer matrix; defaults to the entry's own homomorphism.
        #[arg(long)]
        homomorphism: Option<PathBuf>,
        /// Number of flow samples for the commutation check [default: 50].
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

const DEFAULT_FLOW_SAMPLES: usize = 100;
const DEFAULT_SLICE_SAMPLES: usize = 50;

fn report(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let file = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    let (input, flags) = match &cli.command {
        Command::List => (None, RunConfig::default()),
        Command::Body { input } | Command::Degenerate { input } | Command::Check { input } => {
            (input.clone(), RunConfig::default())
        }
        Command::Flow { input, epsilon, delta, samples, seed } => (
            input.clone(),
            RunConfig { epsilon: *epsilon, delta: *delta, samples: *samples, seed: *seed, ..Default::default() },
        ),
        Command::Slice { input, homomorphism, samples, seed } => (
            input.clone(),
            RunConfig { homomorphism: homomorphism.clone(), samples: *samples, seed: *seed, ..Default::default() },
        ),
    };
    let rc = RunConfig { input, output: cli.out.clone(), ..flags }.or(file);
    let out = rc.output.clone().unwrap_or_else(|| PathBuf::from("okkit-out"));
    if matches!(cli.command, Command::List) {
        print!("{}", cmd_list());
        return Ok(ExitCode::SUCCESS);
    }
    let input = rc
        .input
        .clone()
        .ok_or_else(|| CliError::Usage("no input: give a catalog name or entry file".into()))?;

    match cli.command {
        Command::List => unreachable!(),
        Command::Body { .. } => report(&cmd_body(&load_input(&input)?, &out)?),
        Command::Degenerate { .. } => report(&cmd_degenerate(&load_input(&input)?, &out)?),
        Command::Check { .. } => {
            let rows = check_input(&input, |e| rc.flow_config(e))?;
            print!("{}", render_table(&format!("check {input}"), &rows));
            if !all_passed(&rows) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Flow { .. } => {
            let samples = rc.samples.unwrap_or(DEFAULT_FLOW_SAMPLES);
            if samples == 0 {
                return Err(CliError::Usage("--samples must be at least 1".into()));
            }
            let entry = load_input(&input)?;
            let cfg = rc.flow_config(&entry)?;
            let r = cmd_flow(&entry, &cfg, samples, &out, &thread_pool()?)?;
            report(&r.files);
            println!("{}/{} samples succeeded", r.batch.succeeded(), r.batch.outcomes.len());
            if let Some(c) = r.coverage {
                println!("coverage of the body: {:.1}%", 100.0 * c);
            }
            if !r.succeeded() {
                eprintln!("error: fewer than 90% of the samples succeeded");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Slice { .. } => {
            let samples = rc.samples.unwrap_or(DEFAULT_SLICE_SAMPLES);
            if samples == 0 {
                return Err(CliError::Usage("--samples must be at least 1".into()));
            }
            let entry = load_input(&input)?;
            let hom = match &rc.homomorphism {
                Some(p) => read_homomorphism(p, entry.semigroup().rank())?,
                None => entry
                    .homomorphism()
                    .cloned()
                    .ok_or_else(|| CliError::Usage(format!("entry `{}` has no homomorphism; pass --homomorphism", entry.name())))?,
            };
            let cfg = rc.flow_config(&entry)?;
            let r = cmd_slice(&entry, &hom, &cfg, samples, &out, &thread_pool()?)?;
            report(&r.files);
            println!(
                "commutation on the {}: {}/{} samples, largest residual {:.2e}",
                r.mode.as_str(),
                r.residuals.len(),
                r.samples,
                r.max_residual()
            );
            if !r.succeeded() {
                eprintln!("error: commutation residual above tolerance");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

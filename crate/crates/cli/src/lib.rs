//! `drawdown-kit`: analyze, simulate and compare drawdown depletion
//! quantities of Lévy risk models from the command line.
//!
//! Exit codes: 0 success, 1 comparison failure, 2 usage or validation
//! error, 3 numerical failure.

mod analyze;
mod args;
mod compare;
mod failure;
mod output;
mod simulate;

use std::ffi::OsString;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::Parser;
use levy_core::ModelSpec;

pub use args::{AnalyzeArgs, Cli, Command, CompareArgs, ModelArgs, Quantity, RerunArgs, SimArgs, SimulateArgs};
pub use compare::CompareRow;
pub use failure::Failure;
pub use output::{Manifest, Outputs, MANIFEST};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "DRAWDOWN_KIT_THREADS";

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute_with_threads(cli.command) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("drawdown-kit: {f}");
            f.exit_code()
        }
    }
}

fn execute_with_threads(command: Command) -> Result<(), Failure> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(Failure::usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::usage(format!("thread pool: {e}")))?;
    pool.install(|| execute(command, None))
}

/// Runs `command`; `resolved` replaces the model file (reruns).
fn execute(command: Command, resolved: Option<ModelSpec>) -> Result<(), Failure> {
    let started = Instant::now();
    let unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
    let (model_args, seed) = match &command {
        Command::Analyze(a) => (&a.model, None),
        Command::Simulate(s) => (&s.model, Some(s.sim.seed)),
        Command::Compare(c) => (&c.model, Some(c.sim.seed)),
        Command::Rerun(r) => return rerun(r),
    };
    let spec = load_model(model_args, resolved)?;
    let (outputs, failed) = match &command {
        Command::Analyze(a) => (Some(analyze::run(a, &spec)?), vec![]),
        Command::Simulate(s) => (Some(simulate::run(s, &spec)?), vec![]),
        Command::Compare(c) => compare::run(c, &spec)?,
        Command::Rerun(_) => unreachable!(),
    };
    if let Some(out) = outputs {
        let manifest = Manifest {
            command: command.name().to_string(),
            config_path: model_args.model.clone(),
            model: spec,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            threads: rayon::current_num_threads(),
            started_unix_seconds: unix,
            wall_clock_seconds: started.elapsed().as_secs_f64(),
            outputs: out.files().to_vec(),
            invocation: command,
        };
        out.write_manifest(&manifest)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(failed.join("; ")))
    }
}

fn rerun(args: &RerunArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.manifest)
        .map_err(|e| Failure::io(&format!("reading {}", args.manifest.display()), e))?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("manifest {}: {e}", args.manifest.display())))?;
    let mut command = manifest.invocation;
    if let Some(dir) = &args.out {
        match &mut command {
            Command::Analyze(a) => a.out = dir.clone(),
            Command::Simulate(s) => s.out = dir.clone(),
            Command::Compare(c) => c.out = Some(dir.clone()),
            Command::Rerun(_) => return Err(Failure::usage("manifest records another rerun")),
        }
    }
    execute(command, Some(manifest.model))
}

fn load_model(args: &ModelArgs, resolved: Option<ModelSpec>) -> Result<ModelSpec, Failure> {
    let mut spec = match resolved {
        Some(s) => s,
        None => {
            let text = std::fs::read_to_string(&args.model)
                .map_err(|e| Failure::io(&format!("reading model {}", args.model.display()), e))?;
            ModelSpec::from_json(&text).map_err(|e| Failure::usage(e.to_string()))?
        }
    };
    if let Some(x) = args.x {
        spec.x = x;
    }
    let spec = spec.validate().map_err(|e| Failure::usage(e.to_string()))?;
    if !(args.a > 0.0) || !args.a.is_finite() {
        return Err(Failure::usage(format!("--a must be positive, got {}", args.a)));
    }
    Ok(spec)
}

//! `bellqfi`: model sweeps, derivative scans and the verification battery.
//!
//! Exit codes: 0 success, 1 bad arguments or config, 2 I/O failure, 3 verification
//! failure.

mod config;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use bellqfi::sweep::{self, Model};
use bellqfi::verify::{self, VerifyOptions};
use clap::{Parser, Subcommand};

use config::{Resolved, SweepArgs};

#[derive(Debug, Parser)]
#[command(name = "bellqfi", version, about = "Bell correlators and QFI bounds for model ground states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ground-state sweep over u, one CSV row per (N, u)
    Sweep(SweepArgs),
    /// dF/d|u| along a sweep with the Bell-onset point flagged (model defaults to twomode)
    Derivative(SweepArgs),
    /// Run the property battery and write a pass/fail report
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = VerifyOptions::default().seed)]
    seed: u64,
    /// Report file; stdout when absent
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Multiplies every tolerance; a negative value forces failures
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true, hide = true)]
    tolerance_scale: f64,
}

enum Failure {
    Usage(String),
    Io(String),
    Verification,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Io(_) => 2,
            Failure::Verification => 3,
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(pool.install(job))
}

/// Renders fully in memory first, so a failed run never leaves a half-written file.
fn emit(out: Option<&Path>, render: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> Result<(), Failure> {
    let mut buf = Vec::new();
    render(&mut buf).map_err(|e| Failure::Io(e.to_string()))?;
    match out {
        Some(p) => std::fs::write(p, &buf).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().lock().write_all(&buf).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn resolve(args: &SweepArgs, default_model: Model) -> Result<Resolved, Failure> {
    args.resolve(default_model).map_err(|e| Failure::Usage(e.to_string()))
}

fn report_errors(records: &[sweep::SweepRecord]) {
    let failed = records.iter().filter(|r| r.is_error()).count();
    if failed > 0 {
        eprintln!("warning: {failed} of {} points failed; see the error column", records.len());
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep(args) => {
            let r = resolve(&args, Model::Ising)?;
            let records = with_threads(r.threads, || sweep::run_sweep(&r.sweep))?.map_err(|e| Failure::Usage(e.to_string()))?;
            report_errors(&records);
            emit(r.out.as_deref(), |buf| sweep::write_sweep_csv(&records, buf))
        }
        Command::Derivative(args) => {
            let r = resolve(&args, Model::TwoMode)?;
            if r.sweep.steps < 3 {
                return Err(Failure::Usage("a derivative scan needs at least 3 grid points".into()));
            }
            if r.sweep.u_min < 0.0 && r.sweep.u_max > 0.0 {
                return Err(Failure::Usage("the u grid must not cross zero for a scan in |u|".into()));
            }
            let records = with_threads(r.threads, || sweep::run_sweep(&r.sweep))?.map_err(|e| Failure::Usage(e.to_string()))?;
            report_errors(&records);
            let derivs = sweep::derivative_records(&records).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(r.out.as_deref(), |buf| sweep::write_derivative_csv(&derivs, buf))
        }
        Command::Verify(args) => {
            let options = VerifyOptions {
                seed: args.seed,
                tolerance_scale: args.tolerance_scale,
            };
            let report = with_threads(args.threads, || verify::verify_suite(options))?
                .map_err(|e| Failure::Usage(e.to_string()))?;
            emit(args.out.as_deref(), |buf| report.write_csv(buf))?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("FAILED {}: worst {:e} > tolerance {:e}", c.name, c.worst, c.tolerance);
            }
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Io(m) => eprintln!("I/O error: {m}"),
                Failure::Verification => eprintln!("verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}

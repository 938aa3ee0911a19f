//! Batch command line: flow runs, spheroid tables, the certificate and the
//! oracle comparisons.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a run aborted or a check
//! failed. Reports go to the `out` writer, diagnostics to `err`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::flow::{monitor_csv, rescale_check, run, FlowConfig, FlowError, Termination};
use crate::geometry::{read_profile, write_profile, ProfileCurve};
use crate::spheroid::{discretization_errors, spheroid_table, table_to_csv, SpheroidParam};
use crate::sturm::certify_gap_negativity;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

/// Output directory used when the configuration names none, relative to
/// the configuration file.
pub const DEFAULT_OUTPUT_DIR: &str = "isoflow-out";

/// Relative tolerance of `oracle-check`.
pub const ORACLE_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "isoflow", version, about = "Willmore flow at fixed isoperimetric ratio")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Run a flow from a configuration file.
    Flow { config: PathBuf },
    /// Write the `a,F,energy_gap,I,W` table for evenly spaced spheroids.
    SpheroidTable { a_min: f64, a_max: f64, steps: usize, out: PathBuf },
    /// Run the exact certificate that F < 0 on (0, 1).
    Certify { out: Option<PathBuf> },
    /// Compare discrete A, V, W of a spheroid with the closed forms.
    OracleCheck { a: f64, n: usize },
    /// Check the parabolic rescaling of a configured run.
    RescaleCheck { config: PathBuf, r: f64 },
}

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            code
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match command {
        Command::Flow { config } => cmd_flow(config, out, err),
        Command::SpheroidTable { a_min, a_max, steps, out: path } => {
            cmd_spheroid_table(*a_min, *a_max, *steps, path, out)
        }
        Command::Certify { out: path } => cmd_certify(path.as_deref(), out),
        Command::OracleCheck { a, n } => cmd_oracle_check(*a, *n, out),
        Command::RescaleCheck { config, r } => cmd_rescale_check(config, *r, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

fn failed(message: impl ToString) -> Failure {
    Failure { code: EXIT_FAILED, message: message.to_string() }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    failed(format!("{}: {e}", path.display()))
}

/// Errors found before the first step are input errors; the rest abort a run.
fn flow_failure(e: FlowError) -> Failure {
    match e {
        FlowError::InvalidSigma(_)
        | FlowError::ConstantMeanCurvature
        | FlowError::RatioMismatch { .. }
        | FlowError::InvalidConfig(_)
        | FlowError::ZeroVolume => usage(e),
        other => failed(other),
    }
}

fn load(config: &Path) -> Result<(FlowConfig, ProfileCurve, PathBuf), Failure> {
    let text = std::fs::read_to_string(config).map_err(|e| usage(format!("{}: {e}", config.display())))?;
    let base = config.parent().map(Path::to_path_buf).unwrap_or_default();
    let cfg = FlowConfig::parse(&text, Some(&base)).map_err(flow_failure)?;
    let profile = cfg.initial_profile.clone().ok_or_else(|| usage("configuration has no initial_profile"))?;
    let initial = read_profile(&profile).map_err(|e| usage(format!("{}: {e}", profile.display())))?;
    Ok((cfg, initial, base))
}

fn cmd_flow(config: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let (cfg, initial, base) = load(config)?;
    let trace = run(&initial, &cfg).map_err(flow_failure)?;

    let dir = cfg.output_dir.clone().unwrap_or_else(|| base.join(DEFAULT_OUTPUT_DIR));
    std::fs::create_dir_all(&dir).map_err(|e| io_failure(&dir, e))?;
    let monitor = dir.join("monitor.csv");
    std::fs::write(&monitor, monitor_csv(&trace)).map_err(|e| io_failure(&monitor, e))?;
    let mut index = String::from("index,t,file\n");
    for (k, (t, curve)) in trace.snapshots.iter().enumerate() {
        let name = format!("snapshot_{k:05}.txt");
        write_profile(dir.join(&name), curve).map_err(failed)?;
        index.push_str(&format!("{k},{t},{name}\n"));
    }
    let index_path = dir.join("snapshots.csv");
    std::fs::write(&index_path, index).map_err(|e| io_failure(&index_path, e))?;

    for w in &trace.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let last = trace.last();
    let _ = writeln!(out, "termination: {}", trace.termination);
    let _ = writeln!(
        out,
        "final: steps={} t={} W={} I={} lambda1={} lambda2={} residual={}",
        trace.steps,
        last.t,
        last.willmore,
        last.ratio,
        3.0 * last.lambda / last.area,
        -2.0 * last.lambda / last.volume,
        last.residual
    );
    let _ = writeln!(out, "output: {}", dir.display());
    Ok(match trace.termination {
        Termination::Aborted(_) => EXIT_FAILED,
        _ => EXIT_OK,
    })
}

fn cmd_spheroid_table(a_min: f64, a_max: f64, steps: usize, path: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let rows = spheroid_table(a_min, a_max, steps).map_err(usage)?;
    std::fs::write(path, table_to_csv(&rows)).map_err(|e| io_failure(path, e))?;
    let max_f = rows.iter().map(|r| r.gap_function).fold(f64::NEG_INFINITY, f64::max);
    let _ = writeln!(out, "rows: {} written to {}", rows.len(), path.display());
    let _ = writeln!(out, "max F: {max_f}");
    Ok(if max_f < 0.0 { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_certify(path: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let cert = certify_gap_negativity();
    let report = cert.report();
    match path {
        Some(p) => {
            std::fs::write(p, &report).map_err(|e| io_failure(p, e))?;
            let _ = writeln!(out, "VERDICT: {}", if cert.verdict() { "PASS" } else { "FAIL" });
        }
        None => {
            let _ = out.write_all(report.as_bytes());
        }
    }
    Ok(if cert.verdict() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_oracle_check(a: f64, n: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = SpheroidParam::new(a).map_err(usage)?;
    let e = discretization_errors(p, n).map_err(usage)?;
    for (name, v) in [("A", e.area), ("V", e.volume), ("W", e.willmore)] {
        let _ = writeln!(out, "{name}: relative error {v:.3e} {}", if v < ORACLE_TOL { "ok" } else { "FAIL" });
    }
    Ok(if e.max() < ORACLE_TOL { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_rescale_check(config: &Path, r: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(usage(format!("rescaling factor must be positive, got {r}")));
    }
    let (cfg, initial, _) = load(config)?;
    let check = rescale_check(&initial, &cfg, r).map_err(flow_failure)?;
    let (a, b) = check.cum_lambda;
    let _ = writeln!(out, "cum_lambda: {a} -> {b} (relative gap {:.3e})", check.cum_lambda_gap);
    let _ = writeln!(out, "fresh run profile gap: {:.3e}", check.profile_gap);
    let _ = writeln!(out, "fresh run lambda gap: {:.3e}", check.lambda_gap);
    let _ = writeln!(out, "rescale r={r}: {}", if check.passes() { "PASS" } else { "FAIL" });
    Ok(if check.passes() { EXIT_OK } else { EXIT_FAILED })
}

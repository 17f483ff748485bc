//! The `crchern` command line.
//!
//! Exit codes: `0` every check passed, `1` some check failed, `2` usage
//! error (unknown target or flag, invalid parameters, unreadable or invalid
//! input files).

mod eval;
mod manifest;
mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::kahler::{FactorSpec, Scenario};

pub use eval::{describe_ring, parse_ring_spec, Evaluation};
pub use manifest::RunManifest;
pub use verify::{execute, plan, Job, Target, VerifyParams, DEFAULT_N_MAX, N_CAP, TRACTOR_N_CAP};

pub const SEED_ENV: &str = "CRCHERN_SEED";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Md,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "crchern", version, about = "Chern-class obstructions and Bochner-flat curvature checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputFlags {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Write the output to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Leave the timestamp out of the manifest.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args, Debug, Clone)]
struct BatchFlags {
    /// Sample points per batch.
    #[arg(long)]
    samples: Option<usize>,
    /// RNG seed; falls back to CRCHERN_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance on max |S|.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a named check family.
    Verify {
        /// thm-1-1, thm-1-2-formal, prop-1-3, prop-4-1, prop-1-4, tractor,
        /// bochner-products or all.
        target: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        #[command(flatten)]
        batch: BatchFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Bochner-flatness of a product of space forms, e.g. `bochner 1:+1 2:-1`.
    Bochner {
        /// Factors as DIM:HSC with HSC a nonzero rational.
        #[arg(required = true)]
        factors: Vec<String>,
        #[command(flatten)]
        batch: BatchFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Reduce an element of a cohomology ring.
    Eval {
        /// Presets joined by `x` (cp:n, surface:g, fpp, nilsquare:m) with an
        /// optional @Z, @Q or @modN suffix, or a JSON presentation.
        ring: String,
        /// Element text; a leading `-` is part of the expression.
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a scenario file of batch tensor checks.
    Scenario {
        path: PathBuf,
        #[command(flatten)]
        batch: BatchFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, CliError> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(text)) => text
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV}=`{text}` is not a valid seed"))),
        (None, None) => Ok(0),
    }
}

fn timestamp(flags: &OutputFlags) -> Option<String> {
    (!flags.no_timestamp).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
}

/// Runs `verify` for `target`.
pub fn run_verify(
    target: &str,
    params: &VerifyParams,
    command: Vec<String>,
    timestamp: Option<String>,
) -> Result<RunManifest, CliError> {
    let jobs = plan(Target::parse(target)?, params)?;
    Ok(RunManifest::new(command, params.seed, timestamp, execute(jobs)))
}

/// Parses `DIM:HSC`.
pub fn parse_factor(text: &str) -> Result<FactorSpec, CliError> {
    let (dim, hsc) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("factor `{text}` is not DIM:HSC")))?;
    let dim: u32 = dim
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("factor `{text}`: `{dim}` is not a dimension")))?;
    Ok(FactorSpec { dim, hsc: hsc.trim().to_string() })
}

/// Runs a scenario, with `--samples`, `--seed` and `--tol` overriding the
/// file.
pub fn run_scenario(
    mut scenario: Scenario,
    samples: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    command: Vec<String>,
    timestamp: Option<String>,
) -> Result<RunManifest, CliError> {
    if let Some(s) = samples {
        scenario.samples = s;
    }
    if let Some(s) = seed {
        scenario.seed = s;
    }
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage("--tol must be a positive number".into()));
        }
        scenario.tolerances.chern_tensor = t;
    }
    scenario.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let batch = scenario.to_batch().map_err(|e| CliError::Usage(e.to_string()))?;
    let seed = scenario.seed;
    let factors = batch.label();
    let job = Job::new(if scenario.expect_flat { "bochner-flat" } else { "bochner-control" }, vec![("factors", factors.into())], move || {
        batch.run().map(|o| o.report)
    });
    Ok(RunManifest::new(command, seed, timestamp, execute(vec![job])))
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read scenario `{}`: {e}", path.display())))?;
    Scenario::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(text: &str, out: Option<&Path>, summary: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write `{}`: {e}", path.display())))?;
            let _ = writeln!(stdout, "{summary}; wrote {}", path.display());
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    Ok(())
}

fn emit_manifest(m: &RunManifest, flags: &OutputFlags, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let text = match flags.format {
        Format::Md => m.to_markdown(),
        Format::Json => m.to_json(),
    };
    let summary = format!(
        "{}: {}/{} checks passed",
        if m.passed { "pass" } else { "fail" },
        m.passed_count(),
        m.reports.len()
    );
    emit(&text, flags.out.as_deref(), &summary, stdout)?;
    Ok(if m.passed { 0 } else { 1 })
}

fn dispatch(cli: Cli, command: Vec<String>, env_seed: Option<&str>, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify { target, n, d, m, n_max, batch, output } => {
            let params = VerifyParams {
                n,
                d,
                m,
                n_max,
                samples: batch.samples,
                tol: batch.tol,
                seed: resolve_seed(batch.seed, env_seed)?,
            };
            let manifest = run_verify(&target, &params, command, timestamp(&output))?;
            emit_manifest(&manifest, &output, stdout)
        }
        Command::Bochner { factors, batch, output } => {
            let scenario = Scenario {
                factors: factors.iter().map(|f| parse_factor(f)).collect::<Result<_, _>>()?,
                samples: 10,
                seed: resolve_seed(batch.seed, env_seed)?,
                tolerances: Default::default(),
                expect_flat: true,
            };
            let manifest = run_scenario(scenario, batch.samples, None, batch.tol, command, timestamp(&output))?;
            emit_manifest(&manifest, &output, stdout)
        }
        Command::Scenario { path, batch, output } => {
            let scenario = load_scenario(&path)?;
            let manifest = run_scenario(scenario, batch.samples, batch.seed, batch.tol, command, timestamp(&output))?;
            emit_manifest(&manifest, &output, stdout)
        }
        Command::Eval { ring, expr, format, out } => {
            let e = Evaluation::new(&ring, &expr)?;
            let text = match format {
                Format::Md => e.to_markdown(),
                Format::Json => e.to_json(),
            };
            emit(&text, out.as_deref(), &e.element.to_string(), stdout)?;
            Ok(0)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. `env_seed` is the value of `CRCHERN_SEED`, if set.
pub fn run_with(args: Vec<String>, env_seed: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let command = args.into_iter().skip(1).collect();
    match dispatch(cli, command, env_seed, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with(
        std::env::args().collect(),
        env_seed.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args = std::iter::once("crchern").chain(args.iter().copied()).map(String::from).collect();
        let code = run_with(args, env, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn seed_resolution() {
        assert_eq!(resolve_seed(Some(3), Some("9")), Ok(3));
        assert_eq!(resolve_seed(None, Some(" 9 ")), Ok(9));
        assert_eq!(resolve_seed(None, None), Ok(0));
        assert!(resolve_seed(None, Some("x")).is_err());
    }

    #[test]
    fn verify_prop_witness() {
        let (code, out, _) = run(&["verify", "prop-1-3", "--n", "2", "--d", "5", "--no-timestamp"], None);
        assert_eq!(code, 0);
        assert!(out.contains("-3 mod 5"));
    }

    #[test]
    fn seed_from_env_lands_in_manifest() {
        let (code, out, _) = run(&["verify", "tractor", "--n", "1", "--format", "json", "--no-timestamp"], Some("42"));
        assert_eq!(code, 0);
        let m: RunManifest = serde_json::from_str(&out).unwrap();
        assert_eq!(m.seed, 42);
        let (code, _, err) = run(&["verify", "tractor", "--n", "1"], Some("forty-two"));
        assert_eq!(code, 2);
        assert!(err.contains(SEED_ENV));
    }

    #[test]
    fn usage_errors() {
        for args in [
            &["verify", "thm-7"][..],
            &["verify", "thm-1-1", "--n", "1"],
            &["verify", "thm-1-1", "--bogus"],
            &["eval", "cp:2", "t +"],
            &["bochner", "1"],
            &["bochner", "1:0"],
            &["scenario", "/nonexistent/scenario.json"],
        ] {
            assert_eq!(run(args, None).0, 2, "{args:?}");
        }
        assert_eq!(run(&["--help"], None).0, 0);
    }

    #[test]
    fn bochner_negative_hsc_positional() {
        let (code, out, _) = run(&["bochner", "1:+1", "1:-1", "--samples", "2", "--no-timestamp"], None);
        assert_eq!(code, 0, "{out}");
        let (code, _, _) = run(&["bochner", "1:1", "1:1", "--samples", "2"], None);
        assert_eq!(code, 1);
    }
}

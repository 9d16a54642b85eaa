//! Batch front-end behind the `msewit` binary.
//!
//! All results are JSON on stdout (or `--out`); scans emit one object per
//! line. Errors are JSON objects on stderr. Exit codes: 0 success,
//! 2 validation or input error, 3 no multistart run converged.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io;
use crate::oracle;
use crate::partition::Partition;
use crate::solver::{multistart, Mode, SolverConfig};
use crate::states::werner_mix;
use crate::witness::{build_witness, witness_expectation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "MSE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "msewit",
    version,
    about = "Separability eigenvalue solver and entanglement witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Sup,
    Inf,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Sup => Mode::Sup,
            ModeArg::Inf => Mode::Inf,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StateFamily {
    Werner,
}

#[derive(Debug, clap::Args)]
struct ProblemArgs {
    /// Operator JSON file.
    #[arg(long)]
    operator: PathBuf,
    /// Partition such as "1,2:3" (1-based).
    #[arg(long)]
    partition: String,
}

#[derive(Debug, clap::Args)]
struct SolverArgs {
    /// Solver configuration JSON file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the configured number of starts.
    #[arg(long)]
    starts: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the MSE equations and report the solution set.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the witness f_sup(L)·1 − L.
    Witness {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a witness bundle on a state.
    Evaluate {
        #[arg(long)]
        witness: PathBuf,
        /// State vector or density matrix JSON file.
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a noisy state family through the witness of L.
    Scan {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum)]
        state_family: StateFamily,
        /// Target pure state JSON file.
        #[arg(long)]
        psi: PathBuf,
        /// Grid "start:end:points".
        #[arg(long)]
        p_grid: String,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force (or Bloch-grid) extremum over product states.
    Oracle {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Use the exhaustive qubit grid instead of sampling.
        #[arg(long)]
        grid: bool,
        #[arg(long, value_enum, default_value = "sup")]
        mode: ModeArg,
        #[arg(long, default_value_t = 4000)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        polish: usize,
        #[arg(long, default_value_t = 48)]
        grid_steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ErrorJson<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ScanLine {
    p: f64,
    value: f64,
    detected: bool,
}

#[derive(Serialize)]
struct OracleJson {
    method: &'static str,
    mode: Mode,
    partition: String,
    value: f64,
}

fn load_problem(args: &ProblemArgs) -> Result<(crate::HermitianOperator, Partition)> {
    let l = io::read_operator(&args.operator)?;
    let p = Partition::parse(&args.partition, l.space().num_subsystems())?;
    Ok((l, p))
}

fn load_config(args: &SolverArgs) -> Result<SolverConfig> {
    let mut cfg = match &args.config {
        Some(path) => io::read_json::<SolverConfig>(path)?,
        None => SolverConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(n) = args.starts {
        cfg.n_starts = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Parses "a:b:points" into `points` evenly spaced values from a to b.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::InvalidArgument(format!("p-grid must be start:end:points, got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|k| {
            if k == n - 1 {
                b
            } else {
                a + (b - a) * k as f64 / (n - 1) as f64
            }
        })
        .collect())
}

fn emit(out_path: Option<&Path>, stdout: &mut dyn Write, lines: &[String]) -> Result<()> {
    let mut text = lines.join("\n");
    text.push('\n');
    match out_path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Format(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::Format(format!("cannot write output: {e}"))),
    }
}

/// Runs one subcommand; returns the output destination and its lines.
fn dispatch(cmd: Command) -> Result<(Option<PathBuf>, Vec<String>)> {
    match cmd {
        Command::Solve {
            problem,
            mode,
            solver,
            out,
        } => {
            let (l, p) = load_problem(&problem)?;
            let mut cfg = load_config(&solver)?;
            if let Some(m) = mode {
                cfg.mode = m.into();
            }
            let set = multistart(&l, &p, &cfg)?;
            Ok((
                out,
                vec![io::to_json_string(&io::solution_set_to_json(&set))],
            ))
        }
        Command::Witness {
            problem,
            solver,
            out,
        } => {
            let (l, p) = load_problem(&problem)?;
            let w = build_witness(&l, &p, &load_config(&solver)?)?;
            Ok((out, vec![io::to_json_string(&io::witness_to_json(&w))]))
        }
        Command::Evaluate {
            witness,
            state,
            out,
        } => {
            let w = io::read_witness(&witness)?;
            let rho = io::read_state(&state)?;
            let verdict = witness_expectation(&w, &rho)?;
            Ok((out, vec![io::to_json_string(&verdict)]))
        }
        Command::Scan {
            problem,
            state_family: StateFamily::Werner,
            psi,
            p_grid,
            solver,
            out,
        } => {
            let (l, p) = load_problem(&problem)?;
            let psi = io::read_pure(&psi)?;
            if psi.space() != l.space() {
                return Err(Error::DimensionMismatch(format!(
                    "psi on {:?}, operator on {:?}",
                    psi.space().dims(),
                    l.space().dims()
                )));
            }
            let grid = parse_grid(&p_grid)?;
            let w = build_witness(&l, &p, &load_config(&solver)?)?;
            let lines = grid
                .iter()
                .map(|&prob| {
                    let v = witness_expectation(&w, &werner_mix(&psi, prob)?)?;
                    Ok(io::to_json_string(&ScanLine {
                        p: prob,
                        value: v.value,
                        detected: v.detected,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((out, lines))
        }
        Command::Oracle {
            problem,
            grid,
            mode,
            samples,
            polish,
            grid_steps,
            seed,
            out,
        } => {
            let (l, p) = load_problem(&problem)?;
            let mode: Mode = mode.into();
            let (method, value) = if grid {
                (
                    "grid",
                    oracle::grid_qubit_extremum(&l, &p, mode, grid_steps)?,
                )
            } else {
                (
                    "brute_force",
                    oracle::brute_force_extremum(&l, &p, mode, samples, polish, seed)?,
                )
            };
            let record = OracleJson {
                method,
                mode,
                partition: p.to_string(),
                value,
            };
            Ok((out, vec![io::to_json_string(&record)]))
        }
    }
}

fn report(stderr: &mut dyn Write, kind: &str, message: String) {
    let line = io::to_json_string(&ErrorJson {
        error: kind,
        message,
    });
    let _ = writeln!(stderr, "{line}");
}

fn thread_cap() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::InvalidArgument(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            report(stderr, "Usage", e.to_string().trim_end().to_string());
            return EXIT_INVALID;
        }
    };
    let result = thread_cap()
        .and_then(|cap| match cap {
            None => dispatch(cli.command),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
                .install(|| dispatch(cli.command)),
        })
        .and_then(|(out, lines)| emit(out.as_deref(), stdout, &lines));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            report(stderr, e.kind(), e.to_string());
            match e {
                Error::NoConvergedSolution => EXIT_NO_CONVERGENCE,
                _ => EXIT_INVALID,
            }
        }
    }
}

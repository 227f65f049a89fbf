//! Command-line front end. Exit codes: 0 success, 1 invalid configuration or
//! other error, 2 failed `verify`.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{diagnose, RRange, R_TOLERANCE};
use crate::error::{Error, Result};
use crate::policy::PolicyKind;

use super::config::ExperimentSpec;
use super::output::write_outputs;
use super::runner::run_experiment;
use super::sweep::{sweep, sweep_csv};
use super::verify::{run_verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ammab",
    version,
    about = "Asynchronous multiplayer bandit experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate every policy of a spec file and write CSV traces plus a manifest.
    Run {
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Print instance diagnostics as JSON.
    Analyze {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = RangeArg::ZeroToNuStar)]
        r_range: RangeArg,
        #[arg(long, default_value_t = R_TOLERANCE)]
        tolerance: f64,
    },
    /// Run the solver oracle and invariant self-checks.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random instances for the solver and diagnostics checks.
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        /// Cautious Greedy runs per reference instance.
        #[arg(long, default_value_t = 20)]
        reps: usize,
    },
    /// Final regret over a grid of activation probabilities and player counts.
    Sweep {
        spec: PathBuf,
        /// Output directory for sweep.csv; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated activation probabilities (default: the spec's p).
        #[arg(long = "p-values", value_delimiter = ',')]
        p_values: Vec<f64>,
        /// Comma-separated player counts (default: the spec's M).
        #[arg(long = "players", value_delimiter = ',')]
        players: Vec<usize>,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Debug, Args)]
struct Overrides {
    /// Replications per policy.
    #[arg(long)]
    reps: Option<usize>,
    /// Base seed; replication i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Log every n-th round.
    #[arg(long)]
    stride: Option<usize>,
    /// Policy to run (repeatable): cautious-greedy, ucb, etc or etc:ROUNDS.
    #[arg(long = "policy")]
    policies: Vec<PolicyKind>,
}

impl Overrides {
    fn apply(self, spec: &mut ExperimentSpec) -> Result<()> {
        if let Some(r) = self.reps {
            spec.replications = r;
        }
        if let Some(s) = self.seed {
            spec.base_seed = s;
        }
        if let Some(s) = self.stride {
            spec.record_stride = s;
        }
        if !self.policies.is_empty() {
            spec.policies = self.policies;
        }
        spec.validate()
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RangeArg {
    /// nu in {0, ..., nu*}
    ZeroToNuStar,
    /// nu in {1, ..., nu*}
    OneToNuStar,
}

impl From<RangeArg> for RRange {
    fn from(r: RangeArg) -> Self {
        match r {
            RangeArg::ZeroToNuStar => RRange::ZeroToNuStar,
            RangeArg::OneToNuStar => RRange::OneToNuStar,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(parsed.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Run {
            spec,
            out,
            overrides,
        } => {
            let mut spec = ExperimentSpec::from_path(spec)?;
            overrides.apply(&mut spec)?;
            let start = Instant::now();
            let trace = run_experiment(&spec)?;
            let files = write_outputs(&out, &spec, &trace, start.elapsed().as_secs_f64())?;
            for p in &trace.policies {
                println!("{:<16} mean final regret {:.3}", p.policy, p.final_mean());
            }
            for f in files {
                println!("wrote {}", f.display());
            }
            Ok(EXIT_OK)
        }
        Command::Analyze {
            spec,
            r_range,
            tolerance,
        } => {
            if tolerance.is_nan() || tolerance <= 0.0 {
                return Err(Error::Config("tolerance must be positive".into()));
            }
            let spec = ExperimentSpec::from_path(spec)?;
            let diag = diagnose(&spec.instance, tolerance, r_range.into())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&diag).expect("diagnostics serialize")
            );
            Ok(EXIT_OK)
        }
        Command::Verify {
            seed,
            instances,
            reps,
        } => {
            let opts = VerifyOptions {
                seed,
                solver_instances: instances,
                cg_runs: reps,
                ..Default::default()
            };
            let report = run_verify(&opts);
            for c in &report.checks {
                let tag = match (c.passed, c.required) {
                    (true, _) => "PASS",
                    (false, true) => "FAIL",
                    (false, false) => "INFO",
                };
                println!("{tag} {}: {}", c.name, c.detail);
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Sweep {
            spec,
            out,
            p_values,
            players,
            overrides,
        } => {
            let mut spec = ExperimentSpec::from_path(spec)?;
            overrides.apply(&mut spec)?;
            let ps = if p_values.is_empty() {
                vec![spec.instance.p()]
            } else {
                p_values
            };
            let ms = if players.is_empty() {
                vec![spec.instance.players()]
            } else {
                players
            };
            let (cells, skipped) = sweep(&spec, &ps, &ms)?;
            for (p, m, why) in skipped {
                eprintln!("skipped p = {p}, M = {m}: {why}");
            }
            let csv = sweep_csv(&cells);
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    let path = dir.join("sweep.csv");
                    fs::write(&path, csv)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_run_flags() {
        let c = Cli::try_parse_from([
            "ammab", "run", "x.toml", "--out", "o", "--reps", "3", "--seed", "9", "--stride", "10",
            "--policy", "ucb", "--policy", "etc:50",
        ])
        .unwrap();
        match c.command {
            Command::Run { overrides, .. } => {
                assert_eq!(overrides.reps, Some(3));
                assert_eq!(overrides.seed, Some(9));
                assert_eq!(overrides.stride, Some(10));
                assert_eq!(
                    overrides.policies,
                    vec![PolicyKind::Ucb, PolicyKind::Etc(Some(50))]
                );
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_arguments_exit_one() {
        assert_eq!(cli(["ammab", "run", "x.toml"]), EXIT_CONFIG);
        assert_eq!(
            cli(["ammab", "run", "x.toml", "--out", "o", "--policy", "greedy"]),
            EXIT_CONFIG
        );
        assert_eq!(
            cli(["ammab", "analyze", "/nonexistent/spec.toml"]),
            EXIT_CONFIG
        );
        assert_eq!(cli(["ammab", "frobnicate"]), EXIT_CONFIG);
    }
}

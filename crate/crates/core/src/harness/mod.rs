//! Experiment configuration, seeded replication, output files and the CLI.

mod cli;
mod config;
mod output;
mod runner;
mod sweep;
mod verify;

pub use cli::{cli, EXIT_CONFIG, EXIT_OK, EXIT_VERIFY_FAILED};
pub use config::{ExperimentSpec, DEFAULT_REPLICATIONS};
pub use output::{csv_file_name, trace_csv, write_outputs, CSV_HEADER};
pub use runner::{
    logged_rounds, nearest_rank, run_experiment, run_replication, simulate, PolicyTrace,
    RegretTrace,
};
pub use sweep::{sweep, sweep_csv, SkippedCell, SweepCell};
pub use verify::{
    audit_cautious_greedy, check_cautious_greedy, check_diagnostics, check_environment,
    check_regret_identity, check_reward_model, check_round_robin, check_solver_oracle,
    check_third_term, random_small_instance, run_verify, CheckResult, RunAudit, VerifyOptions,
    VerifyReport,
};

//! CSV traces and the JSON run manifest.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde::Serialize;

use crate::error::Result;

use super::config::ExperimentSpec;
use super::runner::{PolicyTrace, RegretTrace};

/// Header of every regret CSV.
pub const CSV_HEADER: &str = "t,mean_regret,p10,p90";

/// CSV body for one policy: `t,mean_regret,p10,p90`, one row per logged round.
pub fn trace_csv(trace: &PolicyTrace) -> String {
    let mut out = String::with_capacity(trace.rounds.len() * 48);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for i in 0..trace.rounds.len() {
        writeln!(
            out,
            "{},{},{},{}",
            trace.rounds[i], trace.mean[i], trace.p10[i], trace.p90[i]
        )
        .expect("writing to a String");
    }
    out
}

/// File name of a policy's CSV, e.g. `regret_cautious-greedy.csv`.
pub fn csv_file_name(policy: &str) -> String {
    format!("regret_{}.csv", policy.replace(':', "-"))
}

#[derive(Serialize)]
struct Manifest<'a> {
    spec: &'a ExperimentSpec,
    seeds: Vec<u64>,
    optimal: &'a [usize],
    files: Vec<String>,
    final_mean_regret: Vec<(String, f64)>,
    git_describe: String,
    wall_time_secs: f64,
}

fn git_describe() -> String {
    Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .map(|o| String::from_utf8_lossy(&o.stdout).trim().to_string())
        .unwrap_or_else(|| "unknown".to_string())
}

/// Writes one CSV per policy and `manifest.json` into `dir`.
pub fn write_outputs(
    dir: &Path,
    spec: &ExperimentSpec,
    trace: &RegretTrace,
    wall_time_secs: f64,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for p in &trace.policies {
        let path = dir.join(csv_file_name(&p.policy));
        fs::write(&path, trace_csv(p))?;
        written.push(path);
    }
    let manifest = Manifest {
        spec,
        seeds: (0..spec.replications).map(|i| spec.seed(i)).collect(),
        optimal: trace.optimal.counts(),
        files: written
            .iter()
            .map(|p| {
                p.file_name()
                    .unwrap_or_default()
                    .to_string_lossy()
                    .into_owned()
            })
            .collect(),
        final_mean_regret: trace
            .policies
            .iter()
            .map(|p| (p.policy.clone(), p.final_mean()))
            .collect(),
        git_describe: git_describe(),
        wall_time_secs,
    };
    let path = dir.join("manifest.json");
    fs::write(
        &path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )?;
    written.push(path);
    Ok(written)
}

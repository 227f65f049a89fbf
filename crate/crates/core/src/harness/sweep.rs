//! Grid of final regrets over activation probability and player count.

use serde::Serialize;

use crate::error::Result;
use crate::model::InstanceConfig;

use super::config::ExperimentSpec;
use super::runner::run_experiment;

/// One grid cell and policy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub p: f64,
    pub players: usize,
    pub policy: String,
    pub mean_final_regret: f64,
    pub p10: f64,
    pub p90: f64,
}

/// A grid point with no feasible assignment: `(p, M, reason)`.
pub type SkippedCell = (f64, usize, String);

/// Runs the experiment of `base` for every `(p, M)` pair. Pairs with no
/// feasible assignment are returned separately instead of failing the sweep.
pub fn sweep(
    base: &ExperimentSpec,
    ps: &[f64],
    players: &[usize],
) -> Result<(Vec<SweepCell>, Vec<SkippedCell>)> {
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for &p in ps {
        for &m in players {
            let instance = match InstanceConfig::new(
                m,
                p,
                base.instance.horizon(),
                base.instance.means().to_vec(),
            ) {
                Ok(i) => i,
                Err(e) => {
                    skipped.push((p, m, e.to_string()));
                    continue;
                }
            };
            let spec = ExperimentSpec {
                instance,
                ..base.clone()
            };
            let trace = run_experiment(&spec)?;
            for t in &trace.policies {
                let last = t.rounds.len() - 1;
                cells.push(SweepCell {
                    p,
                    players: m,
                    policy: t.policy.clone(),
                    mean_final_regret: t.mean[last],
                    p10: t.p10[last],
                    p90: t.p90[last],
                });
            }
        }
    }
    Ok((cells, skipped))
}

pub fn sweep_csv(cells: &[SweepCell]) -> String {
    let mut out = String::from("p,M,policy,mean_final_regret,p10,p90\n");
    for c in cells {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.p, c.players, c.policy, c.mean_final_regret, c.p10, c.p90
        ));
    }
    out
}

//! Seeded replications and regret aggregation.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::optimal_assignment;
use crate::environment::Environment;
use crate::error::Result;
use crate::model::{per_round_regret, Assignment, InstanceConfig};
use crate::policy::{Policy, PolicyKind};

use super::config::ExperimentSpec;

/// Rounds at which cumulative regret is logged: multiples of `stride`, plus `T`.
pub fn logged_rounds(horizon: usize, stride: usize) -> Vec<usize> {
    let mut rounds: Vec<usize> = (stride..=horizon).step_by(stride).collect();
    if rounds.last() != Some(&horizon) {
        rounds.push(horizon);
    }
    rounds
}

/// Plays `policy` for `T` rounds against a fresh environment seeded with
/// `seed` and returns the cumulative pseudo-regret at each logged round.
pub fn simulate(
    instance: &InstanceConfig,
    optimal: &Assignment,
    policy: &mut dyn Policy,
    seed: u64,
    stride: usize,
) -> Result<Vec<f64>> {
    let mut env = Environment::new(instance.clone(), seed);
    let mut cumulative = 0.0;
    let mut series = Vec::with_capacity(instance.horizon() / stride.max(1) + 1);
    let horizon = instance.horizon();
    for t in 1..=horizon {
        let played = policy.choose(t)?;
        played.validate_for(instance)?;
        let regret = per_round_regret(instance.means(), optimal, &played, instance.p())?;
        // float noise on exact ties must not make the series decrease
        cumulative += regret.max(0.0);
        let outcome = env.step(&played);
        policy.observe(t, &outcome)?;
        if t % stride == 0 || t == horizon {
            series.push(cumulative);
        }
    }
    Ok(series)
}

/// One replication of `kind` with the given seed.
pub fn run_replication(spec: &ExperimentSpec, kind: PolicyKind, seed: u64) -> Result<Vec<f64>> {
    spec.validate()?;
    let optimal = optimal_assignment(&spec.instance)?;
    let mut policy = kind.build(&spec.instance)?;
    simulate(
        &spec.instance,
        &optimal,
        policy.as_mut(),
        seed,
        spec.record_stride,
    )
}

/// Aggregated regret curves of one policy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolicyTrace {
    pub policy: String,
    pub rounds: Vec<usize>,
    pub mean: Vec<f64>,
    pub p10: Vec<f64>,
    pub p90: Vec<f64>,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    /// Final cumulative regret of each replication, in seed order.
    pub final_regret: Vec<f64>,
}

impl PolicyTrace {
    pub fn final_mean(&self) -> f64 {
        *self.mean.last().expect("non-empty trace")
    }

    /// Builds the aggregate from per-replication series sharing `rounds`.
    pub fn aggregate(policy: &str, rounds: Vec<usize>, series: &[Vec<f64>]) -> Self {
        let n = series.len();
        let len = rounds.len();
        let mut trace = PolicyTrace {
            policy: policy.to_string(),
            rounds,
            mean: Vec::with_capacity(len),
            p10: Vec::with_capacity(len),
            p90: Vec::with_capacity(len),
            min: Vec::with_capacity(len),
            max: Vec::with_capacity(len),
            final_regret: series
                .iter()
                .map(|s| *s.last().expect("non-empty series"))
                .collect(),
        };
        let mut column = Vec::with_capacity(n);
        for i in 0..len {
            column.clear();
            column.extend(series.iter().map(|s| s[i]));
            trace.mean.push(column.iter().sum::<f64>() / n as f64);
            column.sort_by(f64::total_cmp);
            trace.p10.push(nearest_rank(&column, 10.0));
            trace.p90.push(nearest_rank(&column, 90.0));
            trace.min.push(column[0]);
            trace.max.push(column[n - 1]);
        }
        trace
    }
}

/// Nearest-rank percentile of sorted data.
pub fn nearest_rank(sorted: &[f64], percent: f64) -> f64 {
    let n = sorted.len();
    let rank = ((percent / 100.0) * n as f64).ceil() as usize;
    sorted[rank.clamp(1, n) - 1]
}

/// Every policy's trace for one experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegretTrace {
    pub optimal: Assignment,
    pub policies: Vec<PolicyTrace>,
}

impl RegretTrace {
    pub fn policy(&self, name: &str) -> Option<&PolicyTrace> {
        self.policies.iter().find(|p| p.policy == name)
    }
}

/// Runs all replications of all policies; replication `i` uses seed
/// `base_seed + i` for every policy. Replications run on the rayon pool and
/// are reduced in seed order, so the output does not depend on scheduling.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RegretTrace> {
    spec.validate()?;
    let optimal = optimal_assignment(&spec.instance)?;
    let rounds = logged_rounds(spec.instance.horizon(), spec.record_stride);
    let mut policies = Vec::with_capacity(spec.policies.len());
    for kind in &spec.policies {
        let series: Vec<Vec<f64>> = (0..spec.replications)
            .into_par_iter()
            .map(|i| {
                let mut policy = kind.build(&spec.instance)?;
                simulate(
                    &spec.instance,
                    &optimal,
                    policy.as_mut(),
                    spec.seed(i),
                    spec.record_stride,
                )
            })
            .collect::<Result<_>>()?;
        policies.push(PolicyTrace::aggregate(
            &kind.to_string(),
            rounds.clone(),
            &series,
        ));
    }
    Ok(RegretTrace { optimal, policies })
}

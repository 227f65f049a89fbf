//! Plugging a user-defined policy into the replication harness.
//!
//! The policy below plays greedy on the empirical means with no confidence
//! bonus at all, which is the baseline Cautious Greedy and UCB improve on.
//!
//! cargo run --release --example custom_policy

use ammab::analysis::optimal_assignment;
use ammab::environment::RoundOutcome;
use ammab::harness::{simulate, PolicyTrace};
use ammab::model::{Assignment, InstanceConfig};
use ammab::policy::{ArmStatistics, Policy, PolicyKind};
use ammab::solver::{solve_sequential, SolveRequest};

struct PlainGreedy {
    config: InstanceConfig,
    stats: ArmStatistics,
}

impl Policy for PlainGreedy {
    fn name(&self) -> &'static str {
        "plain-greedy"
    }

    fn choose(&mut self, _t: usize) -> ammab::Result<Assignment> {
        solve_sequential(&SolveRequest::unconstrained(
            self.stats.mu_hat(),
            self.config.players(),
            self.config.p(),
        ))
    }

    fn observe(&mut self, _t: usize, outcome: &RoundOutcome) -> ammab::Result<()> {
        self.stats.record(outcome)
    }
}

fn main() {
    let inst = InstanceConfig::new(3, 0.1, 5_000, vec![0.99, 0.01]).unwrap();
    let optimal = optimal_assignment(&inst).unwrap();
    let rounds: Vec<usize> = (1..=inst.horizon()).collect();
    let reps = 20;

    let series: Vec<Vec<f64>> = (0..reps)
        .map(|seed| {
            let mut policy = PlainGreedy {
                config: inst.clone(),
                stats: ArmStatistics::new(2, inst.horizon()),
            };
            simulate(&inst, &optimal, &mut policy, seed, 1).unwrap()
        })
        .collect();
    let mine = PolicyTrace::aggregate("plain-greedy", rounds.clone(), &series);
    println!(
        "{:16} mean final regret {:8.3}  p90 {:8.3}",
        mine.policy,
        mine.final_mean(),
        mine.p90.last().unwrap()
    );

    for kind in [PolicyKind::Ucb, PolicyKind::CautiousGreedy] {
        let series: Vec<Vec<f64>> = (0..reps)
            .map(|seed| {
                simulate(
                    &inst,
                    &optimal,
                    kind.build(&inst).unwrap().as_mut(),
                    seed,
                    1,
                )
                .unwrap()
            })
            .collect();
        let t = PolicyTrace::aggregate(kind.name(), rounds.clone(), &series);
        println!(
            "{:16} mean final regret {:8.3}  p90 {:8.3}",
            t.policy,
            t.final_mean(),
            t.p90.last().unwrap()
        );
    }
}

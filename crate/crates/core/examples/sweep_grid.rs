//! Final regret over a small grid of activation probabilities and player counts.
//!
//! cargo run --release --example sweep_grid

use ammab::harness::{sweep, sweep_csv, ExperimentSpec};
use ammab::model::InstanceConfig;
use ammab::policy::PolicyKind;

fn main() {
    let base = InstanceConfig::new(3, 0.1, 2_000, vec![0.99, 0.01]).unwrap();
    let mut spec = ExperimentSpec::new(base);
    spec.replications = 10;
    spec.record_stride = 100;
    spec.policies = vec![PolicyKind::CautiousGreedy, PolicyKind::Ucb];

    let (cells, skipped) = sweep(&spec, &[0.05, 0.1, 0.3], &[2, 3, 5, 8]).unwrap();
    print!("{}", sweep_csv(&cells));
    for (p, m, why) in skipped {
        println!("# skipped p = {p}, M = {m}: {why}");
    }
}

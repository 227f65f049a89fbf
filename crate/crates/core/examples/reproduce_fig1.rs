//! Runs a spec file through every policy and writes the regret CSVs and the
//! manifest, as `ammab run` does.
//!
//! cargo run --release --example reproduce_fig1 -- crates/core/specs/fig1_right.toml results/right

use std::path::PathBuf;
use std::time::Instant;

use ammab::harness::{run_experiment, write_outputs, ExperimentSpec};

fn main() {
    let mut args = std::env::args().skip(1);
    let spec_path = args
        .next()
        .unwrap_or_else(|| "crates/core/specs/fig1_left.toml".into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "results/fig1".into()));

    let spec = ExperimentSpec::from_path(&spec_path).unwrap();
    let start = Instant::now();
    let trace = run_experiment(&spec).unwrap();
    let files = write_outputs(&out, &spec, &trace, start.elapsed().as_secs_f64()).unwrap();

    println!("optimal assignment {}", trace.optimal);
    for p in &trace.policies {
        let last = p.rounds.len() - 1;
        println!(
            "{:16} mean {:8.3}   p10 {:8.3}   p90 {:8.3}",
            p.policy, p.mean[last], p.p10[last], p.p90[last]
        );
    }
    for f in files {
        println!("wrote {}", f.display());
    }
}

//! Follows Cautious Greedy round by round and prints every change of its
//! phase state: `nu`, the active and accepted arms, and the played assignment.
//!
//! cargo run --release --example cautious_greedy_trace [seed]

use ammab::environment::Environment;
use ammab::model::InstanceConfig;
use ammab::policy::{CautiousGreedy, Policy};

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let inst = InstanceConfig::new(3, 0.1, 10_000, vec![0.99, 0.01]).unwrap();
    let mut cg = CautiousGreedy::new(inst.clone());
    let mut env = Environment::new(inst.clone(), seed);

    let mut last = String::new();
    for t in 1..=inst.horizon() {
        let played = cg.choose(t).unwrap();
        let outcome = env.step(&played);
        cg.observe(t, &outcome).unwrap();
        let s = cg.state();
        let summary = format!(
            "nu = {}, active = {:?}, accepted = {:?}, playing {played}",
            s.nu,
            s.active_arms(),
            (0..inst.arms())
                .filter(|&k| s.accepted[k])
                .collect::<Vec<_>>(),
        );
        if summary != last {
            println!("t = {t:5}: {summary}");
            last = summary;
        }
    }
    let s = cg.state();
    println!("final lower bounds {:.4?}", s.stats.lows());
    println!("final upper bounds {:.4?}", s.stats.highs());
    println!("samples per arm    {:?}", s.stats.counts());
}

//! `nu*`, the gaps, the flip radius `r` and the two sufficient conditions.
//!
//! cargo run --release --example instance_diagnostics

use ammab::analysis::{diagnose, third_term_sides, RRange, R_TOLERANCE};
use ammab::model::InstanceConfig;

fn main() {
    let instances = [
        (
            "similar arms",
            InstanceConfig::new(30, 0.01, 10_000, vec![0.8, 0.5]).unwrap(),
        ),
        (
            "worthless arm",
            InstanceConfig::new(3, 0.1, 10_000, vec![0.99, 0.01]).unwrap(),
        ),
        (
            "near tie",
            InstanceConfig::new(5, 0.1, 10_000, vec![0.5, 0.51]).unwrap(),
        ),
        (
            "four arms",
            InstanceConfig::new(40, 0.05, 10_000, vec![1.0, 0.9, 0.6, 0.5]).unwrap(),
        ),
    ];
    for (label, inst) in instances {
        let d = diagnose(&inst, R_TOLERANCE, RRange::ZeroToNuStar).unwrap();
        println!(
            "{label}: mu = {:?}, M = {}, p = {}",
            inst.means(),
            inst.players(),
            inst.p()
        );
        println!("{}", serde_json::to_string_pretty(&d).unwrap());
        if d.nu_star > 0 {
            let (lhs, rhs) = third_term_sides(&inst).unwrap();
            println!("third-term sides: {lhs:.5} vs {rhs:.5}");
        }
        println!();
    }
}

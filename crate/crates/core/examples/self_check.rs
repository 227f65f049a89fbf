//! The `verify` suite: solver oracle, reward model, simulator calibration,
//! round-robin fairness and Cautious Greedy invariants.
//!
//! cargo run --release --example self_check

use ammab::harness::{run_verify, VerifyOptions};

fn main() {
    let report = run_verify(&VerifyOptions::default());
    for c in &report.checks {
        let tag = if c.passed {
            "ok  "
        } else if c.required {
            "FAIL"
        } else {
            "note"
        };
        println!("{tag} {:28} {}", c.name, c.detail);
    }
    std::process::exit(if report.passed() { 0 } else { 2 });
}

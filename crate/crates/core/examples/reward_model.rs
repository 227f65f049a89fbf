//! Expected single-occupancy reward `g(m)` and the per-arm player cap.
//!
//! cargo run --example reward_model

use ammab::model::{cap, expected_value, g, marginal_gain, Assignment};

fn main() {
    for p in [0.01, 0.05, 0.1, 0.3, 0.5] {
        println!("p = {p}: cap = {}", cap(p));
    }

    let p = 0.1;
    println!("\n m      g(m)   g(m+1)-g(m)");
    for m in 0..=cap(p) {
        println!("{m:2}  {:.5}  {:+.5}", g(m, p), marginal_gain(m, p));
    }

    let means = [0.99, 0.01];
    for counts in [vec![3, 0], vec![2, 1], vec![1, 2]] {
        let a = Assignment::new(counts);
        println!(
            "value of {a} on mu = {means:?}: {:.5}",
            expected_value(&means, &a, p).unwrap()
        );
    }
}

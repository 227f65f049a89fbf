//! Empirical single-occupancy frequency of the simulator against `g(m)`.
//!
//! cargo run --release --example environment_calibration [draws]

use ammab::environment::step;
use ammab::model::{cap, g, Assignment};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let draws: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200_000);
    let p = 0.1;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    println!(" m   empirical   g(m)      z");
    for m in 1..=cap(p) {
        let a = Assignment::new(vec![m]);
        let hits = (0..draws)
            .filter(|_| step(&a, &[0.5], p, &mut rng).eta[0])
            .count();
        let rate = hits as f64 / draws as f64;
        let se = (g(m, p) * (1.0 - g(m, p)) / draws as f64).sqrt();
        println!(
            "{m:2}   {rate:.5}   {:.5}  {:+.2}",
            g(m, p),
            (rate - g(m, p)) / se
        );
    }
}

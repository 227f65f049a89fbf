//! Stochastic simulator for one round of play.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::model::{Assignment, InstanceConfig};

/// What the central entity observes after one round.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundOutcome {
    /// `eta[k]` is true iff exactly one player on arm `k` was active.
    pub eta: Vec<bool>,
    /// Sampled reward of arm `k`, present only when `eta[k]`.
    pub rewards: Vec<Option<f64>>,
    /// Number of active players per arm (diagnostic only).
    pub active_counts: Vec<usize>,
}

impl RoundOutcome {
    pub fn arms(&self) -> usize {
        self.eta.len()
    }
}

/// Simulates one round: each arm's active count is Binomial(`counts_k`, `p`),
/// and a Bernoulli(`mu_k`) reward is drawn when exactly one player is active.
///
/// Arms consume `rng` in index order, so a seeded stream reproduces the round.
pub fn step<R: Rng + ?Sized>(
    assignment: &Assignment,
    means: &[f64],
    p: f64,
    rng: &mut R,
) -> RoundOutcome {
    let arms = assignment.arms();
    let mut eta = Vec::with_capacity(arms);
    let mut rewards = Vec::with_capacity(arms);
    let mut active_counts = Vec::with_capacity(arms);
    for (k, &m) in assignment.counts().iter().enumerate() {
        let active = if m == 0 {
            0
        } else {
            Binomial::new(m as u64, p).expect("p in (0, 1)").sample(rng) as usize
        };
        let single = active == 1;
        eta.push(single);
        rewards.push(single.then(|| if rng.random_bool(means[k]) { 1.0 } else { 0.0 }));
        active_counts.push(active);
    }
    RoundOutcome {
        eta,
        rewards,
        active_counts,
    }
}

/// An instance bound to its own seeded random stream.
#[derive(Clone, Debug)]
pub struct Environment {
    config: InstanceConfig,
    rng: ChaCha8Rng,
}

impl Environment {
    pub fn new(config: InstanceConfig, seed: u64) -> Self {
        Self {
            config,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn config(&self) -> &InstanceConfig {
        &self.config
    }

    pub fn step(&mut self, assignment: &Assignment) -> RoundOutcome {
        step(
            assignment,
            self.config.means(),
            self.config.p(),
            &mut self.rng,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::g;

    #[test]
    fn empty_arm_never_pays() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = Assignment::new(vec![0, 3]);
        for _ in 0..1000 {
            let out = step(&a, &[1.0, 0.5], 0.3, &mut rng);
            assert!(!out.eta[0]);
            assert_eq!(out.rewards[0], None);
            assert_eq!(out.active_counts[0], 0);
        }
    }

    #[test]
    fn degenerate_reward() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = Assignment::new(vec![1]);
        for _ in 0..1000 {
            let out = step(&a, &[1.0], 0.5, &mut rng);
            if out.eta[0] {
                assert_eq!(out.rewards[0], Some(1.0));
            }
        }
    }

    #[test]
    fn outcome_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Assignment::new(vec![2, 5, 0, 1]);
        for _ in 0..2000 {
            let out = step(&a, &[0.3, 0.6, 0.9, 0.5], 0.2, &mut rng);
            for k in 0..4 {
                assert_eq!(out.eta[k], out.active_counts[k] == 1);
                assert_eq!(out.rewards[k].is_some(), out.eta[k]);
                assert!(out.active_counts[k] <= a[k]);
                if let Some(x) = out.rewards[k] {
                    assert!(x == 0.0 || x == 1.0);
                }
            }
        }
    }

    #[test]
    fn two_players_single_occupancy_rate() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Assignment::new(vec![2]);
        let n = 1_000_000;
        let hits = (0..n)
            .filter(|_| step(&a, &[0.5], 0.1, &mut rng).eta[0])
            .count();
        let rate = hits as f64 / n as f64;
        assert!((rate - g(2, 0.1)).abs() < 0.002, "rate {rate}");
    }

    #[test]
    fn seeded_environment_is_reproducible() {
        let cfg = InstanceConfig::new(3, 0.1, 10, vec![0.99, 0.01]).unwrap();
        let a = Assignment::new(vec![2, 1]);
        let mut e1 = Environment::new(cfg.clone(), 9);
        let mut e2 = Environment::new(cfg, 9);
        for _ in 0..100 {
            assert_eq!(e1.step(&a), e2.step(&a));
        }
    }
}

//! Empirical means and Hoeffding confidence bounds.

use serde::Serialize;

use crate::environment::RoundOutcome;
use crate::error::{Error, Result};

/// Counts and sums for one arm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ArmStats {
    /// Rounds in which exactly one player was active on the arm.
    pub count: u64,
    pub reward_sum: f64,
}

impl ArmStats {
    /// Empirical mean, `1` before the first observation.
    pub fn mu_hat(&self) -> f64 {
        if self.count == 0 {
            1.0
        } else {
            self.reward_sum / self.count as f64
        }
    }

    /// Confidence radius `sqrt(log_term / (2 count))`, infinite with no samples.
    pub fn zeta(&self, log_term: f64) -> f64 {
        if self.count == 0 {
            f64::INFINITY
        } else {
            (log_term / (2.0 * self.count as f64)).sqrt()
        }
    }

    pub fn low(&self, log_term: f64) -> f64 {
        (self.mu_hat() - self.zeta(log_term)).max(0.0)
    }

    pub fn high(&self, log_term: f64) -> f64 {
        (self.mu_hat() + self.zeta(log_term)).min(1.0)
    }
}

/// Per-arm statistics sharing one confidence level `log(2 T^2 K^2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArmStatistics {
    arms: Vec<ArmStats>,
    log_term: f64,
}

impl ArmStatistics {
    pub fn new(arms: usize, horizon: usize) -> Self {
        let (t, k) = (horizon as f64, arms as f64);
        Self {
            arms: vec![ArmStats::default(); arms],
            log_term: (2.0 * t * t * k * k).ln(),
        }
    }

    pub fn log_term(&self) -> f64 {
        self.log_term
    }

    pub fn arm(&self, k: usize) -> &ArmStats {
        &self.arms[k]
    }

    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    /// Adds the observed rewards of one round.
    pub fn record(&mut self, outcome: &RoundOutcome) -> Result<()> {
        if outcome.arms() != self.arms.len() {
            return Err(Error::DimensionMismatch {
                expected: self.arms.len(),
                got: outcome.arms(),
            });
        }
        for (k, (stats, (&eta, reward))) in self
            .arms
            .iter_mut()
            .zip(outcome.eta.iter().zip(&outcome.rewards))
            .enumerate()
        {
            match (eta, reward) {
                (true, Some(x)) => {
                    stats.count += 1;
                    stats.reward_sum += x;
                }
                (false, None) => {}
                _ => {
                    return Err(Error::OutcomeMismatch(format!(
                        "arm {k}: reward presence disagrees with eta"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn counts(&self) -> Vec<u64> {
        self.arms.iter().map(|a| a.count).collect()
    }

    pub fn mu_hat(&self) -> Vec<f64> {
        self.arms.iter().map(ArmStats::mu_hat).collect()
    }

    pub fn zeta(&self) -> Vec<f64> {
        self.arms.iter().map(|a| a.zeta(self.log_term)).collect()
    }

    pub fn lows(&self) -> Vec<f64> {
        self.arms.iter().map(|a| a.low(self.log_term)).collect()
    }

    pub fn highs(&self) -> Vec<f64> {
        self.arms.iter().map(|a| a.high(self.log_term)).collect()
    }

    /// Whether every sampled arm satisfies `|mu_hat - mu| <= zeta`.
    pub fn within_radius(&self, means: &[f64]) -> bool {
        self.arms
            .iter()
            .zip(means)
            .all(|(a, &mu)| a.count == 0 || (a.mu_hat() - mu).abs() <= a.zeta(self.log_term))
    }
}

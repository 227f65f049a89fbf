use crate::environment::RoundOutcome;
use crate::error::Result;
use crate::model::{Assignment, InstanceConfig};
use crate::solver::{solve_sequential, SolveRequest};

use super::{check_outcome, ArmStatistics, Policy};

/// Centralized UCB: plays the unconstrained maximiser of the upper bounds.
#[derive(Clone, Debug)]
pub struct Ucb {
    config: InstanceConfig,
    stats: ArmStatistics,
    last: Option<Assignment>,
}

impl Ucb {
    pub fn new(config: InstanceConfig) -> Self {
        let stats = ArmStatistics::new(config.arms(), config.horizon());
        Self {
            config,
            stats,
            last: None,
        }
    }

    pub fn stats(&self) -> &ArmStatistics {
        &self.stats
    }
}

/// Unconstrained sequential solve on `highs`.
pub fn ucb_choose(highs: Vec<f64>, players: usize, p: f64) -> Result<Assignment> {
    solve_sequential(&SolveRequest::unconstrained(highs, players, p))
}

impl Policy for Ucb {
    fn name(&self) -> &'static str {
        "ucb"
    }

    fn choose(&mut self, _t: usize) -> Result<Assignment> {
        let a = ucb_choose(self.stats.highs(), self.config.players(), self.config.p())?;
        self.last = Some(a.clone());
        Ok(a)
    }

    fn observe(&mut self, _t: usize, outcome: &RoundOutcome) -> Result<()> {
        check_outcome(self.last.as_ref(), outcome)?;
        self.stats.record(outcome)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose_examples() {
        let cfg = InstanceConfig::new(3, 0.1, 100, vec![0.99, 0.01]).unwrap();
        let mut ucb = Ucb::new(cfg);
        assert_eq!(ucb.choose(1).unwrap().counts(), &[2, 1]);
        assert_eq!(
            ucb_choose(vec![1.0, 0.01], 3, 0.1).unwrap().counts(),
            &[3, 0]
        );
        assert_eq!(
            ucb_choose(vec![0.37, 0.37], 3, 0.1).unwrap().counts(),
            &[2, 1]
        );
    }
}

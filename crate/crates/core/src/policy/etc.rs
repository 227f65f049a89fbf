use crate::environment::RoundOutcome;
use crate::error::{Error, Result};
use crate::model::{Assignment, ConstraintSpec, InstanceConfig};
use crate::solver::{solve_forced_support, solve_sequential, SolveRequest};

use super::{check_outcome, ArmStatistics, Policy};

/// `ceil(T^(2/3))`.
pub fn default_explore_rounds(horizon: usize) -> usize {
    ((horizon as f64).powf(2.0 / 3.0) - 1e-9).ceil() as usize
}

/// Uniform exploration followed by a one-shot commitment.
///
/// Rounds `1..=explore_rounds` play the balanced assignment (every arm covered,
/// remaining players spread greedily on equal weights). After the last
/// exploration round the policy commits to the sequential solution on the
/// empirical means and never revisits it.
#[derive(Clone, Debug)]
pub struct ExploreThenCommit {
    config: InstanceConfig,
    explore_rounds: usize,
    balanced: Assignment,
    committed: Option<Assignment>,
    stats: ArmStatistics,
    last: Option<Assignment>,
}

impl ExploreThenCommit {
    pub fn new(config: InstanceConfig, explore_rounds: usize) -> Result<Self> {
        if explore_rounds == 0 || explore_rounds > config.horizon() {
            return Err(Error::InvalidPolicy(format!(
                "explore_rounds = {explore_rounds} must lie in [1, {}]",
                config.horizon()
            )));
        }
        let balanced = solve_forced_support(&SolveRequest::new(
            vec![1.0; config.arms()],
            config.players(),
            config.p(),
            ConstraintSpec::forced(0..config.arms()),
        ))?;
        let stats = ArmStatistics::new(config.arms(), config.horizon());
        Ok(Self {
            config,
            explore_rounds,
            balanced,
            committed: None,
            stats,
            last: None,
        })
    }

    pub fn explore_rounds(&self) -> usize {
        self.explore_rounds
    }

    pub fn committed(&self) -> Option<&Assignment> {
        self.committed.as_ref()
    }
}

impl Policy for ExploreThenCommit {
    fn name(&self) -> &'static str {
        "etc"
    }

    fn choose(&mut self, t: usize) -> Result<Assignment> {
        let a = match &self.committed {
            Some(c) if t > self.explore_rounds => c.clone(),
            _ => self.balanced.clone(),
        };
        self.last = Some(a.clone());
        Ok(a)
    }

    fn observe(&mut self, t: usize, outcome: &RoundOutcome) -> Result<()> {
        check_outcome(self.last.as_ref(), outcome)?;
        if self.committed.is_some() {
            return Ok(());
        }
        self.stats.record(outcome)?;
        if t >= self.explore_rounds {
            self.committed = Some(solve_sequential(&SolveRequest::unconstrained(
                self.stats.mu_hat(),
                self.config.players(),
                self.config.p(),
            ))?);
        }
        Ok(())
    }
}

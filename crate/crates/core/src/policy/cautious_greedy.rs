//! Cautious Greedy.
//!
//! Plays the greedy assignment on the empirical means while forcing at least
//! one player on every active arm that is not under pressure. At the end of
//! each round-robin phase it raises `nu` (the number of arms believed to
//! deserve no player) while the lower bounds certify a better unconstrained
//! value than the upper bounds allow with only `nu` empty arms, then updates
//! the accepted and active sets from order statistics of the bounds.

use serde::Serialize;

use crate::environment::RoundOutcome;
use crate::error::Result;
use crate::model::{Assignment, ConstraintSpec, InstanceConfig};
use crate::solver::{solve_forced_support, solve_max_zero_arms, solve_sequential, SolveRequest};

use super::round_robin::{round_robin_init, round_robin_step};
use super::{check_outcome, ArmStatistics, Policy};

/// Internal state, exposed read-only for diagnostics and invariant checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CautiousGreedyState {
    /// Lower estimate of the number of arms to leave empty. Never decreases.
    pub nu: usize,
    /// `active[k]` is false once arm `k` has been removed.
    pub active: Vec<bool>,
    pub accepted: Vec<bool>,
    /// Arms exempt from the at-least-one-player constraint, in rotation order.
    pub pressure: Vec<usize>,
    /// Round-robin iteration counter (1-based).
    pub rr_t: usize,
    /// Rounds elapsed in the current phase.
    pub n: usize,
    pub stats: ArmStatistics,
}

impl CautiousGreedyState {
    pub fn new(config: &InstanceConfig) -> Self {
        let k = config.arms();
        Self {
            nu: 0,
            active: vec![true; k],
            accepted: vec![false; k],
            pressure: Vec::new(),
            rr_t: 1,
            n: 0,
            stats: ArmStatistics::new(k, config.horizon()),
        }
    }

    pub fn active_arms(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&k| self.active[k]).collect()
    }

    pub fn removed_count(&self) -> usize {
        self.active.iter().filter(|&&a| !a).count()
    }

    /// `Y`: active arms not yet accepted, ascending.
    pub fn rotation_set(&self) -> Vec<usize> {
        (0..self.active.len())
            .filter(|&k| self.active[k] && !self.accepted[k])
            .collect()
    }

    /// Arms that must receive a player: active and not under pressure.
    pub fn forced_set(&self) -> Vec<usize> {
        (0..self.active.len())
            .filter(|&k| self.active[k] && !self.pressure.contains(&k))
            .collect()
    }
}

/// `index`-th smallest element (1-based) of `values`.
fn order_statistic(values: &[f64], index: usize) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[index - 1]
}

#[derive(Clone, Debug)]
pub struct CautiousGreedy {
    config: InstanceConfig,
    state: CautiousGreedyState,
    last: Option<Assignment>,
}

impl CautiousGreedy {
    pub fn new(config: InstanceConfig) -> Self {
        let state = CautiousGreedyState::new(&config);
        Self {
            config,
            state,
            last: None,
        }
    }

    pub fn state(&self) -> &CautiousGreedyState {
        &self.state
    }

    /// Forced-support greedy on the empirical means; removed arms carry
    /// weight 0 and only absorb players the active arms cannot hold.
    pub fn assignment(&self) -> Result<Assignment> {
        let values = self
            .state
            .stats
            .mu_hat()
            .into_iter()
            .zip(&self.state.active)
            .map(|(mu, &active)| if active { mu } else { 0.0 })
            .collect();
        solve_forced_support(&SolveRequest::new(
            values,
            self.config.players(),
            self.config.p(),
            ConstraintSpec::ForcedSupport(self.state.forced_set()),
        ))
    }

    /// Whether the lower bounds guarantee more than any assignment with at
    /// most `nu` empty arms can reach under the upper bounds.
    pub fn should_raise_nu(&self, lows: &[f64], highs: &[f64], nu: usize) -> Result<bool> {
        let (m, p) = (self.config.players(), self.config.p());
        let low_req = SolveRequest::unconstrained(lows.to_vec(), m, p);
        let low_value = low_req.value(&solve_sequential(&low_req)?);
        let high_req = SolveRequest::new(highs.to_vec(), m, p, ConstraintSpec::MaxZeroArms(nu));
        let high_value = high_req.value(&solve_max_zero_arms(&high_req)?);
        Ok(low_value > high_value)
    }

    fn phase_update(&mut self) -> Result<()> {
        let k = self.config.arms();
        let lows = self.state.stats.lows();
        let highs = self.state.stats.highs();

        while self.state.nu < k && self.should_raise_nu(&lows, &highs, self.state.nu)? {
            self.state.nu += 1;
        }
        let nu = self.state.nu;

        if nu < k {
            let remove_below = order_statistic(&lows, nu + 1);
            for (active, &high) in self.state.active.iter_mut().zip(&highs) {
                *active &= high >= remove_below;
            }
        }
        let accept_above = (nu > 0).then(|| order_statistic(&highs, nu));
        for ((accepted, &active), &low) in self
            .state
            .accepted
            .iter_mut()
            .zip(&self.state.active)
            .zip(&lows)
        {
            *accepted = active && accept_above.is_some_and(|h| h < low);
        }

        let y = self.state.rotation_set();
        let size = nu.saturating_sub(self.state.removed_count());
        let (pressure, rr_t) = round_robin_init(&y, size);
        self.state.pressure = pressure;
        self.state.rr_t = rr_t;
        Ok(())
    }
}

impl Policy for CautiousGreedy {
    fn name(&self) -> &'static str {
        "cautious-greedy"
    }

    fn choose(&mut self, _t: usize) -> Result<Assignment> {
        let a = self.assignment()?;
        self.last = Some(a.clone());
        Ok(a)
    }

    fn observe(&mut self, _t: usize, outcome: &RoundOutcome) -> Result<()> {
        check_outcome(self.last.as_ref(), outcome)?;
        self.state.stats.record(outcome)?;
        let y = self.state.rotation_set();
        round_robin_step(&mut self.state.pressure, &y, &mut self.state.rr_t)?;
        self.state.n += 1;
        if self.state.n >= y.len() {
            self.state.n = 0;
            self.phase_update()?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::Environment;

    fn right() -> InstanceConfig {
        InstanceConfig::new(3, 0.1, 10_000, vec![0.99, 0.01]).unwrap()
    }

    fn left() -> InstanceConfig {
        InstanceConfig::new(30, 0.01, 10_000, vec![0.8, 0.5]).unwrap()
    }

    #[test]
    fn init_state() {
        let mut cg = CautiousGreedy::new(right());
        let s = cg.state();
        assert_eq!(s.nu, 0);
        assert!(s.active.iter().all(|&a| a));
        assert!(s.accepted.iter().all(|&a| !a));
        assert!(s.pressure.is_empty());
        assert_eq!(s.n, 0);
        assert_eq!(cg.choose(1).unwrap().counts(), &[2, 1]);
    }

    #[test]
    fn first_assignment_covers_every_arm() {
        let cfg = InstanceConfig::new(7, 0.1, 100, vec![0.2, 0.9, 0.5, 0.4]).unwrap();
        let a = CautiousGreedy::new(cfg).choose(1).unwrap();
        assert!(a.counts().iter().all(|&m| m >= 1));
    }

    #[test]
    fn while_loop_on_exact_bounds() {
        let cg = CautiousGreedy::new(right());
        let mu = [0.99, 0.01];
        assert!(cg.should_raise_nu(&mu, &mu, 0).unwrap());
        assert!(!cg.should_raise_nu(&mu, &mu, 1).unwrap());
        let cg = CautiousGreedy::new(left());
        let mu = [0.8, 0.5];
        assert!(!cg.should_raise_nu(&mu, &mu, 0).unwrap());
    }

    #[test]
    fn pressured_arm_may_be_emptied() {
        let mut cg = CautiousGreedy::new(right());
        for i in 0..100 {
            cg.state
                .stats
                .record(&RoundOutcome {
                    eta: vec![true, true],
                    rewards: vec![
                        Some(if i == 0 { 0.0 } else { 1.0 }),
                        Some(if i == 0 { 1.0 } else { 0.0 }),
                    ],
                    active_counts: vec![1, 1],
                })
                .unwrap();
        }
        assert_eq!(cg.state.stats.mu_hat(), vec![0.99, 0.01]);
        cg.state.nu = 1;
        cg.state.pressure = vec![1];
        assert_eq!(cg.assignment().unwrap().counts(), &[3, 0]);
        cg.state.pressure.clear();
        assert_eq!(cg.assignment().unwrap().counts(), &[2, 1]);
    }

    #[test]
    fn unsampled_arm_neither_accepted_nor_removed() {
        let mut cg =
            CautiousGreedy::new(InstanceConfig::new(4, 0.1, 1000, vec![0.9, 0.5, 0.1]).unwrap());
        for _ in 0..500 {
            cg.state
                .stats
                .record(&RoundOutcome {
                    eta: vec![true, true, false],
                    rewards: vec![Some(1.0), Some(0.0), None],
                    active_counts: vec![1, 1, 0],
                })
                .unwrap();
        }
        cg.state.nu = 1;
        cg.phase_update().unwrap();
        assert!(cg.state.active[2]);
        assert!(!cg.state.accepted[2]);
    }

    #[test]
    fn right_instance_eventually_empties_worst_arm() {
        let cfg = right();
        let mut cg = CautiousGreedy::new(cfg.clone());
        let mut env = Environment::new(cfg, 5);
        let mut prev_nu = 0;
        let mut prev_active = vec![true; 2];
        for t in 1..=10_000 {
            let a = cg.choose(t).unwrap();
            let out = env.step(&a);
            cg.observe(t, &out).unwrap();
            let s = cg.state();
            assert!(s.nu >= prev_nu);
            for k in 0..2 {
                assert!(prev_active[k] || !s.active[k], "arm {k} re-entered");
                assert!(!s.accepted[k] || s.active[k]);
            }
            prev_nu = s.nu;
            prev_active = s.active.clone();
        }
        assert_eq!(cg.state().nu, 1);
        assert_eq!(cg.choose(10_001).unwrap().counts(), &[3, 0]);
    }
}

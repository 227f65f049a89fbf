//! Problem instances, assignments and the single-occupancy reward model.
//!
//! Each of the `M` players assigned to an arm is active independently with
//! probability `p`; an arm pays out only when exactly one of its players is
//! active. The expected payout of an arm holding `m` players is therefore
//! `mu_k * g(m)` with `g(m) = m p (1 - p)^(m - 1)`.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Probability that exactly one of `m` independent Bernoulli(`p`) players is active.
pub fn g(m: usize, p: f64) -> f64 {
    if m == 0 {
        return 0.0;
    }
    m as f64 * p * (1.0 - p).powi(m as i32 - 1)
}

/// `g(m + 1) - g(m)`, the gain from adding one player to an arm holding `m`.
pub fn marginal_gain(m: usize, p: f64) -> f64 {
    g(m + 1, p) - g(m, p)
}

/// Maximum number of players one arm may hold: `floor(-1 / ln(1 - p))`.
pub fn cap(p: f64) -> usize {
    (-1.0 / (-p).ln_1p()).floor() as usize
}

fn check_probability(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInstance(format!(
            "activation probability {p} not in (0, 1)"
        )))
    }
}

/// A fully specified problem instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceConfig {
    arms: usize,
    players: usize,
    p: f64,
    horizon: usize,
    means: Vec<f64>,
}

impl InstanceConfig {
    /// Validates and builds an instance.
    ///
    /// Requires `K >= 1`, `0 < p < 1`, `T >= 1`, means in `[0, 1]`, and
    /// `K <= M <= K * cap(p)` so that the feasible set is non-empty.
    pub fn new(players: usize, p: f64, horizon: usize, means: Vec<f64>) -> Result<Self> {
        let arms = means.len();
        if arms == 0 {
            return Err(Error::InvalidInstance(
                "at least one arm is required".into(),
            ));
        }
        check_probability(p)?;
        if horizon == 0 {
            return Err(Error::InvalidInstance("horizon must be at least 1".into()));
        }
        if let Some((k, mu)) = means
            .iter()
            .enumerate()
            .find(|(_, mu)| !(0.0..=1.0).contains(*mu))
        {
            return Err(Error::InvalidInstance(format!(
                "mean of arm {k} is {mu}, outside [0, 1]"
            )));
        }
        if players < arms {
            return Err(Error::InvalidInstance(format!(
                "need at least as many players as arms (M = {players}, K = {arms})"
            )));
        }
        let per_arm = cap(p);
        if players > arms * per_arm {
            return Err(Error::InvalidInstance(format!(
                "M = {players} exceeds K * cap(p) = {arms} * {per_arm}; no feasible assignment"
            )));
        }
        Ok(Self {
            arms,
            players,
            p,
            horizon,
            means,
        })
    }

    /// Number of arms `K`.
    pub fn arms(&self) -> usize {
        self.arms
    }

    /// Number of players `M`.
    pub fn players(&self) -> usize {
        self.players
    }

    /// Activation probability `p`.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Horizon `T`.
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// True mean rewards.
    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn cap(&self) -> usize {
        cap(self.p)
    }

    /// Same instance with a different horizon.
    pub fn with_horizon(&self, horizon: usize) -> Result<Self> {
        Self::new(self.players, self.p, horizon, self.means.clone())
    }
}

/// Player counts per arm.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    pub fn zeros(arms: usize) -> Self {
        Self(vec![0; arms])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn arms(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Arms holding at least one player.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| self.0[k] > 0).collect()
    }

    /// Number of arms holding no player.
    pub fn zero_arms(&self) -> usize {
        self.0.iter().filter(|&&m| m == 0).count()
    }

    pub(crate) fn add_player(&mut self, arm: usize) {
        self.0[arm] += 1;
    }

    /// Checks `sum = players` and `counts_k <= cap` for every arm.
    pub fn validate(&self, arms: usize, players: usize, per_arm_cap: usize) -> Result<()> {
        if self.0.len() != arms {
            return Err(Error::DimensionMismatch {
                expected: arms,
                got: self.0.len(),
            });
        }
        if self.total() != players {
            return Err(Error::InvalidAssignment(format!(
                "{self} places {} players, expected {players}",
                self.total()
            )));
        }
        if let Some(k) = self.0.iter().position(|&m| m > per_arm_cap) {
            return Err(Error::InvalidAssignment(format!(
                "arm {k} holds {} players, above cap {per_arm_cap}",
                self.0[k]
            )));
        }
        Ok(())
    }

    /// Validates against an instance.
    pub fn validate_for(&self, config: &InstanceConfig) -> Result<()> {
        self.validate(config.arms(), config.players(), config.cap())
    }

    /// `g` applied coordinate-wise.
    pub fn g_vector(&self, p: f64) -> Vec<f64> {
        self.0.iter().map(|&m| g(m, p)).collect()
    }
}

impl Index<usize> for Assignment {
    type Output = usize;

    fn index(&self, arm: usize) -> &usize {
        &self.0[arm]
    }
}

impl From<Vec<usize>> for Assignment {
    fn from(counts: Vec<usize>) -> Self {
        Self(counts)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Restriction applied on top of the feasible set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstraintSpec {
    /// Every feasible assignment.
    Unconstrained,
    /// Every listed arm must receive at least one player.
    ForcedSupport(Vec<usize>),
    /// At most `nu` arms may receive zero players.
    MaxZeroArms(usize),
}

impl ConstraintSpec {
    /// Forced support with the arm list sorted and deduplicated.
    pub fn forced(arms: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = arms.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::ForcedSupport(v)
    }

    /// Whether `assignment` lies in the constrained set (ignores budget and cap).
    pub fn admits(&self, assignment: &Assignment) -> bool {
        match self {
            Self::Unconstrained => true,
            Self::ForcedSupport(arms) => arms.iter().all(|&k| assignment[k] >= 1),
            Self::MaxZeroArms(nu) => assignment.zero_arms() <= *nu,
        }
    }
}

fn check_dims(means: &[f64], assignment: &Assignment) -> Result<()> {
    if means.len() != assignment.arms() {
        return Err(Error::DimensionMismatch {
            expected: means.len(),
            got: assignment.arms(),
        });
    }
    Ok(())
}

/// `<mu, g(M)>`: expected number of rewards collected in one round.
pub fn expected_value(means: &[f64], assignment: &Assignment, p: f64) -> Result<f64> {
    check_dims(means, assignment)?;
    Ok(value_unchecked(means, assignment.counts(), p))
}

pub(crate) fn value_unchecked(values: &[f64], counts: &[usize], p: f64) -> f64 {
    values.iter().zip(counts).map(|(&v, &m)| v * g(m, p)).sum()
}

/// `<mu, g(optimal) - g(played)>`.
pub fn per_round_regret(
    means: &[f64],
    optimal: &Assignment,
    played: &Assignment,
    p: f64,
) -> Result<f64> {
    check_dims(means, optimal)?;
    check_dims(means, played)?;
    Ok(means
        .iter()
        .zip(optimal.counts().iter().zip(played.counts()))
        .map(|(&mu, (&a, &b))| mu * (g(a, p) - g(b, p)))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_examples() {
        assert_eq!(g(0, 0.1), 0.0);
        assert!((g(1, 0.1) - 0.1).abs() < 1e-15);
        assert!((g(3, 0.1) - 0.243).abs() < 1e-12);
    }

    #[test]
    fn cap_examples() {
        assert_eq!(cap(0.1), 9);
        assert_eq!(cap(0.5), 1);
        assert_eq!(cap(0.01), 99);
        assert_eq!(cap(0.3), 2);
        assert_eq!(cap(0.05), 19);
    }

    #[test]
    fn g_is_single_occupancy_probability() {
        // Binomial(m, p) mass at 1, computed from the pmf.
        for &p in &[0.05, 0.1, 0.3] {
            for m in 1..=cap(p) {
                let pmf1 = m as f64 * p * (1.0 - p).powf((m - 1) as f64);
                assert!((g(m, p) - pmf1).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn concavity_and_marginal_sign_up_to_cap() {
        for &p in &[0.01, 0.05, 0.1, 0.2, 0.3, 0.45] {
            let c = cap(p);
            for m in 1..c {
                assert!(
                    g(m + 1, p) - g(m, p) <= g(m, p) - g(m - 1, p) + 1e-15,
                    "concavity at m = {m}, p = {p}"
                );
            }
            for m in 0..c {
                let closed = p * (1.0 - p).powi(m as i32 - 1) * (1.0 - (m + 1) as f64 * p);
                let direct = marginal_gain(m, p);
                if m > 0 {
                    assert!((closed - direct).abs() < 1e-14, "m = {m}, p = {p}");
                }
                assert!(direct >= 0.0, "gain negative at m = {m}, p = {p}");
            }
        }
    }

    #[test]
    fn expected_value_examples() {
        let v = expected_value(&[0.99, 0.01], &Assignment::new(vec![3, 0]), 0.1).unwrap();
        assert!((v - 0.24057).abs() < 1e-12);
        let v = expected_value(&[1.0, 1.0], &Assignment::new(vec![1, 1]), 0.1).unwrap();
        assert!((v - 0.2).abs() < 1e-15);
        assert!(expected_value(&[1.0], &Assignment::new(vec![1, 1]), 0.1).is_err());
    }

    #[test]
    fn regret_examples() {
        let mu = [0.99, 0.01];
        let opt = Assignment::new(vec![3, 0]);
        assert_eq!(per_round_regret(&mu, &opt, &opt, 0.1).unwrap(), 0.0);
        let r = per_round_regret(&mu, &opt, &Assignment::new(vec![2, 1]), 0.1).unwrap();
        assert!((r - 0.06137).abs() < 1e-12);
        let r = per_round_regret(
            &[0.8, 0.5],
            &Assignment::new(vec![26, 4]),
            &Assignment::new(vec![25, 5]),
            0.01,
        )
        .unwrap();
        assert!(r > 0.0);
    }

    #[test]
    fn instance_validation() {
        assert!(InstanceConfig::new(30, 0.01, 10_000, vec![0.8, 0.5]).is_ok());
        assert!(InstanceConfig::new(1, 0.1, 10, vec![0.5, 0.5]).is_err());
        // cap(0.5) = 1, so two arms hold at most two players
        assert!(InstanceConfig::new(3, 0.5, 10, vec![0.5, 0.5]).is_err());
        assert!(InstanceConfig::new(2, 1.0, 10, vec![0.5, 0.5]).is_err());
        assert!(InstanceConfig::new(2, 0.1, 0, vec![0.5, 0.5]).is_err());
        assert!(InstanceConfig::new(2, 0.1, 10, vec![0.5, 1.5]).is_err());
        assert!(InstanceConfig::new(0, 0.1, 10, vec![]).is_err());
    }

    #[test]
    fn assignment_validation() {
        let a = Assignment::new(vec![10, 0]);
        assert!(a.validate(2, 10, 9).is_err());
        assert!(Assignment::new(vec![9, 1]).validate(2, 10, 9).is_ok());
        assert!(Assignment::new(vec![2, 1]).validate(2, 4, 9).is_err());
        assert_eq!(Assignment::new(vec![3, 0, 1]).support(), vec![0, 2]);
        assert_eq!(Assignment::new(vec![3, 0, 1]).to_string(), "(3, 0, 1)");
    }
}

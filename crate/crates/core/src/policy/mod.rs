//! Online policies: Cautious Greedy, centralized UCB and explore-then-commit.

mod cautious_greedy;
mod etc;
mod round_robin;
mod stats;
mod ucb;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use cautious_greedy::{CautiousGreedy, CautiousGreedyState};
pub use etc::{default_explore_rounds, ExploreThenCommit};
pub use round_robin::{round_robin_init, round_robin_step};
pub use stats::{ArmStatistics, ArmStats};
pub use ucb::{ucb_choose, Ucb};

use crate::environment::RoundOutcome;
use crate::error::{Error, Result};
use crate::model::{Assignment, InstanceConfig};

/// A centralized policy. `choose` and `observe` alternate strictly, one pair
/// per round, with rounds numbered from 1.
pub trait Policy {
    fn name(&self) -> &'static str;

    /// Assignment to play at round `t`.
    fn choose(&mut self, t: usize) -> Result<Assignment>;

    /// Feedback for the assignment returned by the preceding `choose(t)`.
    fn observe(&mut self, t: usize, outcome: &RoundOutcome) -> Result<()>;
}

/// Policy selector, parsed from its CLI name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum PolicyKind {
    CautiousGreedy,
    Ucb,
    /// Explore-then-commit; `None` uses [`default_explore_rounds`].
    Etc(Option<usize>),
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 3] = [
        PolicyKind::CautiousGreedy,
        PolicyKind::Ucb,
        PolicyKind::Etc(None),
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::CautiousGreedy => "cautious-greedy",
            Self::Ucb => "ucb",
            Self::Etc(_) => "etc",
        }
    }

    pub fn build(&self, config: &InstanceConfig) -> Result<Box<dyn Policy + Send>> {
        Ok(match *self {
            Self::CautiousGreedy => Box::new(CautiousGreedy::new(config.clone())),
            Self::Ucb => Box::new(Ucb::new(config.clone())),
            Self::Etc(rounds) => {
                let rounds = rounds.unwrap_or_else(|| default_explore_rounds(config.horizon()));
                Box::new(ExploreThenCommit::new(config.clone(), rounds)?)
            }
        })
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Etc(Some(n)) => write!(f, "etc:{n}"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    /// Accepts `cautious-greedy`, `ucb`, `etc` and `etc:<explore_rounds>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "cautious-greedy" => Ok(Self::CautiousGreedy),
            "ucb" => Ok(Self::Ucb),
            "etc" => Ok(Self::Etc(None)),
            other => match other.strip_prefix("etc:") {
                Some(n) => n.parse().map(|n| Self::Etc(Some(n))).map_err(|_| {
                    Error::InvalidPolicy(format!("bad exploration length in {other:?}"))
                }),
                None => Err(Error::InvalidPolicy(format!("unknown policy {other:?}"))),
            },
        }
    }
}

impl From<PolicyKind> for String {
    fn from(kind: PolicyKind) -> String {
        kind.to_string()
    }
}

impl TryFrom<String> for PolicyKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Rejects outcomes reporting a single occupant on an arm that held no player.
pub(crate) fn check_outcome(played: Option<&Assignment>, outcome: &RoundOutcome) -> Result<()> {
    let played =
        played.ok_or_else(|| Error::OutcomeMismatch("observe called before choose".into()))?;
    if played.arms() != outcome.arms() {
        return Err(Error::DimensionMismatch {
            expected: played.arms(),
            got: outcome.arms(),
        });
    }
    for k in 0..played.arms() {
        if outcome.active_counts[k] > played[k] || (outcome.eta[k] && played[k] == 0) {
            return Err(Error::OutcomeMismatch(format!(
                "arm {k} held {} players but reported {} active",
                played[k], outcome.active_counts[k]
            )));
        }
    }
    Ok(())
}

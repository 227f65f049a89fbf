//! Centralized asynchronous multiplayer multi-armed bandits.
//!
//! `M` players are spread over `K` arms each round. Every player is active
//! independently with probability `p`, and an arm pays a Bernoulli reward only
//! when exactly one of its players is active, so an arm holding `m` players
//! yields in expectation `mu_k * g(m)` with `g(m) = m p (1 - p)^(m - 1)`.
//!
//! * [`model`]: the reward model, instances and assignments.
//! * [`solver`]: exact greedy solvers and a brute-force oracle.
//! * [`environment`]: the seeded simulator.
//! * [`policy`]: Cautious Greedy, centralized UCB and explore-then-commit.
//! * [`analysis`]: instance constants such as `nu*`, gaps and the flip radius `r`.
//! * [`harness`]: replications, CSV/JSON output, self-checks and the CLI.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod analysis;
pub mod environment;
pub mod error;
pub mod harness;
pub mod model;
pub mod policy;
pub mod solver;

pub use error::{Error, Result};
pub use model::{Assignment, ConstraintSpec, InstanceConfig};
pub use policy::{Policy, PolicyKind};

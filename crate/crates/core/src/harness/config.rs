//! TOML experiment files.
//!
//! ```toml
//! K = 2
//! M = 3
//! p = 0.1
//! T = 10000
//! mu = [0.99, 0.01]
//!
//! # optional
//! replications = 50
//! seed = 0
//! stride = 1
//! policies = ["cautious-greedy", "ucb", "etc"]
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::InstanceConfig;
use crate::policy::PolicyKind;

pub const DEFAULT_REPLICATIONS: usize = 50;

/// Instance plus replication settings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub instance: InstanceConfig,
    pub policies: Vec<PolicyKind>,
    pub replications: usize,
    pub base_seed: u64,
    pub record_stride: usize,
}

impl ExperimentSpec {
    pub fn new(instance: InstanceConfig) -> Self {
        Self {
            instance,
            policies: PolicyKind::ALL.to_vec(),
            replications: DEFAULT_REPLICATIONS,
            base_seed: 0,
            record_stride: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.record_stride == 0 {
            return Err(Error::Config("stride must be at least 1".into()));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("no policy selected".into()));
        }
        Ok(())
    }

    /// Seed of replication `i`.
    pub fn seed(&self, i: usize) -> u64 {
        self.base_seed.wrapping_add(i as u64)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: SpecFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        raw.into_spec()
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    #[serde(rename = "K")]
    arms: usize,
    #[serde(rename = "M")]
    players: usize,
    p: f64,
    #[serde(rename = "T")]
    horizon: usize,
    mu: Vec<f64>,
    replications: Option<usize>,
    seed: Option<u64>,
    stride: Option<usize>,
    policies: Option<Vec<PolicyKind>>,
}

impl SpecFile {
    fn into_spec(self) -> Result<ExperimentSpec> {
        if self.mu.len() != self.arms {
            return Err(Error::Config(format!(
                "K = {} but mu has {} entries",
                self.arms,
                self.mu.len()
            )));
        }
        let instance = InstanceConfig::new(self.players, self.p, self.horizon, self.mu)?;
        let mut spec = ExperimentSpec::new(instance);
        if let Some(r) = self.replications {
            spec.replications = r;
        }
        if let Some(s) = self.seed {
            spec.base_seed = s;
        }
        if let Some(s) = self.stride {
            spec.record_stride = s;
        }
        if let Some(p) = self.policies {
            spec.policies = p;
        }
        spec.validate()?;
        Ok(spec)
    }
}

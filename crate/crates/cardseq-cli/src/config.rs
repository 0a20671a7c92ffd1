//! Run configuration: defaults come from the file named by the
//! `CARDSEQ_CONFIG` environment variable, command-line flags win.

use anyhow::Result;
use serde::{Deserialize, Serialize};

pub const CONFIG_ENV: &str = "CARDSEQ_CONFIG";

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RunConfig {
    pub delta: Option<String>,
    pub max_depth: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
}

impl RunConfig {
    /// Loads the config file named by the environment, or the empty config.
    pub fn from_env() -> Result<RunConfig> {
        match std::env::var_os(CONFIG_ENV) {
            Some(path) => crate::read_json(std::path::Path::new(&path)),
            None => Ok(RunConfig::default()),
        }
    }

    pub fn delta_or(&self, flag: Option<&str>) -> String {
        flag.map(str::to_string)
            .or_else(|| self.delta.clone())
            .unwrap_or_else(|| "w2^2 + 1".to_string())
    }

    pub fn max_depth_or(&self, flag: Option<usize>) -> usize {
        flag.or(self.max_depth).unwrap_or(cardseq::intervals::DEFAULT_MAX_DEPTH)
    }

    pub fn seed_or(&self, flag: Option<u64>) -> u64 {
        flag.or(self.seed).unwrap_or(0)
    }

    pub fn trials_or(&self, flag: Option<usize>) -> usize {
        flag.or(self.trials).unwrap_or(100)
    }
}

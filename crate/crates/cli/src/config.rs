use norm_attain::structured::DEFAULT_VALIDATION_PREFIX;
use norm_attain::TolerancePolicy;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Md,
}

/// Run configuration, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub tolerance: TolerancePolicy,
    pub seed: u64,
    /// Validation prefix for structured operators without their own.
    pub prefix: usize,
    /// Glob over scenario ids.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub only: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Self { tolerance: TolerancePolicy::default(), seed: DEFAULT_SEED, prefix: DEFAULT_VALIDATION_PREFIX, only: None }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), CliError> {
        self.tolerance.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if self.prefix == 0 {
            return Err(CliError::Config("--prefix must be at least 1".into()));
        }
        if let Some(pattern) = &self.only {
            glob::Pattern::new(pattern).map_err(|e| CliError::Config(format!("bad --only pattern: {e}")))?;
        }
        Ok(())
    }

    pub fn selects(&self, id: &str) -> bool {
        match &self.only {
            None => true,
            Some(p) => glob::Pattern::new(p).map(|p| p.matches(id)).unwrap_or(false),
        }
    }
}

//! Experiment specifications, read from a JSON document or assembled from flags.

use std::path::{Path, PathBuf};

use permlab_core::class_graphs::GraphSpec;
use permlab_core::oracle::ENUMERATION_CAP;
use permlab_core::sampling::LawSpec;
use permlab_core::stats::StatisticSpec;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Mc,
    Exact,
    Verify,
    Transfer,
}

impl std::str::FromStr for Mode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mc" => Ok(Self::Mc),
            "exact" => Ok(Self::Exact),
            "verify" => Ok(Self::Verify),
            "transfer" => Ok(Self::Transfer),
            _ => Err(HarnessError::Invalid(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default = "default_law")]
    pub law: String,
    #[serde(default = "default_stat")]
    pub stat: String,
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: Mode,
    /// Second law for transfer mode, or a reference for a KS column in Monte Carlo mode.
    #[serde(default)]
    pub reference: Option<String>,
    /// Class-graph instance for transfer mode.
    #[serde(default)]
    pub graph: Option<String>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

fn default_law() -> String {
    "uniform".into()
}

fn default_stat() -> String {
    "lis".into()
}

fn default_trials() -> usize {
    1
}

fn default_out() -> PathBuf {
    PathBuf::from("permlab-out")
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn law_spec(&self) -> Result<LawSpec> {
        Ok(LawSpec::parse(&self.law)?)
    }

    pub fn stat_spec(&self) -> Result<StatisticSpec> {
        Ok(StatisticSpec::parse(&self.stat)?)
    }

    /// Checks every invariant that can be checked before running.
    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Verify {
            return Ok(());
        }
        if self.trials == 0 && self.mode != Mode::Exact {
            return Err(HarnessError::Invalid("trials must be at least 1".into()));
        }
        if self.mode == Mode::Transfer {
            if self.reference.is_none() {
                return Err(HarnessError::Invalid("transfer mode needs a reference law".into()));
            }
            if let Some(g) = &self.graph {
                GraphSpec::parse(g)?;
                return Ok(());
            }
        }
        if self.sizes.is_empty() {
            return Err(HarnessError::Invalid("sizes must be non-empty".into()));
        }
        if self.sizes.contains(&0) {
            return Err(HarnessError::Invalid("sizes must be positive".into()));
        }
        let law = self.law_spec()?;
        let stat = self.stat_spec()?;
        match self.mode {
            Mode::Exact => {
                if let Some(&n) = self.sizes.iter().find(|&&n| n > ENUMERATION_CAP) {
                    return Err(HarnessError::Core(permlab_core::Error::CapExceeded { n, cap: ENUMERATION_CAP }));
                }
                if !stat.is_integer() {
                    return Err(HarnessError::Invalid(format!("exact mode needs an integer statistic, got `{stat}`")));
                }
                if law.colors().is_some() {
                    return Err(HarnessError::Invalid("exact mode does not support colored laws".into()));
                }
            }
            Mode::Transfer => {
                LawSpec::parse(self.reference.as_deref().unwrap_or_default())?;
            }
            Mode::Mc => {
                if let Some(r) = &self.reference {
                    LawSpec::parse(r)?;
                }
            }
            Mode::Verify => {}
        }
        Ok(())
    }
}

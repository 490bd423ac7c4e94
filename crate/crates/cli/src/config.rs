//! Versioned experiment configuration files.

use std::path::{Path, PathBuf};

use chabauty::SequenceSchedule;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::figures::FigureSpec;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported config version {0} (expected {CONFIG_VERSION})")]
    Version(u32),
    #[error("invalid config: {0}")]
    Invalid(String),
}

fn default_pairs() -> usize {
    200
}

fn default_max_size() -> usize {
    500
}

fn default_tol() -> f64 {
    1e-12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    /// Certified Hausdorff distances from the terms of a sequence to its limit.
    Decay {
        schedule: SequenceSchedule,
        n: Vec<u64>,
        radius: f64,
        step: f64,
    },
    Figure {
        figure: FigureSpec,
    },
    /// Grid against brute-force Hausdorff on random cloud pairs.
    OracleSweep {
        #[serde(default = "default_pairs")]
        pairs: usize,
        #[serde(default = "default_max_size")]
        max_size: usize,
        #[serde(default = "default_tol")]
        tol: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub experiment: Experiment,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.version != CONFIG_VERSION {
            return Err(ConfigError::Version(self.version));
        }
        match &self.experiment {
            Experiment::Decay {
                n,
                radius,
                step,
                schedule,
            } => {
                if n.is_empty() || n.contains(&0) {
                    return Err(ConfigError::Invalid(
                        "n must be a nonempty list of positive integers".into(),
                    ));
                }
                if !(*radius > 0.0 && radius.is_finite() && *step > 0.0 && step.is_finite()) {
                    return Err(ConfigError::Invalid(format!(
                        "radius {radius} and step {step} must be positive"
                    )));
                }
                schedule
                    .limit_spec()
                    .map_err(|e| ConfigError::Invalid(format!("schedule: {e}")))?;
            }
            Experiment::Figure { .. } => {}
            Experiment::OracleSweep {
                pairs,
                max_size,
                tol,
            } => {
                if *pairs == 0 || *max_size == 0 || tol.is_nan() || *tol < 0.0 {
                    return Err(ConfigError::Invalid(
                        "oracle sweep needs pairs, max_size >= 1 and tol >= 0".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let decay = r#"{"version":1,"kind":"decay","schedule":{"family":"R","r":{"kind":"diverge","a":1,"k":1}},
                        "n":[10,100],"radius":1e4,"step":1}"#;
        assert!(matches!(
            ExperimentConfig::from_json(decay).unwrap().experiment,
            Experiment::Decay { .. }
        ));
        let fig = r#"{"version":1,"kind":"figure","figure":{"kind":"layer","m":2,"q_max":4}}"#;
        assert!(matches!(
            ExperimentConfig::from_json(fig).unwrap().experiment,
            Experiment::Figure { .. }
        ));
        let sweep = r#"{"version":1,"kind":"oracle-sweep","seed":3}"#;
        let cfg = ExperimentConfig::from_json(sweep).unwrap();
        assert_eq!(cfg.seed, 3);
        assert_eq!(
            cfg.experiment,
            Experiment::OracleSweep {
                pairs: 200,
                max_size: 500,
                tol: 1e-12
            }
        );
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            ExperimentConfig::from_json(r#"{"version":2,"kind":"oracle-sweep"}"#),
            Err(ConfigError::Version(2))
        ));
        assert!(matches!(
            ExperimentConfig::from_json(r#"{"version":1,"kind":"nope"}"#),
            Err(ConfigError::Parse(_))
        ));
        let zero_n = r#"{"version":1,"kind":"decay","schedule":{"family":"A","m":{"kind":"linear","a":1}},
                         "n":[0],"radius":1,"step":1}"#;
        assert!(matches!(
            ExperimentConfig::from_json(zero_n),
            Err(ConfigError::Invalid(_))
        ));
    }
}

//! Experiment configuration: a TOML file, command-line overrides, and
//! validation into the typed objects the lab consumes.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::lab::{Estimator, System};
use crate::profile::ProfileVector;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemKind {
    Orientation,
    Gaussian,
}

impl std::str::FromStr for SystemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "orientation" => Ok(SystemKind::Orientation),
            "gaussian" => Ok(SystemKind::Gaussian),
            other => Err(format!("unknown system {other:?} (orientation|gaussian)")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Exact,
    MonteCarlo,
}

impl std::str::FromStr for MethodKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(MethodKind::Exact),
            "monte-carlo" | "mc" => Ok(MethodKind::MonteCarlo),
            other => Err(format!("unknown method {other:?} (exact|monte-carlo)")),
        }
    }
}

/// Upper guard on sweep radii; shells grow like `(2k-1)^L`.
pub const MAX_RADIUS_GUARD: usize = 20;
/// Gram matrices are dense over the whole ball.
pub const GRAM_RADIUS_GUARD: usize = 5;
pub const MIN_SAMPLES: usize = 1000;

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub system: SystemKind,
    pub rank: usize,
    pub p: f64,
    pub profile: String,
    pub method: MethodKind,
    pub max_radius: usize,
    pub shell_cap: usize,
    pub window_sizes: Vec<usize>,
    pub samples: usize,
    pub trials: usize,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            system: SystemKind::Orientation,
            rank: 2,
            p: 0.7,
            profile: "gaussian@unit".into(),
            method: MethodKind::Exact,
            max_radius: 20,
            shell_cap: 16,
            window_sizes: vec![10, 100, 1000],
            samples: 100_000,
            trials: 500,
            seed: 0,
            workers: 1,
            out: None,
        }
    }
}

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
#[error("invalid config field `{field}`: {message}")]
pub struct ConfigError {
    pub field: &'static str,
    pub message: String,
}

fn invalid(field: &'static str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        field,
        message: message.into(),
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| invalid("config", e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(2..=crate::group::MAX_RANK).contains(&self.rank) {
            return Err(invalid(
                "rank",
                format!("must be in 2..=26, got {}", self.rank),
            ));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(invalid("p", format!("must lie in (0, 1), got {}", self.p)));
        }
        self.profile_vector()?;
        if self.max_radius > MAX_RADIUS_GUARD {
            return Err(invalid(
                "max-radius",
                format!("must be <= {MAX_RADIUS_GUARD}, got {}", self.max_radius),
            ));
        }
        if self.shell_cap == 0 {
            return Err(invalid("shell-cap", "must be >= 1"));
        }
        if self.window_sizes.is_empty() || self.window_sizes.contains(&0) {
            return Err(invalid(
                "n",
                "window sizes must be a nonempty list of positive integers",
            ));
        }
        if self.samples < MIN_SAMPLES {
            return Err(invalid(
                "samples",
                format!("must be >= {MIN_SAMPLES}, got {}", self.samples),
            ));
        }
        if self.trials == 0 {
            return Err(invalid("trials", "must be >= 1"));
        }
        if self.seed > i64::MAX as u64 {
            return Err(invalid("seed", "must be < 2^63"));
        }
        if self.workers == 0 {
            return Err(invalid("workers", "must be >= 1"));
        }
        Ok(())
    }

    pub fn profile_vector(&self) -> Result<ProfileVector, ConfigError> {
        self.profile
            .parse()
            .map_err(|e: crate::Error| invalid("profile", e.to_string()))
    }

    pub fn system(&self) -> Result<System, ConfigError> {
        match self.system {
            SystemKind::Orientation => {
                System::orientation(self.p, self.rank).map_err(|e| invalid("p", e.to_string()))
            }
            SystemKind::Gaussian => {
                System::gaussian(self.rank).map_err(|e| invalid("rank", e.to_string()))
            }
        }
    }

    pub fn estimator(&self) -> Estimator {
        match self.method {
            MethodKind::Exact => Estimator::Exact,
            MethodKind::MonteCarlo => Estimator::MonteCarlo {
                samples: self.samples,
                seed: self.seed,
                workers: self.workers,
            },
        }
    }
}

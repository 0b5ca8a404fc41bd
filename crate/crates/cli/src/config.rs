use std::path::PathBuf;
use std::str::FromStr;

use faircluster_core::Objective;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveChoice {
    Center,
    Median,
    Both,
}

impl ObjectiveChoice {
    pub fn objectives(self) -> Vec<Objective> {
        match self {
            ObjectiveChoice::Center => vec![Objective::Center],
            ObjectiveChoice::Median => vec![Objective::Median],
            ObjectiveChoice::Both => vec![Objective::Center, Objective::Median],
        }
    }
}

impl FromStr for ObjectiveChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "center" => Ok(ObjectiveChoice::Center),
            "median" => Ok(ObjectiveChoice::Median),
            "both" => Ok(ObjectiveChoice::Both),
            other => Err(CliError::Config(format!("unknown objective {other:?}"))),
        }
    }
}

pub fn objective_name(objective: Objective) -> &'static str {
    match objective {
        Objective::Center => "center",
        Objective::Median => "median",
    }
}

/// Inclusive range of cluster counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KRange {
    pub min: usize,
    pub max: usize,
}

impl KRange {
    pub fn new(min: usize, max: usize) -> Result<Self> {
        if min == 0 || min > max {
            return Err(CliError::Config(format!("k range {min}..{max} is empty or starts at 0")));
        }
        Ok(KRange { min, max })
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.min..=self.max
    }
}

/// Accepts `a..b` (inclusive) or a single `k`.
impl FromStr for KRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |part: &str| {
            part.trim().parse::<usize>().map_err(|_| CliError::Config(format!("bad k range {s:?}")))
        };
        match s.split_once("..") {
            Some((a, b)) => KRange::new(parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let k = parse(s)?;
                KRange::new(k, k)
            }
        }
    }
}

/// Parameters of a sweep that do not depend on where the data came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub k_range: KRange,
    pub t_prime: usize,
    pub objective: ObjectiveChoice,
    pub seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t_prime == 0 {
            return Err(CliError::Config("t' must be at least 1".into()));
        }
        KRange::new(self.k_range.min, self.k_range.max).map(|_| ())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub input_path: PathBuf,
    pub color_column: String,
    /// Rows whose color column equals this value are blue, all others red.
    pub positive_value: String,
    pub feature_columns: Vec<String>,
    pub subsample: Option<usize>,
    pub normalize: bool,
    pub sweep: SweepConfig,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.feature_columns.is_empty() {
            return Err(CliError::Config("at least one feature column is required".into()));
        }
        if self.subsample == Some(0) {
            return Err(CliError::Config("subsample size must be positive".into()));
        }
        self.sweep.validate()
    }
}

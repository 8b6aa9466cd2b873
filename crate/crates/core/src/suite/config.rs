use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Inclusive integer range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntRange {
    pub min: usize,
    pub max: usize,
}

impl IntRange {
    pub fn new(min: usize, max: usize) -> Self {
        IntRange { min, max }
    }

    pub fn single(v: usize) -> Self {
        IntRange { min: v, max: v }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.min..=self.max
    }

    pub fn contains(&self, v: usize) -> bool {
        self.iter().contains(&v)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "camelCase")]
pub struct SuiteConfig {
    #[serde(rename = "N")]
    pub n: IntRange,
    pub d: IntRange,
    pub k: IntRange,
    pub limits: Limits,
    pub format: Format,
    pub seed: u64,
    /// Random instances per property check.
    pub instances: usize,
    /// Record per-check wall time. Off for golden runs.
    pub record_timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: IntRange::new(1, 2),
            d: IntRange::new(1, 5),
            k: IntRange::new(0, 3),
            limits: Limits::default(),
            format: Format::Json,
            seed: 20_240_617,
            instances: 200,
            record_timings: true,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SuiteConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid suite config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r, floor) in [("N", self.n, 1), ("d", self.d, 1), ("k", self.k, 0)] {
            if r.min > r.max {
                return Err(Error::Config(format!("{name} range {}..{} is empty", r.min, r.max)));
            }
            if r.min < floor {
                return Err(Error::Config(format!("{name} must be at least {floor}")));
            }
        }
        if self.instances == 0 {
            return Err(Error::Config("instances must be positive".into()));
        }
        self.limits.validate()
    }
}

//! Pipeline configuration: a flat TOML file, two environment overrides, and
//! command-line overrides, applied in precedence order flag > env > file.
//!
//! Only `output_dir` (`CORRNET_OUTPUT_DIR`) and `master_seed`
//! (`CORRNET_MASTER_SEED`) may come from the environment; everything else is
//! explicit in the file or on the command line.

use std::path::{Path, PathBuf};

use corrnet_core::corr::DissimilarityKind;
use corrnet_core::graph::FilterKind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const ENV_OUTPUT_DIR: &str = "CORRNET_OUTPUT_DIR";
pub const ENV_MASTER_SEED: &str = "CORRNET_MASTER_SEED";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse {path}: {source}")]
    Toml { path: PathBuf, source: toml::de::Error },
    #[error("base_horizon_s must be positive")]
    ZeroBaseHorizon,
    #[error("horizons_s must not be empty")]
    EmptyHorizons,
    #[error("horizon {horizon_s}s is not divisible by base horizon {base_horizon_s}s")]
    NonDivisibleHorizon { horizon_s: u32, base_horizon_s: u32 },
    #[error("horizon {horizon_s}s is listed twice")]
    DuplicateHorizon { horizon_s: u32 },
    #[error("filters must not be empty")]
    EmptyFilters,
    #[error("filter {0:?} is listed twice")]
    DuplicateFilter(&'static str),
    #[error("unknown filter `{0}` (expected mst, pmfg, or tmfg)")]
    BadFilterName(String),
    #[error("unknown dissimilarity `{0}` (expected euclidean or power)")]
    BadDissimilarityName(String),
    #[error("bootstrap_replicas must be at least 1")]
    ZeroReplicas,
    #[error("shuffle_count must be at least 1")]
    ZeroShuffles,
    #[error("bootstrap_threshold {0} outside [0, 1]")]
    BadThreshold(f64),
    #[error("percentile_levels must not be empty")]
    EmptyPercentiles,
    #[error("percentile level {0} outside (0, 100)")]
    BadPercentile(f64),
    #[error("{ENV_MASTER_SEED}=`{value}` is not an unsigned 64-bit integer")]
    BadEnvSeed { value: String },
}

/// Whether gaps are repaired at the base horizon before resampling (the
/// default) or at each target horizon after resampling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapFillStage {
    Base,
    Target,
}

pub fn parse_filter_name(name: &str) -> Result<FilterKind, ConfigError> {
    match name.trim().to_ascii_lowercase().as_str() {
        "mst" => Ok(FilterKind::Mst),
        "pmfg" => Ok(FilterKind::Pmfg),
        "tmfg" => Ok(FilterKind::Tmfg),
        _ => Err(ConfigError::BadFilterName(name.to_string())),
    }
}

pub fn parse_dissimilarity_name(name: &str) -> Result<DissimilarityKind, ConfigError> {
    match name.trim().to_ascii_lowercase().as_str() {
        "euclidean" => Ok(DissimilarityKind::Euclidean),
        "power" => Ok(DissimilarityKind::Power),
        _ => Err(ConfigError::BadDissimilarityName(name.to_string())),
    }
}

mod dissimilarity_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(kind: &DissimilarityKind, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(kind.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<DissimilarityKind, D::Error> {
        let name = String::deserialize(d)?;
        parse_dissimilarity_name(&name).map_err(D::Error::custom)
    }
}

mod filters_serde {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(filters: &[FilterKind], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(filters.iter().map(|f| f.name()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<FilterKind>, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names.iter().map(|n| parse_filter_name(n).map_err(D::Error::custom)).collect()
    }
}

fn default_base_horizon() -> u32 {
    15
}

fn default_horizons() -> Vec<u32> {
    vec![15, 60, 900, 3600, 14_400, 86_400]
}

fn default_dissimilarity() -> DissimilarityKind {
    DissimilarityKind::Power
}

/// PMFG is opt-in: on 25+ assets its edge-by-edge planarity scan is far
/// slower than TMFG for the same edge budget.
fn default_filters() -> Vec<FilterKind> {
    vec![FilterKind::Mst, FilterKind::Tmfg]
}

fn default_replicas() -> usize {
    1000
}

fn default_shuffles() -> usize {
    100
}

fn default_threshold() -> f64 {
    0.95
}

fn default_percentiles() -> Vec<f64> {
    vec![10.0, 50.0, 90.0]
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_seed() -> u64 {
    0
}

fn default_gap_fill() -> GapFillStage {
    GapFillStage::Base
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    /// directory holding one `<SYMBOL>.csv` per taxonomy symbol
    pub data_dir: PathBuf,
    pub taxonomy_path: PathBuf,
    #[serde(default = "default_base_horizon")]
    pub base_horizon_s: u32,
    #[serde(default = "default_horizons")]
    pub horizons_s: Vec<u32>,
    #[serde(default = "default_dissimilarity", with = "dissimilarity_serde")]
    pub dissimilarity_kind: DissimilarityKind,
    #[serde(default = "default_filters", with = "filters_serde")]
    pub filters: Vec<FilterKind>,
    #[serde(default = "default_replicas")]
    pub bootstrap_replicas: usize,
    #[serde(default = "default_shuffles")]
    pub shuffle_count: usize,
    #[serde(default = "default_threshold")]
    pub bootstrap_threshold: f64,
    #[serde(default = "default_percentiles")]
    pub percentile_levels: Vec<f64>,
    #[serde(default = "default_seed")]
    pub master_seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_gap_fill")]
    pub gap_fill: GapFillStage,
}

/// Command-line overrides; `None` leaves the config value in place.
#[derive(Clone, Debug, Default)]
pub struct CliOverrides {
    pub seed: Option<u64>,
    pub horizons: Option<Vec<u32>>,
    pub filters: Option<Vec<String>>,
    pub out: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn from_toml_str(text: &str, origin: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Toml { path: origin.to_path_buf(), source })
    }

    /// Applies the two sanctioned environment overrides. `lookup` is
    /// injectable so tests do not mutate process state.
    pub fn apply_env_overrides(
        &mut self,
        lookup: impl Fn(&str) -> Option<String>,
    ) -> Result<(), ConfigError> {
        if let Some(dir) = lookup(ENV_OUTPUT_DIR) {
            self.output_dir = PathBuf::from(dir);
        }
        if let Some(raw) = lookup(ENV_MASTER_SEED) {
            self.master_seed =
                raw.trim().parse().map_err(|_| ConfigError::BadEnvSeed { value: raw })?;
        }
        Ok(())
    }

    pub fn apply_cli_overrides(&mut self, overrides: &CliOverrides) -> Result<(), ConfigError> {
        if let Some(seed) = overrides.seed {
            self.master_seed = seed;
        }
        if let Some(horizons) = &overrides.horizons {
            self.horizons_s = horizons.clone();
        }
        if let Some(filters) = &overrides.filters {
            self.filters = filters.iter().map(|f| parse_filter_name(f)).collect::<Result<_, _>>()?;
        }
        if let Some(out) = &overrides.out {
            self.output_dir = out.clone();
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.base_horizon_s == 0 {
            return Err(ConfigError::ZeroBaseHorizon);
        }
        if self.horizons_s.is_empty() {
            return Err(ConfigError::EmptyHorizons);
        }
        let mut seen = Vec::new();
        for &h in &self.horizons_s {
            if h % self.base_horizon_s != 0 || h == 0 {
                return Err(ConfigError::NonDivisibleHorizon {
                    horizon_s: h,
                    base_horizon_s: self.base_horizon_s,
                });
            }
            if seen.contains(&h) {
                return Err(ConfigError::DuplicateHorizon { horizon_s: h });
            }
            seen.push(h);
        }
        if self.filters.is_empty() {
            return Err(ConfigError::EmptyFilters);
        }
        let mut seen_filters = Vec::new();
        for &f in &self.filters {
            if seen_filters.contains(&f) {
                return Err(ConfigError::DuplicateFilter(f.name()));
            }
            seen_filters.push(f);
        }
        if self.bootstrap_replicas == 0 {
            return Err(ConfigError::ZeroReplicas);
        }
        if self.shuffle_count == 0 {
            return Err(ConfigError::ZeroShuffles);
        }
        if !(0.0..=1.0).contains(&self.bootstrap_threshold) {
            return Err(ConfigError::BadThreshold(self.bootstrap_threshold));
        }
        if self.percentile_levels.is_empty() {
            return Err(ConfigError::EmptyPercentiles);
        }
        for &level in &self.percentile_levels {
            if !(level > 0.0 && level < 100.0) {
                return Err(ConfigError::BadPercentile(level));
            }
        }
        Ok(())
    }
}

/// Reads a config file and applies the environment overrides from the real
/// process environment. Callers layer CLI flags on top, then validate.
pub fn load_config(path: &Path) -> Result<PipelineConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    let mut config = PipelineConfig::from_toml_str(&text, path)?;
    config.apply_env_overrides(|key| std::env::var(key).ok())?;
    Ok(config)
}

//! Run manifest: the single JSON index of everything a pipeline run wrote.
//!
//! All artifact paths are relative to the output root, so a run's artifacts
//! can be moved or compared as a unit. `created_utc` and `timings_ms` are
//! the only fields expected to differ between identical runs;
//! `determinism_view` strips exactly those.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::PipelineConfig;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("manifest references missing file {path}")]
    MissingArtifact { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphArtifact {
    /// filter kind name ("mst" | "pmfg" | "tmfg")
    pub kind: String,
    pub graphml: PathBuf,
    pub dot: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HorizonArtifacts {
    pub horizon_s: u32,
    pub report_json: PathBuf,
    pub correlation_csv: PathBuf,
    pub correlation_json: PathBuf,
    pub dissimilarity_csv: PathBuf,
    pub adf_csv: PathBuf,
    pub graphs: Vec<GraphArtifact>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    /// RFC3339 write time; excluded from determinism comparisons
    pub created_utc: String,
    pub master_seed: u64,
    /// false when the run aborted and only some artifacts exist
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incomplete_reason: Option<String>,
    pub config: PipelineConfig,
    pub horizons: Vec<HorizonArtifacts>,
    /// table and figure files, relative to the output root
    pub tables: Vec<PathBuf>,
    /// wall-clock stage timings; excluded from determinism comparisons
    pub timings_ms: BTreeMap<String, u64>,
}

impl RunManifest {
    pub fn referenced_files(&self) -> Vec<&Path> {
        let mut files = Vec::new();
        for h in &self.horizons {
            files.push(h.report_json.as_path());
            files.push(h.correlation_csv.as_path());
            files.push(h.correlation_json.as_path());
            files.push(h.dissimilarity_csv.as_path());
            files.push(h.adf_csv.as_path());
            for g in &h.graphs {
                files.push(g.graphml.as_path());
                files.push(g.dot.as_path());
            }
        }
        files.extend(self.tables.iter().map(PathBuf::as_path));
        files
    }

    /// Every referenced file must exist under `root` before the manifest may
    /// be written.
    pub fn verify_references(&self, root: &Path) -> Result<(), ManifestError> {
        for rel in self.referenced_files() {
            let full = root.join(rel);
            if !full.is_file() {
                return Err(ManifestError::MissingArtifact { path: full });
            }
        }
        Ok(())
    }

    /// Verifies references, then writes `manifest.json` under `root`.
    pub fn write(&self, root: &Path) -> Result<PathBuf, ManifestError> {
        self.verify_references(root)?;
        let path = root.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(self)
            .map_err(|source| ManifestError::Json { path: path.clone(), source })?;
        fs::write(&path, text).map_err(|source| ManifestError::Io { path: path.clone(), source })?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self, ManifestError> {
        let text = fs::read_to_string(path)
            .map_err(|source| ManifestError::Io { path: path.to_path_buf(), source })?;
        serde_json::from_str(&text)
            .map_err(|source| ManifestError::Json { path: path.to_path_buf(), source })
    }

    /// The manifest as JSON with the two run-specific fields blanked, for
    /// byte-level comparison of reruns.
    pub fn determinism_view(&self) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("manifest serializes");
        let map = value.as_object_mut().expect("manifest is an object");
        map.insert("created_utc".to_string(), serde_json::Value::Null);
        map.insert("timings_ms".to_string(), serde_json::Value::Null);
        value
    }
}

//! Run manifest: a single TOML file recording the resolved configuration,
//! code version, wall time, produced files, per-point failures, and the
//! closed-form branch metadata. Data files stay timestamp-free; the manifest
//! carries the run bookkeeping.

use serde::Serialize;

use crate::config::ExperimentConfig;

#[derive(Debug, Serialize)]
pub struct RunMeta {
    pub scenario: String,
    pub code_version: String,
    pub wall_time_seconds: f64,
    pub workers: usize,
    /// Trailing-window fraction used by running-minimum envelopes.
    pub envelope_window_fraction: f64,
    pub status: String,
}

#[derive(Debug, Serialize)]
pub struct FileEntry {
    pub name: String,
    pub rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureEntry {
    pub point: String,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub run: RunMeta,
    /// Full echo of every configuration field that shaped this run.
    pub config: &'a ExperimentConfig,
    /// Per-root erfc argument signs used by the closed-form amplitude.
    pub branch_signs: Vec<String>,
    pub files: Vec<FileEntry>,
    pub failures: Vec<FailureEntry>,
}

impl Manifest<'_> {
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("manifest serializes")
    }
}

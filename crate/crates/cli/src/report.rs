//! Report directories: files plus a manifest that embeds the resolved
//! configuration and the standing methodology notes.
//!
//! Manifests carry no timestamps; a rerun with the same configuration must
//! produce byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::ExperimentConfig;
use bosonfide::Result;

/// Methodology choices that are not obvious from the numbers; quoted in
/// every manifest.
pub const NOTES: &[&str] = &[
    "probabilities are conditioned on the collision-free sector; the unconditioned sector mass is recorded as cfs_mass",
    "per-trial events are drawn without replacement from the pool; trials are independent with per-trial sub-seeds",
    "the bona fide column of each chi-squared table reuses the cluster training counts",
    "chi-squared expected counts default to the per-sampler uniform reference N_j/k; the two-sample (standard) and printed (verbatim-eq6) normalizations are available for comparison, see chi2_formula",
    "gaussian summaries quote the ensemble FWHM and the center standard error sigma/sqrt(trials)",
    "shell reports quote both the total and the per-pattern mean probability of each shell",
];

pub struct Report {
    dir: PathBuf,
    command: String,
    files: Vec<String>,
}

impl Report {
    pub fn create(dir: &Path, command: &str) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            command: command.to_string(),
            files: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Write a file from a closure that fills a buffer; registers it in the
    /// manifest file list.
    pub fn write_with<F>(&mut self, name: &str, fill: F) -> Result<()>
    where
        F: FnOnce(&mut Vec<u8>) -> Result<()>,
    {
        let mut buf = Vec::new();
        fill(&mut buf)?;
        fs::write(self.dir.join(name), buf)?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn write_string(&mut self, name: &str, content: &str) -> Result<()> {
        fs::write(self.dir.join(name), content)?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write_string(name, &text)
    }

    /// Write `manifest.json` and consume the report.
    pub fn finish(mut self, config: &ExperimentConfig, extra: Value) -> Result<()> {
        self.files.push("manifest.json".to_string());
        self.files.sort();
        let manifest = serde_json::json!({
            "command": self.command,
            "config": config,
            "files": self.files,
            "notes": NOTES,
            "summary": extra,
        });
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(self.dir.join("manifest.json"), text)?;
        Ok(())
    }
}

/// Stable file-name fragment for a grid value, e.g. `0.947` -> `x0.947`.
pub fn x_tag(x: f64) -> String {
    format!("x{x:.3}")
}

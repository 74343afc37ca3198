// Copyright 2026 The laxflow Authors
// SPDX-License-Identifier: Apache-2.0

//! Data files and the run manifest.
//!
//! Every file goes through one [`OutputDir`], which records its SHA-256 for
//! the manifest. The manifest itself is written last, to a temporary file
//! that is renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use laxflow_core::propagator::KappaZero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Command, RunConfig};
use crate::CliError;

pub const MANIFEST_NAME: &str = "manifest.json";

/// Full round-trip precision: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileRecord {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// A pass/fail entry of the manifest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes iff `measured <= limit`.
    pub fn at_most(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            pass: measured <= limit,
            measured: Some(measured),
            limit: Some(limit),
            detail: None,
        }
    }

    pub fn flag(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            measured: None,
            limit: None,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    /// Resolved config; `--config` on this file reruns it.
    pub config: RunConfig,
    pub kappa_zero: Option<KappaZero>,
    /// Eigendecompositions of the scheme runs; absent for diagnostics.
    pub decompositions: Option<usize>,
    pub wall_seconds: f64,
    pub warnings: Vec<String>,
    pub checks: Vec<Check>,
    pub all_pass: bool,
    pub files: Vec<FileRecord>,
}

/// The output directory of one run.
pub struct OutputDir {
    root: PathBuf,
    files: Vec<FileRecord>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(Self {
            root: root.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn files(&self) -> &[FileRecord] {
        &self.files
    }

    fn write_bytes(&mut self, name: &str, bytes: &[u8]) -> Result<(), CliError> {
        let path = self.root.join(name);
        fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        self.files.push(FileRecord {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
            bytes: bytes.len() as u64,
        });
        Ok(())
    }

    /// Writes a CSV with the given header and rows.
    pub fn write_csv<I, R>(&mut self, name: &str, header: &[&str], rows: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = String>,
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Output(format!("{name}: {e}"));
        w.write_record(header).map_err(csv_err)?;
        for row in rows {
            w.write_record(row.into_iter().collect::<Vec<_>>()).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(format!("{name}: {e}")))?;
        self.write_bytes(name, &bytes)
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Output(format!("{name}: {e}")))?;
        bytes.push(b'\n');
        self.write_bytes(name, &bytes)
    }

    /// Writes the manifest through a temporary file and a rename.
    pub fn finish(self, mut manifest: RunManifest) -> Result<RunManifest, CliError> {
        manifest.files = self.files;
        let mut bytes =
            serde_json::to_vec_pretty(&manifest).map_err(|e| CliError::Output(format!("{MANIFEST_NAME}: {e}")))?;
        bytes.push(b'\n');
        let tmp = self.root.join(format!(".{MANIFEST_NAME}.tmp"));
        let path = self.root.join(MANIFEST_NAME);
        let mut f = fs::File::create(&tmp).map_err(|e| CliError::io(&tmp, e))?;
        f.write_all(&bytes).map_err(|e| CliError::io(&tmp, e))?;
        f.sync_all().map_err(|e| CliError::io(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))?;
        Ok(manifest)
    }
}

/// Reads a run config from a config file or from a manifest's `config`.
pub fn load_config(text: &str) -> Result<RunConfig, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| crate::config::ConfigError::new("config", e.to_string()))?;
    let inner = match value.get("config") {
        Some(c) if value.get("tool").is_some() => c.clone(),
        _ => value,
    };
    serde_json::from_value(inner).map_err(|e| crate::config::ConfigError::new("config", e.to_string()).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for x in [0.1, -1.0 / 3.0, std::f64::consts::PI, 1e-300, 0.0, 6.02e23] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn csv_files_are_digested() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputDir::create(dir.path()).unwrap();
        out.write_csv("a.csv", &["x", "y"], vec![vec![num(1.0), num(2.0)]])
            .unwrap();
        let bytes = fs::read(dir.path().join("a.csv")).unwrap();
        assert_eq!(
            String::from_utf8(bytes.clone()).unwrap(),
            "x,y\n1.0000000000000000e0,2.0000000000000000e0\n"
        );
        assert_eq!(out.files()[0].sha256, sha256_hex(&bytes));
    }

    #[test]
    fn loads_config_or_manifest() {
        let plain = load_config(r#"{"command": "evolve", "K": 8}"#).unwrap();
        assert_eq!(plain.k, Some(8));
        let wrapped =
            load_config(r#"{"tool": "laxflow", "config": {"command": "evolve", "K": 8}, "files": []}"#).unwrap();
        assert_eq!(wrapped, plain);
        assert!(load_config("[1, 2").is_err());
    }
}

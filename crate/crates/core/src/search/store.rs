//! Persistence for extremal sweeps: line-delimited JSON records plus a run
//! manifest, so long sweeps can resume by skipping completed cells.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::detect::ForbiddenSpec;
use crate::search::{Census, ExtremalRecord};
use crate::spectral::DEFAULT_MU_TOL;

const RECORDS_FILE: &str = "records.jsonl";
const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed store record: {0}")]
    Malformed(#[from] serde_json::Error),
}

/// One completed (order, forbidden-spec, connectivity) cell.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CellStatus {
    pub n: usize,
    pub forbid: String,
    pub connected_only: bool,
    pub census: Census,
}

/// Parameters and completed-cell index of a result store.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    pub mu_tolerance: f64,
    pub tie_tolerance: f64,
    pub cells: Vec<CellStatus>,
}

impl RunManifest {
    fn new() -> Self {
        RunManifest {
            version: env!("CARGO_PKG_VERSION").to_string(),
            mu_tolerance: DEFAULT_MU_TOL,
            tie_tolerance: crate::search::WITNESS_TIE_TOL,
            cells: Vec::new(),
        }
    }
}

/// Directory-backed store: `records.jsonl` holds one record per line,
/// `manifest.json` the parameters and completed cells.
pub struct ResultStore {
    root: PathBuf,
    manifest: RunManifest,
}

impl ResultStore {
    /// Opens (or initializes) a store rooted at `dir`.
    pub fn open(dir: &Path) -> Result<Self, StoreError> {
        fs::create_dir_all(dir).map_err(|e| StoreError::Io { path: dir.to_path_buf(), source: e })?;
        let manifest_path = dir.join(MANIFEST_FILE);
        let manifest = if manifest_path.exists() {
            let text = fs::read_to_string(&manifest_path)
                .map_err(|e| StoreError::Io { path: manifest_path.clone(), source: e })?;
            serde_json::from_str(&text)?
        } else {
            RunManifest::new()
        };
        Ok(ResultStore { root: dir.to_path_buf(), manifest })
    }

    pub fn manifest(&self) -> &RunManifest {
        &self.manifest
    }

    /// Whether this (n, spec, connectivity) cell already has a record.
    pub fn is_complete(&self, n: usize, spec: &ForbiddenSpec, connected_only: bool) -> bool {
        let forbid = spec.to_string();
        self.manifest
            .cells
            .iter()
            .any(|c| c.n == n && c.forbid == forbid && c.connected_only == connected_only)
    }

    /// Appends a record to the log and marks its cell complete.
    pub fn append(&mut self, record: &ExtremalRecord) -> Result<(), StoreError> {
        let records_path = self.root.join(RECORDS_FILE);
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&records_path)
            .map_err(|e| StoreError::Io { path: records_path.clone(), source: e })?;
        let line = serde_json::to_string(record)?;
        writeln!(file, "{line}")
            .map_err(|e| StoreError::Io { path: records_path.clone(), source: e })?;
        self.manifest.cells.push(CellStatus {
            n: record.n,
            forbid: record.forbid.to_string(),
            connected_only: record.connected_only,
            census: record.census,
        });
        self.write_manifest()
    }

    fn write_manifest(&self) -> Result<(), StoreError> {
        let path = self.root.join(MANIFEST_FILE);
        let text = serde_json::to_string_pretty(&self.manifest)?;
        fs::write(&path, text).map_err(|e| StoreError::Io { path, source: e })
    }

    /// Reads back every stored record.
    pub fn records(&self) -> Result<Vec<ExtremalRecord>, StoreError> {
        let path = self.root.join(RECORDS_FILE);
        if !path.exists() {
            return Ok(Vec::new());
        }
        let text =
            fs::read_to_string(&path).map_err(|e| StoreError::Io { path: path.clone(), source: e })?;
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(StoreError::from))
            .collect()
    }
}

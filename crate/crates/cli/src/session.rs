//! Run bookkeeping: input digests, atomic artifact writes and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use wqo_core::io::to_pretty;
use wqo_core::Deadline;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] wqo_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a subcommand produced: an artifact, or a refutation with its counterexample.
pub enum Outcome {
    Done(Value),
    Refuted(Value),
}

#[derive(Clone, Debug, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: Vec<FileDigest>,
    pub artifacts: Vec<FileDigest>,
    pub seed: u64,
    pub version: &'static str,
    pub workers: usize,
    pub wall_time_ms: u128,
    pub outcome: String,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Session {
    pub out: PathBuf,
    pub seed: u64,
    pub deadline: Deadline,
    command: Vec<String>,
    inputs: Vec<FileDigest>,
    artifacts: Vec<FileDigest>,
    started: Instant,
}

impl Session {
    pub fn new(out: PathBuf, seed: u64, deadline: Deadline, command: Vec<String>) -> Self {
        Session { out, seed, deadline, command, inputs: Vec::new(), artifacts: Vec::new(), started: Instant::now() }
    }

    /// Reads an input file as UTF-8 and records the digest of its bytes.
    pub fn read(&mut self, path: &Path) -> CliResult<String> {
        let bytes = fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        self.inputs.push(FileDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|e| {
            CliError::Core(wqo_core::Error::Parse { what: path.display().to_string(), message: e.to_string() })
        })
    }

    /// Writes `value` as pretty JSON under the output directory via a temporary file.
    pub fn write(&mut self, name: &str, value: &Value) -> CliResult<PathBuf> {
        self.write_bytes(name, to_pretty(value).as_bytes())
    }

    pub fn write_bytes(&mut self, name: &str, bytes: &[u8]) -> CliResult<PathBuf> {
        let path = self.out.join(name);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        }
        let tmp = path.with_extension("json.tmp");
        let io = |source| CliError::Io { path: path.clone(), source };
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(bytes).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        self.artifacts.push(FileDigest { path: name.to_string(), sha256: sha256_hex(bytes) });
        Ok(path)
    }

    pub fn finish(mut self, outcome: &str, exit_code: i32) -> CliResult<RunManifest> {
        let manifest = RunManifest {
            command: std::mem::take(&mut self.command),
            inputs: std::mem::take(&mut self.inputs),
            artifacts: std::mem::take(&mut self.artifacts),
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION"),
            workers: 1,
            wall_time_ms: self.started.elapsed().as_millis(),
            outcome: outcome.to_string(),
            exit_code,
        };
        let value = serde_json::to_value(&manifest).expect("manifest serializes");
        self.write_bytes("manifest.json", to_pretty(&value).as_bytes())?;
        Ok(manifest)
    }
}

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

impl FileHash {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        FileHash { path: path.display().to_string(), sha256: sha256_hex(bytes) }
    }
}

/// Written next to every artifact; enough to rerun the command that made it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub spec: Option<String>,
    pub grid_config: Option<String>,
    pub preset: Option<String>,
    /// Seeds of any runs whose outputs were consumed, then this run's own.
    pub seeds: Vec<u64>,
    pub out_dir: String,
    /// Command-specific settings such as reward magnitudes or episode counts.
    pub settings: serde_json::Value,
    pub inputs: Vec<FileHash>,
    /// Output paths are relative to `out_dir`.
    pub outputs: Vec<FileHash>,
}

impl RunManifest {
    pub fn new(command: &str, out_dir: &Path) -> Self {
        RunManifest {
            tool: "accbt".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            spec: None,
            grid_config: None,
            preset: None,
            seeds: Vec::new(),
            out_dir: out_dir.display().to_string(),
            settings: serde_json::Value::Null,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn read(dir: &Path) -> Result<Self, CliError> {
        let path = dir.join(MANIFEST_FILE);
        let text = read_text(&path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

/// Collects artifacts for one output directory and writes them with a manifest.
pub struct OutDir {
    dir: PathBuf,
    pub manifest: RunManifest,
}

impl OutDir {
    /// The directory itself is only created by the first write.
    pub fn new(command: &str, dir: PathBuf) -> Self {
        let manifest = RunManifest::new(command, &dir);
        OutDir { dir, manifest }
    }

    /// Moves the output before anything has been written.
    pub fn set_dir(&mut self, dir: PathBuf) {
        self.manifest.out_dir = dir.display().to_string();
        self.dir = dir;
    }

    /// Reads an input file and records its hash.
    pub fn input(&mut self, path: &Path) -> Result<Vec<u8>, CliError> {
        let bytes = read_bytes(path)?;
        self.manifest.inputs.push(FileHash::of(path, &bytes));
        Ok(bytes)
    }

    pub fn input_text(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = self.input(path)?;
        String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.dir).map_err(|source| CliError::Write { path: self.dir.clone(), source })?;
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|source| CliError::Write { path: path.clone(), source })?;
        self.manifest.outputs.push(FileHash::of(Path::new(name), bytes));
        Ok(path)
    }

    pub fn finish(self) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.dir).map_err(|source| CliError::Write { path: self.dir.clone(), source })?;
        let path = self.dir.join(MANIFEST_FILE);
        fs::write(&path, self.manifest.to_json()).map_err(|source| CliError::Write { path: path.clone(), source })?;
        Ok(self.dir)
    }
}

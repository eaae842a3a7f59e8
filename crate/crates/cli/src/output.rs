use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use levy_core::ModelSpec;
use serde::{Deserialize, Serialize};

use crate::args::Command;
use crate::Failure;

/// Record of one run, written next to its outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub config_path: PathBuf,
    /// Parsed arguments; `rerun` executes them again.
    pub invocation: Command,
    /// Model as used, after applying --x.
    pub model: ModelSpec,
    pub seed: Option<u64>,
    pub tool_version: String,
    pub threads: usize,
    pub started_unix_seconds: f64,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<String>,
}

pub const MANIFEST: &str = "manifest.json";

/// Output directory collecting the names of written files.
#[derive(Debug)]
pub struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
}

impl Outputs {
    pub fn new(dir: &Path) -> Result<Self, Failure> {
        fs::create_dir_all(dir).map_err(|e| Failure::io(&format!("creating {}", dir.display()), e))?;
        Ok(Outputs { dir: dir.to_path_buf(), files: Vec::new() })
    }

    pub fn files(&self) -> &[String] {
        &self.files
    }

    /// Writes through a temporary file and a rename, so readers never see
    /// a partial file.
    pub fn write_bytes(&mut self, name: &str, bytes: &[u8]) -> Result<(), Failure> {
        write_atomic(&self.dir.join(name), bytes)?;
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::io(name, e))?;
        text.push('\n');
        self.write_bytes(name, text.as_bytes())
    }

    /// CSV with a header row; `None` cells are left empty.
    pub fn write_csv(&mut self, name: &str, header: &[&str], rows: &[Vec<Option<f64>>]) -> Result<(), Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(|e| Failure::io(name, e))?;
        for row in rows {
            w.serialize(row).map_err(|e| Failure::io(name, e))?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::io(name, e))?;
        self.write_bytes(name, &bytes)
    }

    pub fn write_records<T: Serialize>(&mut self, name: &str, records: &[T]) -> Result<(), Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in records {
            w.serialize(r).map_err(|e| Failure::io(name, e))?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::io(name, e))?;
        self.write_bytes(name, &bytes)
    }

    pub fn write_manifest(&self, manifest: &Manifest) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(manifest).map_err(|e| Failure::io(MANIFEST, e))?;
        text.push('\n');
        write_atomic(&self.dir.join(MANIFEST), text.as_bytes())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    let what = format!("writing {}", path.display());
    let mut f = fs::File::create(&tmp).map_err(|e| Failure::io(&what, e))?;
    f.write_all(bytes).and_then(|_| f.sync_all()).map_err(|e| Failure::io(&what, e))?;
    fs::rename(&tmp, path).map_err(|e| Failure::io(&what, e))
}

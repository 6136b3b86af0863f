use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::Params;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "icf";

/// Column-major numeric table with `name[unit]` headers.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub comments: Vec<String>,
    headers: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { comments: vec![], headers: headers.iter().map(|h| h.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "# {c}");
        }
        s.push_str(&self.headers.join(","));
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub parameters: Params,
    pub seed: Option<u64>,
    pub runtime_seconds: f64,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(default)]
    pub summary: Value,
}

impl Manifest {
    pub fn read(path: &Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid("manifest", format!("cannot read {}: {e}", path.display())))?;
        let m: Manifest = serde_json::from_str(&text).map_err(|e| Error::invalid("manifest", e.to_string()))?;
        if m.schema_version != SCHEMA_VERSION {
            return Err(Error::invalid(
                "schema_version",
                format!("manifest schema {} not supported (expected {SCHEMA_VERSION})", m.schema_version),
            ));
        }
        Ok(m)
    }
}

/// Write `<stem>.csv` and `<stem>.manifest.json` under `dir`.
pub fn write_outputs(dir: &Path, stem: &str, table: &Table, manifest: &mut Manifest) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir)?;
    let csv = dir.join(format!("{stem}.csv"));
    let json = dir.join(format!("{stem}.manifest.json"));
    manifest.outputs = vec![file_name(&csv), file_name(&json)];
    std::fs::write(&csv, table.to_csv())?;
    let text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    std::fs::write(&json, text + "\n")?;
    Ok((csv, json))
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

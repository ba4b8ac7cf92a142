//! Run records: every command emits one JSON document embedding its full
//! configuration and a content hash, plus CSV tables for numeric grids.
//! Identical configuration and seed reproduce the bytes exactly.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Serialize)]
pub struct RunRecord {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub config_hash: String,
    pub passed: bool,
    pub summary: Vec<String>,
    pub payload: serde_json::Value,
}

/// Result of executing one command, before it is wrapped into a record.
pub struct Outcome {
    pub passed: bool,
    pub summary: Vec<String>,
    pub payload: serde_json::Value,
    /// (table name, csv content)
    pub tables: Vec<(String, String)>,
}

pub fn config_hash(command: &str, config: &BTreeMap<String, String>) -> String {
    let mut hasher = Sha256::new();
    hasher.update(command.as_bytes());
    hasher.update(b"\n");
    for (k, v) in config {
        hasher.update(k.as_bytes());
        hasher.update(b"=");
        hasher.update(v.as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())
}

/// Writes the JSON record and CSV tables; returns the paths written.
pub fn emit(
    out_dir: &Path,
    command: &str,
    config: BTreeMap<String, String>,
    outcome: &Outcome,
) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let hash = config_hash(command, &config);
    let stem = format!("{}-{}", command.replace(' ', "-"), &hash[..8]);
    let record = RunRecord {
        tool: "qergo",
        version: env!("CARGO_PKG_VERSION"),
        command: command.to_string(),
        config,
        config_hash: hash,
        passed: outcome.passed,
        summary: outcome.summary.clone(),
        payload: outcome.payload.clone(),
    };
    let mut written = Vec::new();
    let json_path = out_dir.join(format!("{stem}.json"));
    let mut body = serde_json::to_string_pretty(&record).expect("record serializes");
    body.push('\n');
    fs::write(&json_path, body)?;
    written.push(json_path);
    for (name, content) in &outcome.tables {
        let path = out_dir.join(format!("{stem}-{name}.csv"));
        fs::write(&path, content)?;
        written.push(path);
    }
    Ok(written)
}

/// Minimal CSV rendering; fields are quoted only when they need to be.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let escape = |s: &str| -> String {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = row.iter().map(|f| escape(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Renders f64 deterministically for CSV cells.
pub fn fnum(v: f64) -> String {
    format!("{v:e}")
}

// Copyright 2026 The coherentqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Deterministic JSON and CSV output with atomic file writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::args::RunConfig;
use crate::error::{CliError, CliResult};

/// Result of a subcommand before formatting.
pub enum Output {
    Json(Value),
    Table { header: Vec<&'static str>, rows: Vec<Vec<Value>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(text: Option<&str>, default: Format) -> CliResult<Format> {
        match text {
            None => Ok(default),
            Some("json") => Ok(Format::Json),
            Some("csv") => Ok(Format::Csv),
            Some(other) => Err(CliError::Validation(format!("--format {other:?} is not json or csv"))),
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn json_text(v: &Value) -> CliResult<String> {
    let sorted: Value = serde_json::from_str(&serde_json::to_string(v)?)?;
    Ok(serde_json::to_string_pretty(&sorted)? + "\n")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn csv_text(header: &[&str], rows: &[Vec<Value>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(cell))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Validation(e.to_string()))
}

/// Writes `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".config.json");
    path.with_file_name(name)
}

/// Formats and writes a result. JSON embeds the resolved configuration;
/// tables written to a file get a `<out>.config.json` sidecar.
pub fn emit(command: &str, cfg: &RunConfig, out: Output, format: Format) -> CliResult<()> {
    let config = json!({ "command": command, "settings": cfg });
    let text = match (&out, format) {
        (Output::Json(v), _) => json_text(&json!({ "config": config, "result": v }))?,
        (Output::Table { header, rows }, Format::Csv) => csv_text(header, rows)?,
        (Output::Table { header, rows }, Format::Json) => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().cloned()).collect()))
                .collect();
            json_text(&json!({ "config": config, "result": objs }))?
        }
    };
    match &cfg.out {
        Some(path) => {
            write_atomic(path, &text)?;
            if matches!((&out, format), (Output::Table { .. }, Format::Csv)) {
                write_atomic(&sidecar(path), &json_text(&config)?)?;
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

pub fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| io_error(path, e))
}

fn io_error(path: &Path, err: std::io::Error) -> CliError {
    let mut cli: CliError = err.into();
    cli.message = format!("{}: {}", path.display(), cli.message);
    cli
}

/// Writes to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, content: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| io_error(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// `<path>.json`, the sidecar header next to a payload file.
pub fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

pub fn json_text<T: Serialize + ?Sized>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Renders JSON objects as CSV. Columns appear in first-seen key order;
/// floats use six decimals.
pub fn csv_text(rows: &[Value]) -> CliResult<String> {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(map) = row {
            for key in map.keys() {
                if !columns.contains(key) {
                    columns.push(key.clone());
                }
            }
        }
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&columns)?;
    for row in rows {
        let record: Vec<String> = columns
            .iter()
            .map(|c| row.get(c).map_or_else(String::new, cell))
            .collect();
        writer.write_record(&record)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::new("IO_ERROR", e.to_string(), crate::error::exit::IO))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) if n.is_f64() => format!("{:.6}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Rounds to the six decimals used in every printed probability.
pub fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

pub fn to_value<T: Serialize>(value: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(value)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_columns_follow_first_appearance() {
        let rows = vec![
            json!({"status": "skipped", "m": 30, "reason": "M_EXCEEDS_P"}),
            json!({"status": "ok", "m": 4, "bits": 1.5}),
        ];
        let text = csv_text(&rows).unwrap();
        assert_eq!(
            text,
            "status,m,reason,bits\nskipped,30,M_EXCEEDS_P,\nok,4,,1.500000\n"
        );
    }

    #[test]
    fn sidecar_appends_extension() {
        assert_eq!(
            sidecar(Path::new("dir/payload.bin")),
            PathBuf::from("dir/payload.bin.json")
        );
    }
}

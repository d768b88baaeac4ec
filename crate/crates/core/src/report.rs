//! Run reports: one JSON document per command invocation, optionally
//! flattened to CSV.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, String>,
    /// RFC 3339, UTC.
    pub started_at: String,
    pub duration_ms: u64,
    pub result: Value,
    pub violations: Vec<Value>,
    pub failures: Vec<Value>,
    /// CSV view of the result: header then rows. Not serialized.
    #[serde(skip)]
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            params: BTreeMap::new(),
            started_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            duration_ms: 0,
            result: Value::Null,
            violations: Vec::new(),
            failures: Vec::new(),
            table: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.failures.is_empty()
    }

    /// 0 when clean, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.is_clean() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// The tabular view, or `key,value` rows of the params and counts when the
    /// command has no natural table.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        match &self.table {
            Some((header, rows)) => {
                out.write_record(header)?;
                for row in rows {
                    out.write_record(row)?;
                }
            }
            None => {
                out.write_record(["key", "value"])?;
                out.write_record(["command", &self.command])?;
                for (k, v) in &self.params {
                    out.write_record([k, v])?;
                }
                out.write_record(["violations", &self.violations.len().to_string()])?;
                out.write_record(["failures", &self.failures.len().to_string()])?;
            }
        }
        out.flush()?;
        Ok(())
    }

    /// Format chosen by extension: `.csv` for CSV, anything else JSON.
    pub fn write_to(&self, path: &Path) -> std::io::Result<()> {
        let file = std::fs::File::create(path)?;
        let is_csv = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            self.write_csv(file).map_err(std::io::Error::other)
        } else {
            let mut file = file;
            file.write_all(self.to_json().as_bytes())?;
            file.write_all(b"\n")
        }
    }
}

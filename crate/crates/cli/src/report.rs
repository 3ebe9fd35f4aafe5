use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Labeled {
    pub label: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub resolution: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub results: Vec<Labeled>,
    pub convergence: Vec<ConvergencePoint>,
    #[serde(default)]
    pub tables: Vec<Table>,
    #[serde(default)]
    pub verdicts: Vec<Verdict>,
    /// Wall-clock seconds; only present when requested, so that reports are
    /// byte-identical across runs by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            config,
            results: Vec::new(),
            convergence: Vec::new(),
            tables: Vec::new(),
            verdicts: Vec::new(),
            timing: None,
        }
    }

    pub fn push(&mut self, label: impl Into<String>, value: f64) {
        self.results.push(Labeled {
            label: label.into(),
            value,
        });
    }

    pub fn verdict(&mut self, name: impl Into<String>, passed: bool) {
        self.verdicts.push(Verdict {
            name: name.into(),
            passed,
        });
    }

    pub fn result(&self, label: &str) -> Option<f64> {
        self.results
            .iter()
            .find(|r| r.label == label)
            .map(|r| r.value)
    }

    /// Every numeric field must be finite for the report to be emitted.
    pub fn check_finite(&self) -> CliResult<()> {
        let bad = |what: &str| Err(CliError::Numerical(format!("non-finite value in {what}")));
        for r in &self.results {
            if !r.value.is_finite() {
                return bad(&r.label);
            }
        }
        if self.convergence.iter().any(|c| !c.value.is_finite()) {
            return bad("convergence");
        }
        for t in &self.tables {
            if t.rows.iter().flatten().any(|v| !v.is_finite()) {
                return bad(&t.name);
            }
        }
        if matches!(self.timing, Some(t) if !t.is_finite()) {
            return bad("timing");
        }
        Ok(())
    }

    pub fn to_json(&self) -> CliResult<String> {
        self.check_finite()?;
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::Numerical(format!("report serialization failed: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn emit(&self, out: Option<&Path>) -> CliResult<()> {
        let text = self.to_json()?;
        match out {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e)),
        }
    }
}

/// Formats a double with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a table as CSV with CRLF line ends. `None` cells are left empty.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<Option<f64>>]) -> CliResult<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(file);
    let io = |e: csv::Error| CliError::io(path, std::io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map(fmt_f64).unwrap_or_default())
            .collect();
        w.write_record(&cells).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        let mut r = RunReport::new("det", serde_json::json!({"x": [-2.0], "s": [0.0]}));
        r.push("log_f", -0.8837651153090482);
        r.push("tiny", 1.0000000000000002e-300);
        r.convergence.push(ConvergencePoint {
            resolution: 48,
            value: 0.1 + 0.2,
        });
        let text = r.to_json().unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn non_finite_is_refused() {
        let mut r = RunReport::new("det", serde_json::Value::Null);
        r.push("bad", f64::NAN);
        assert!(matches!(r.to_json(), Err(CliError::Numerical(_))));
    }

    #[test]
    fn seventeen_digits() {
        let v = 0.1 + 0.2;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        assert_eq!(fmt_f64(-1.5), "-1.5000000000000000e0");
    }
}

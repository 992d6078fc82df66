use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use uflab::Error;

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    /// A number, or "inf"/"NaN" where JSON has none.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<Value>,
}

/// What every invocation prints. Only `elapsed_ms` varies between
/// identical runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Failure>,
    pub warnings: Vec<String>,
    pub elapsed_ms: f64,
}

/// Failure of a command, with its exit status.
#[derive(Debug, Clone)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
    pub residual: Option<f64>,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            kind: "invalid_input",
            message: message.into(),
            residual: None,
        }
    }

    pub fn numerical(message: impl Into<String>, residual: f64) -> Self {
        CliError {
            code: EXIT_NUMERICAL,
            kind: "numerical_failure",
            message: message.into(),
            residual: Some(residual),
        }
    }

    /// Prefixes the message with the file or field it concerns.
    pub fn context(mut self, what: &str) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }

    pub fn failure(&self) -> Failure {
        Failure {
            kind: self.kind,
            message: self.message.clone(),
            residual: self.residual.map(|r| {
                if r.is_finite() {
                    Value::from(r)
                } else {
                    Value::from(r.to_string())
                }
            }),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind, residual) = match &e {
            Error::InvalidInput(_) => (EXIT_INVALID, "invalid_input", None),
            Error::Unsupported(_) => (EXIT_INVALID, "unsupported", None),
            Error::DegreeViolation { .. } => (EXIT_INVALID, "degree_violation", None),
            Error::NumericalFailure { residual, .. } => (EXIT_NUMERICAL, "numerical_failure", Some(*residual)),
            Error::Contradiction(_) => (EXIT_NUMERICAL, "contradiction", None),
            Error::Resolution(_) => (EXIT_NUMERICAL, "insufficient_resolution", None),
        };
        CliError {
            code,
            kind,
            message: e.to_string(),
            residual,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Result of a command before it is wrapped into a report.
#[derive(Debug, Default)]
pub struct Output {
    pub values: Value,
    pub warnings: Vec<String>,
    /// Preferred CSV rendering; without one the values are flattened.
    pub table: Option<String>,
}

impl Output {
    pub fn new(values: impl Serialize) -> CliResult<Self> {
        let values = serde_json::to_value(values).map_err(|e| CliError::invalid(format!("serializing output: {e}")))?;
        Ok(Output {
            values,
            ..Default::default()
        })
    }

    pub fn with_table(mut self, table: String) -> Self {
        self.table = Some(table);
        self
    }

    pub fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

/// Reads a file and records its digest.
#[derive(Debug, Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> CliResult<Vec<u8>> {
        let bytes = std::fs::read(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
        self.digests.push(InputDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(&bytes)),
        });
        Ok(bytes)
    }

    pub fn read_text(&mut self, path: &Path) -> CliResult<String> {
        let bytes = self.read(path)?;
        String::from_utf8(bytes).map_err(|_| CliError::invalid(format!("{}: not valid UTF-8", path.display())))
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, rows);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

/// `key,value` rows for outputs without a dedicated table.
pub fn flat_csv(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let mut s = String::from("key,value\n");
    for (k, x) in rows {
        s.push_str(&format!("{},{}\n", csv_field(&k), csv_field(&x)));
    }
    s
}

pub fn to_pretty(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening() {
        let v = json!({"a": {"b": [1, 2]}, "c": "x,y", "d": []});
        assert_eq!(flat_csv(&v), "key,value\na.b.0,1\na.b.1,2\nc,\"x,y\"\nd,[]\n");
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::InvalidInput("x".into())).code, EXIT_INVALID);
        let e = CliError::from(Error::NumericalFailure {
            what: "solve".into(),
            residual: 0.5,
        });
        assert_eq!(e.code, EXIT_NUMERICAL);
        assert_eq!(e.failure().residual, Some(json!(0.5)));
        assert_eq!(CliError::numerical("m", f64::NAN).failure().residual, Some(json!("NaN")));
        assert!(CliError::invalid("bad").context("f.json").message.starts_with("f.json: "));
    }
}

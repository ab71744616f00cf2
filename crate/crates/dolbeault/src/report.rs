//! Machine-readable run reports: deterministic structured output plus a
//! human-readable table rendering.  Identical configuration and inputs
//! produce byte-identical structured reports.

use crate::cohomology::Identity;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    /// Echo of the effective input (file contents or parameters).
    pub input: serde_json::Value,
    pub results: serde_json::Value,
    pub identities: Vec<Identity>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input: serde_json::Value::Null,
            results: serde_json::Value::Null,
            identities: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    /// Deterministic structured rendering (pretty JSON, trailing newline).
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// Human-readable table rendering.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dolbeault {} — {}\n", self.version, self.command));
        out.push_str(&render_value("", &self.results));
        if !self.identities.is_empty() {
            out.push_str("\nidentities:\n");
            for id in &self.identities {
                out.push_str(&format!(
                    "  [{}] {}\n        lhs: {}\n        rhs: {}\n",
                    if id.pass { "pass" } else { "FAIL" },
                    id.name,
                    id.lhs,
                    id.rhs
                ));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {}\n", w));
        }
        out
    }
}

fn render_value(indent: &str, v: &serde_json::Value) -> String {
    let mut out = String::new();
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{}{}:\n", indent, k));
                        out.push_str(&render_value(&format!("{}  ", indent), val));
                    }
                    _ => out.push_str(&format!("{}{}: {}\n", indent, k, val)),
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{}-\n", indent));
                        out.push_str(&render_value(&format!("{}  ", indent), item));
                    }
                    _ => out.push_str(&format!("{}- {}\n", indent, item)),
                }
            }
        }
        serde_json::Value::Null => {}
        _ => out.push_str(&format!("{}{}\n", indent, v)),
    }
    out
}

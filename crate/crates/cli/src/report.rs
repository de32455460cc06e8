//! Command reports and their JSON and text renderings.

use ocoh::report::CheckReport;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// The command and its arguments.
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub command: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    /// Computed data: dimensions, cochains, induced structures.
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub results: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    /// Wall-clock timings in milliseconds; only filled on request since
    /// they make reports nondeterministic.
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub timing: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.command.insert("name".into(), command.into());
        r
    }

    pub fn arg(&mut self, key: &str, v: impl Into<Value>) {
        self.command.insert(key.into(), v.into());
    }

    pub fn check(&mut self, name: &str, mut rep: CheckReport) {
        rep.check = name.to_string();
        self.checks.push(rep);
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(key.into(), serde_json::to_value(v).expect("results serialize"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// JSON with keys in sorted order, or an indented plain-text rendering of
/// the same tree.
pub fn emit_report(r: &Report, format: Format) -> String {
    let v = serde_json::to_value(r).expect("reports serialize");
    match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("values serialize"),
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(m) = &v {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                if !r.checks.is_empty() {
                    out.push_str(&format!("verdict: {verdict}\n"));
                }
                text_object(m, 0, &mut out);
            }
            out
        }
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => {
            let items: Option<Vec<String>> = a.iter().map(scalar_text).collect();
            items.map(|i| format!("[{}]", i.join(", ")))
        }
        _ => None,
    }
}

fn text_object(m: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        match scalar_text(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                text_value(v, depth + 1, out);
            }
        }
    }
}

fn text_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => text_object(m, depth, out),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        text_value(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap_or_default())),
    }
}

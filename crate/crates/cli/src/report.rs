//! Run reports, rendered as JSON or as indented `key: value` text.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub arguments: BTreeMap<String, String>,
    /// SHA-256 of the raw input document, when there is one.
    pub input_sha256: Option<String>,
    pub seed: Option<u64>,
    pub results: Value,
    pub verdict: Verdict,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(command: &str, results: impl Serialize, verdict: Verdict) -> RunReport {
        RunReport {
            command: command.to_string(),
            arguments: BTreeMap::new(),
            input_sha256: None,
            seed: None,
            results: serde_json::to_value(results).expect("results serialize"),
            verdict,
        }
    }

    pub fn arg(mut self, key: &str, value: impl ToString) -> RunReport {
        self.arguments.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports serialize");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if !self.arguments.is_empty() {
            let args: Vec<_> = self
                .arguments
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            out.push_str(&format!("arguments: {}\n", args.join(" ")));
        }
        out.push_str(&format!(
            "input_sha256: {}\n",
            self.input_sha256.as_deref().unwrap_or("-")
        ));
        out.push_str(&format!(
            "seed: {}\n",
            self.seed.map_or("-".to_string(), |s| s.to_string())
        ));
        out.push_str("results:\n");
        if let Value::Object(fields) = &self.results {
            for (k, v) in fields {
                render(&mut out, 1, k, v);
            }
        }
        out.push_str(&format!(
            "verdict: {}\n",
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            }
        ));
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => items
            .iter()
            .map(scalar)
            .collect::<Option<Vec<_>>>()
            .map(|xs| format!("[{}]", xs.join(", "))),
        Value::Object(_) => None,
    }
}

fn render(out: &mut String, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(fields) => {
            for (k, v) in fields {
                render(out, depth + 1, k, v);
            }
        }
        Value::Array(items) => {
            for item in items {
                let line = match item {
                    Value::Object(fields) => fields
                        .iter()
                        .map(|(k, v)| format!("{k}={}", scalar(v).unwrap_or_else(|| v.to_string())))
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => scalar(other).unwrap_or_else(|| other.to_string()),
                };
                out.push_str(&format!("{pad}  - {line}\n"));
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

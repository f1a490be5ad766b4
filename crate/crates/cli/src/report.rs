//! Run reports: one structured record per invocation, renderable as stable
//! JSON (sorted keys, timing outside the digestible region) or as plain
//! text for terminals.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Overall verdict class; decides the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Positive result (computed, equal, confirmed).
    Ok,
    /// Sound negative (refuted within bounds).
    Refuted,
    /// Bounded search gave up.
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Refuted => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub digest: String,
    pub status: Status,
    /// Command-specific structured result.
    pub outcome: Value,
    /// Counterexamples and failure witnesses, empty on success.
    pub witnesses: Vec<Value>,
}

impl RunReport {
    pub fn new(command: &str, digest: String, status: Status, outcome: Value) -> Self {
        RunReport {
            command: command.to_string(),
            digest,
            status,
            outcome,
            witnesses: Vec::new(),
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Value>) -> Self {
        self.witnesses = witnesses;
        self
    }

    /// The machine-readable tree. Identical inputs yield byte-identical
    /// serializations of this value; timing never appears inside it.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "digest": self.digest,
            "status": self.status.as_str(),
            "outcome": self.outcome,
            "witnesses": self.witnesses,
        })
    }

    /// Plain-text rendering: one `key: value` line per outcome field.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("digest: {}\n", self.digest));
        render_value(&mut out, "", &self.outcome);
        if !self.witnesses.is_empty() {
            out.push_str("witnesses:\n");
            for w in &self.witnesses {
                out.push_str(&format!("  - {}\n", compact(w)));
            }
        }
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        out
    }
}

fn render_value(out: &mut String, indent: &str, value: &Value) {
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                match inner {
                    Value::Object(nested) if !nested.is_empty() => {
                        out.push_str(&format!("{indent}{key}:\n"));
                        render_value(out, &format!("{indent}  "), inner);
                    }
                    Value::Array(items)
                        if items.iter().any(|i| i.is_object() || i.is_array()) =>
                    {
                        out.push_str(&format!("{indent}{key}:\n"));
                        for item in items {
                            out.push_str(&format!("{indent}  - {}\n", compact(item)));
                        }
                    }
                    _ => out.push_str(&format!("{indent}{key}: {}\n", compact(inner))),
                }
            }
        }
        other => out.push_str(&format!("{indent}{}\n", compact(other))),
    }
}

/// Single-line rendering without JSON string quoting noise for scalars.
fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(compact)
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

/// Digest over everything that determines the result: the canonical
/// document text, the command, and its arguments (bounds included). Timing
/// is deliberately outside.
pub fn input_digest(canonical_document: &str, command: &str, args: &[(&str, String)]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical_document.as_bytes());
    hasher.update([0u8]);
    hasher.update(command.as_bytes());
    for (key, value) in args {
        hasher.update([0u8]);
        hasher.update(key.as_bytes());
        hasher.update([b'=']);
        hasher.update(value.as_bytes());
    }
    format!("sha256:{:x}", hasher.finalize())
}

/// Builds a JSON object from sorted key-value pairs.
pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    let mut map = Map::new();
    for (key, value) in pairs {
        map.insert(key.to_string(), value);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_sensitive() {
        let d1 = input_digest("doc", "colim", &[("depth", "12".into())]);
        let d2 = input_digest("doc", "colim", &[("depth", "12".into())]);
        let d3 = input_digest("doc", "colim", &[("depth", "13".into())]);
        assert_eq!(d1, d2);
        assert_ne!(d1, d3);
        assert!(d1.starts_with("sha256:"));
    }

    #[test]
    fn json_keys_come_out_sorted() {
        let report = RunReport::new(
            "join",
            "sha256:x".into(),
            Status::Ok,
            json!({"zeta": 1, "alpha": 2}),
        );
        let text = serde_json::to_string(&report.to_json()).unwrap();
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
        assert!(text.find("command").unwrap() < text.find("digest").unwrap());
    }

    #[test]
    fn text_rendering_flattens_the_outcome() {
        let report = RunReport::new(
            "join",
            "sha256:x".into(),
            Status::Refuted,
            json!({"join": null, "upper_bounds": []}),
        );
        let text = report.render_text();
        assert!(text.contains("status: refuted"));
        assert!(text.contains("join: null"));
    }
}

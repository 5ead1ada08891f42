use std::fmt::Write as _;

use noncomm_core::{Assertions, Verdict};
use serde::Serialize;
use serde_json::Value;

pub const TOOL: &str = "noncomm";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// The JSON envelope every subcommand emits.
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: Value,
    pub verdict: Verdict,
    pub assertions: Assertions,
    pub data: Value,
}

impl Report {
    pub fn new(config: Value, assertions: Assertions, data: impl Serialize) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            config,
            verdict: assertions.verdict(),
            assertions,
            data: serde_json::to_value(data).expect("report data serializes"),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    /// Same content as the JSON form, one `key = value` line per leaf.
    pub fn to_text(&self) -> String {
        let mut out = format!("{TOOL} {VERSION}\n");
        let verdict = match self.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        };
        let _ = writeln!(out, "verdict: {verdict}");
        if !self.assertions.0.is_empty() {
            out.push_str("assertions:\n");
            for a in self.assertions.iter() {
                let mark = if a.pass { "pass" } else { "FAIL" };
                let _ = writeln!(out, "  [{mark}] {}: expected {}, computed {}", a.name, a.expected, a.computed);
            }
        }
        out.push_str("config:\n");
        flatten(&mut out, "", &self.config);
        out.push_str("data:\n");
        flatten(&mut out, "", &self.data);
        out
    }
}

fn flatten(out: &mut String, prefix: &str, value: &Value) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                flatten(out, &join(k), v);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(out, &format!("{prefix}[{i}]"), v);
            }
        }
        leaf => {
            let _ = writeln!(out, "  {prefix} = {leaf}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use noncomm_core::Assertion;
    use serde_json::json;

    #[test]
    fn envelope_keys_in_order() {
        let mut a = Assertions::default();
        a.push(Assertion::equal("order", 6, 6));
        let r = Report::new(json!({"command": "x"}), a, json!({"n": 1}));
        let text = r.to_json();
        let keys: Vec<usize> = ["\"tool\"", "\"version\"", "\"config\"", "\"verdict\"", "\"assertions\"", "\"data\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"verdict\": \"pass\""));
    }

    #[test]
    fn text_flattens_nested_data() {
        let r = Report::new(json!({}), Assertions::default(), json!({"a": {"b": [1, 2]}, "c": [{"d": true}]}));
        let text = r.to_text();
        assert!(text.contains("  a.b = [1,2]\n"));
        assert!(text.contains("  c[0].d = true\n"));
    }
}

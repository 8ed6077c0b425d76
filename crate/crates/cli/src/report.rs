//! Versioned JSON reports and their table rendering.

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::OutputMode;
use crate::descriptor::SCHEMA;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    /// `None` for commands that only compute.
    pub passed: Option<bool>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, result: impl Serialize) -> Report {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            passed: None,
            result: serde_json::to_value(result).expect("reports serialize"),
        }
    }

    pub fn with_verdict(mut self, passed: bool) -> Report {
        self.passed = Some(passed);
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.passed {
            Some(false) => 1,
            _ => 0,
        }
    }

    pub fn render(&self, mode: OutputMode) -> String {
        match mode {
            OutputMode::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            OutputMode::Table => {
                let mut lines = vec![
                    format!("schema  {}", self.schema),
                    format!("command  {}", self.command),
                ];
                if let Some(p) = self.passed {
                    lines.push(format!("passed  {p}"));
                }
                flatten("", &self.result, &mut lines);
                let mut s = lines.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, child, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), child, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}  {s}")),
        other => out.push(format!("{prefix}  {other}")),
    }
}

/// Report for a failed command: usage or input errors.
pub fn error_value(kind: &str, message: &str) -> Value {
    json!({ "schema": SCHEMA, "error": kind, "message": message })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_flattens_nested_values() {
        let r =
            Report::new("demo", json!({"a": {"b": [1, 2]}, "c": [{"d": "x"}]})).with_verdict(true);
        let t = r.render(OutputMode::Table);
        assert!(t.contains("a.b  [1,2]"));
        assert!(t.contains("c[0].d  x"));
        assert!(t.contains("passed  true"));
        assert_eq!(r.exit_code(), 0);
        assert!(r
            .render(OutputMode::Json)
            .contains("\"schema\": \"idxlab/1\""));
    }
}

//! Structured run reports. One document per run with a stable schema; the
//! results payload is deterministic for a fixed command and seed, while
//! timings live in their own field and are excluded from comparisons.

use serde::Serialize;
use serde_json::Value;

pub const TOOL_NAME: &str = "planecode";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub total_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub results: Value,
    pub timings: Timings,
}

impl RunReport {
    pub fn new(command: &str, parameters: Value, seed: Option<u64>, results: Value) -> Self {
        RunReport {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            command: command.to_string(),
            parameters,
            seed,
            results,
            timings: Timings { total_ms: 0 },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Human-readable rendering: one `key = value` line per leaf, in
    /// deterministic key order.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {} :: {}\n", self.tool, self.version, self.command));
        flatten("parameters", &self.parameters, &mut out);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed = {seed}\n"));
        }
        flatten("results", &self.results, &mut out);
        out.push_str(&format!("timings.total_ms = {}\n", self.timings.total_ms));
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        Value::Array(items) => {
            if items.iter().all(|v| !v.is_object() && !v.is_array()) {
                let rendered: Vec<String> = items.iter().map(render_scalar).collect();
                out.push_str(&format!("{prefix} = [{}]\n", rendered.join(", ")));
            } else {
                for (i, v) in items.iter().enumerate() {
                    flatten(&format!("{prefix}[{i}]"), v, out);
                }
            }
        }
        other => {
            out.push_str(&format!("{prefix} = {}\n", render_scalar(other)));
        }
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn stable_rendering() {
        let report = RunReport::new(
            "dim",
            json!({"p": 11}),
            None,
            json!({"dimension": 67, "formula": 67, "match": true}),
        );
        let table = report.to_table();
        assert!(table.contains("parameters.p = 11"));
        assert!(table.contains("results.dimension = 67"));
        // serde_json maps iterate in sorted key order, so repeated
        // serialization is byte-identical
        assert_eq!(report.to_json(), report.to_json());
    }
}

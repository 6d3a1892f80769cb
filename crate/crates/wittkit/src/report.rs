//! Machine-readable run reports. Identical inputs and seed produce
//! byte-identical JSON apart from the timing field.

use serde::Serialize;
use serde_json::Value;

/// Versioned schema identifier, also published in docs/.
pub const SCHEMA_ID: &str = "https://wittkit.dev/schema/report-v1.json";

/// One command run: inputs as parsed, results, and any property failures
/// with counterexamples.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub property_failures: Vec<Value>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str, inputs: Value, results: Value, failures: Vec<Value>) -> Report {
        Report {
            schema: SCHEMA_ID.to_string(),
            command: command.to_string(),
            inputs,
            results,
            property_failures: failures,
            timing_ms: 0,
        }
    }

    /// Exit status: 0 on success, 1 when a property failed.
    pub fn exit_code(&self) -> i32 {
        if self.property_failures.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Short human-readable summary.
    pub fn to_text(&self) -> String {
        let status = if self.property_failures.is_empty() { "ok" } else { "FAILED" };
        let mut out = format!("{}: {}\n", self.command, status);
        out.push_str(&serde_json::to_string_pretty(&self.results).expect("results"));
        if !self.property_failures.is_empty() {
            out.push_str("\nproperty failures:\n");
            out.push_str(
                &serde_json::to_string_pretty(&self.property_failures).expect("failures"),
            );
        }
        out.push('\n');
        out
    }
}

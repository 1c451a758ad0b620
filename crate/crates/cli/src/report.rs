//! The JSON envelope shared by every `--json` output.

use serde::Serialize;
use serde_json::{json, Value};
use stable_index_core::{Certificate, GlassesSpec, StableIndexOutcome};

pub const SCHEMA_VERSION: &str = "stable-index/1";

#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub schema_version: &'static str,
    pub command: String,
    pub inputs: Value,
    pub outcome: Value,
    pub timing: Timing,
    pub tool_version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl JsonReport {
    pub fn new(command: &str, inputs: Value, outcome: Value, elapsed: std::time::Duration) -> Self {
        JsonReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_owned(),
            inputs,
            outcome,
            timing: Timing {
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
            },
            tool_version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome with 1-based witness.
pub fn outcome_json(outcome: &StableIndexOutcome) -> Value {
    match *outcome {
        StableIndexOutcome::Finite { theta, witness: (i, j) } => json!({
            "kind": "finite",
            "theta": theta,
            "witness": [i + 1, j + 1],
        }),
        StableIndexOutcome::Infinite { certificate } => json!({
            "kind": "infinite",
            "certificate": certificate,
        }),
    }
}

pub fn outcome_line(outcome: &StableIndexOutcome) -> String {
    match *outcome {
        StableIndexOutcome::Finite { theta, witness: (i, j) } => {
            format!("finite theta={theta} witness=({},{})", i + 1, j + 1)
        }
        StableIndexOutcome::Infinite {
            certificate: Certificate::PowerCycle { a, b },
        } => format!("infinite certificate=power-cycle a={a} b={b}"),
        StableIndexOutcome::Infinite {
            certificate: Certificate::BoundExceeded { horizon },
        } => format!("infinite certificate=bound-exceeded horizon={horizon}"),
    }
}

/// Glasses labeling with 1-based vertices.
pub fn spec_json(spec: &GlassesSpec) -> Value {
    json!({
        "name": spec.to_string(),
        "p": spec.p,
        "k": spec.k,
        "q": spec.q,
        "left_attach": spec.left_attach + 1,
        "right_attach": spec.right_attach + 1,
        "path_vertices": spec.path_vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
    })
}

//! Deterministic command reports.
//!
//! `serde_json::Map` keeps keys sorted, so serializing a report twice gives
//! identical bytes.

use serde::Serialize;
use serde_json::{json, Map, Value};
use symblob_core::tolerance::*;
use symblob_core::Matrix;

use crate::io::{Input, MatrixFile};

pub struct Report {
    command: String,
    args: Map<String, Value>,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
}

pub fn matrix_value(m: &Matrix) -> Value {
    serde_json::to_value(MatrixFile::from(m)).expect("matrix serializes")
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            args: Map::new(),
            inputs: Map::new(),
            results: Map::new(),
        }
    }

    pub fn arg(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.args.insert(key.into(), to_value(value));
        self
    }

    pub fn input(&mut self, role: &str, input: &Input) -> &mut Self {
        self.inputs.insert(
            role.into(),
            json!({ "file": input.name(), "sha256": input.sha256() }),
        );
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.into(), to_value(value));
        self
    }

    pub fn matrix(&mut self, key: &str, m: &Matrix) -> &mut Self {
        self.results.insert(key.into(), matrix_value(m));
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": { "name": self.command, "args": self.args },
            "inputs": self.inputs,
            "results": self.results,
            "tolerances": tolerances(),
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    /// One `key: value` line per result, values as compact JSON.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.results {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        out
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report values serialize")
}

fn tolerances() -> Value {
    json!({
        "adm_tol": ADM_TOL,
        "blob_tol": BLOB_TOL,
        "cap_tol": CAP_TOL,
        "cluster_tol": CLUSTER_TOL,
        "eig_tol": EIG_TOL,
        "embed_slack": EMBED_SLACK,
        "herm_tol": HERM_TOL,
        "membership_slack": MEMBERSHIP_SLACK,
        "pd_tol": PD_TOL,
        "plane_tol": PLANE_TOL,
        "spec_tol": SPEC_TOL,
        "sym_tol": SYM_TOL,
        "symp_tol": SYMP_TOL,
        "wil_tol": WIL_TOL,
    })
}

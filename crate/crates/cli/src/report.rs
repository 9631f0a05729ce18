//! Report assembly and the machine-readable error object.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub struct Provenance {
    pub seed: u64,
    pub budget: usize,
    pub field: &'static str,
}

pub fn digest(inputs: &[String]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.len() as u64).to_le_bytes());
        h.update(i.as_bytes());
    }
    hex::encode(h.finalize())
}

pub fn report(command: &[String], inputs: &[String], results: Value, p: &Provenance) -> Value {
    json!({
        "command": command,
        "inputs_digest": digest(inputs),
        "results": results,
        "provenance": {
            "seed": p.seed,
            "budget": p.budget,
            "field": p.field,
            "version": env!("CARGO_PKG_VERSION"),
        },
    })
}

pub fn error(kind: &str, message: &str, details: Value) -> Value {
    json!({ "error": { "kind": kind, "message": message, "details": details } })
}

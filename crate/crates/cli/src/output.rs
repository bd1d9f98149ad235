//! JSON envelopes, content hashes and failure reporting.

use std::io::Write;
use std::path::Path;

use mosaic_core::Error;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// A command failure with its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Malformed or out-of-range input (exit 2).
    Validation(String),
    /// A checked property does not hold (exit 1). Carries the witness.
    Property { message: String, witness: Value },
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Property { .. } => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Failure::Validation(m) => json!({ "error": "validation", "message": m }),
            Failure::Property { message, witness } => {
                json!({ "error": "property", "message": message, "witness": witness })
            }
        };
        v.to_string()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Violation(v) => {
                Failure::Property { message: v.to_string(), witness: serde_json::to_value(&v).unwrap_or(Value::Null) }
            }
            other => Failure::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

/// SHA-256 over `blob <len>\0<bytes>`, as git frames object contents.
pub fn content_hash(parts: &[&[u8]]) -> String {
    let len: usize = parts.iter().map(|p| p.len()).sum();
    let mut h = Sha256::new();
    h.update(format!("blob {len}\0").as_bytes());
    for p in parts {
        h.update(p);
    }
    hex::encode(h.finalize())
}

/// `{command, params, input_hash, result}`; extra input bytes (files read)
/// join the parameters in the hash.
pub fn envelope<P: Serialize, R: Serialize>(
    command: &str,
    params: &P,
    extra: &[&[u8]],
    result: &R,
) -> Result<Value, Failure> {
    let params = serde_json::to_value(params)?;
    let canonical = serde_json::to_vec(&params)?;
    let mut parts: Vec<&[u8]> = vec![&canonical];
    parts.extend_from_slice(extra);
    Ok(json!({
        "command": command,
        "params": params,
        "input_hash": content_hash(&parts),
        "result": serde_json::to_value(result)?,
    }))
}

pub fn emit(doc: &Value, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(doc)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                _ => {}
            }
        }
    }
    Ok(())
}

//! Run reports: machine-readable summaries of a command invocation.

use serde_json::{json, Value};

use qflex_core::report::CheckReport;

/// Digest record for one input file.
#[derive(Clone, Debug)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

pub fn digest(path: &str, bytes: &[u8]) -> InputDigest {
    use sha2::{Digest, Sha256};
    InputDigest {
        path: path.to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
    }
}

fn check_to_value(rep: &CheckReport) -> Value {
    json!({
        "identity": rep.identity,
        "verdict": rep.verdict,
        "witness": rep.witness.map(|w| w.to_vec()),
        "residual": rep
            .residual
            .as_ref()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        "detail": rep.detail,
    })
}

/// Full report of one command run. Serialization uses sorted keys, so a
/// fixed `(inputs, seed)` pair reproduces the same verdict content;
/// `elapsed_ms` is the only wall-clock field.
pub fn run_report(
    command: &str,
    inputs: &[InputDigest],
    verdicts: &[CheckReport],
    extra: Value,
    elapsed_ms: u128,
    seed: Option<u64>,
) -> Value {
    json!({
        "command": command,
        "inputs": inputs
            .iter()
            .map(|d| json!({"path": d.path, "sha256": d.sha256}))
            .collect::<Vec<_>>(),
        "verdicts": verdicts.iter().map(check_to_value).collect::<Vec<_>>(),
        "extra": extra,
        "elapsed_ms": elapsed_ms,
        "seed": seed,
    })
}

pub fn print_text(verdicts: &[CheckReport]) {
    for rep in verdicts {
        println!("{rep}");
    }
}

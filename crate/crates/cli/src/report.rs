//! Machine-readable run reports, printed under `--json`.

use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// One report per CLI invocation. A "yes" decision always carries a
/// certificate that was re-validated before being attached.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub instance_digest: String,
    pub decision: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_sequence: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership_tests: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str, instance_digest: String) -> Self {
        RunReport {
            command: command.to_string(),
            instance_digest,
            decision: "error".into(),
            certificate: None,
            r_sequence: None,
            membership_tests: None,
            wall_ms: None,
        }
    }

    pub fn finish_yes(&mut self, certificate: serde_json::Value, start: Instant) {
        self.decision = "yes".into();
        self.certificate = Some(certificate);
        self.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }

    pub fn finish_no(&mut self, start: Instant) {
        self.decision = "no".into();
        self.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Content hash of the instance file, for reproducibility bookkeeping.
pub fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

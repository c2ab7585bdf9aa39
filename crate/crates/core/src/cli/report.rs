use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::Scenario;
use crate::certificate::CertificateSet;

pub const TOOL: &str = concat!("vnkit ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub scenario: String,
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub id: String,
    pub scenario: Scenario,
    /// True exactly when every certificate passes.
    pub pass: bool,
    /// Names of the failing certificates, in report order.
    pub failures: Vec<String>,
    pub summary: serde_json::Value,
    pub certificates: Vec<CertificateRecord>,
    /// SHA-256 of everything above, as canonical JSON.
    pub digest: String,
    pub wall_clock_ms: f64,
}

#[derive(Serialize)]
struct Payload<'a> {
    tool: &'a str,
    id: &'a str,
    scenario: &'a Scenario,
    pass: bool,
    failures: &'a [String],
    summary: &'a serde_json::Value,
    certificates: &'a [CertificateRecord],
}

impl Report {
    pub fn new(
        id: String,
        scenario: Scenario,
        summary: serde_json::Value,
        certificates: &CertificateSet,
        elapsed: Duration,
    ) -> Self {
        let records = certificates
            .iter()
            .map(|c| CertificateRecord {
                scenario: id.clone(),
                name: c.name.clone(),
                measured: c.measured,
                bound: c.bound,
                pass: c.pass,
            })
            .collect();
        Self::from_records(id, scenario, summary, records, elapsed)
    }

    pub fn from_records(
        id: String,
        scenario: Scenario,
        summary: serde_json::Value,
        certificates: Vec<CertificateRecord>,
        elapsed: Duration,
    ) -> Self {
        let failures: Vec<String> = certificates.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        let mut r = Self {
            tool: TOOL.to_string(),
            id,
            scenario,
            pass: failures.is_empty(),
            failures,
            summary,
            certificates,
            digest: String::new(),
            wall_clock_ms: elapsed.as_secs_f64() * 1e3,
        };
        r.digest = r.compute_digest();
        r
    }

    pub fn compute_digest(&self) -> String {
        let payload = Payload {
            tool: &self.tool,
            id: &self.id,
            scenario: &self.scenario,
            pass: self.pass,
            failures: &self.failures,
            summary: &self.summary,
            certificates: &self.certificates,
        };
        let bytes = serde_json::to_vec(&payload).expect("report payload serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

//! JSON documents emitted by the commands.

use serde::Serialize;
use sha2::{Digest, Sha256};

use qcohom::invariants::{HypothesisFlags, ObstructionVerdict, RankReport};
use qcohom::pipeline::{Derived, OrbitSummary};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub kind: &'static str,
    pub label: String,
    pub sha256: String,
}

impl InputInfo {
    pub fn new(kind: &'static str, label: &str, bytes: &[u8]) -> Self {
        InputInfo { kind, label: label.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

/// Full invariants report.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub input: InputInfo,
    pub derived: Derived,
    pub flags: HypothesisFlags,
    pub orbit_summary: OrbitSummary,
    pub rank_report: RankReport,
    pub obstruction: ObstructionVerdict,
}

#[derive(Debug, Serialize)]
pub struct HyperplaneEntry {
    pub normal: Vec<String>,
    pub offset: String,
    pub stabilizer_rank: usize,
    pub sources: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ArrangementReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub input: InputInfo,
    pub derived: Derived,
    pub components: Vec<Vec<usize>>,
    pub hyperplanes: Vec<HyperplaneEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_summary: Option<OrbitSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ObstructionReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub input: InputInfo,
    pub derived: Derived,
    pub obstruction: ObstructionVerdict,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

//! Machine-readable command reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use multider::derivations::Membership;
use multider::MultiArrangement;

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Certificate,
    Undetermined,
    Failure,
    Ok,
    ResourceLimit,
    Error,
}

#[derive(Debug, Serialize)]
pub struct HyperplaneRow {
    pub index: usize,
    pub form: String,
    pub multiplicity: u32,
    /// Largest power of the form dividing θ_i(α), capped at the multiplicity,
    /// one entry per derivation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved: Option<Vec<u32>>,
    pub ok: bool,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input_sha256: String,
    pub outcome: Outcome,
    pub exponents: Option<Vec<u32>>,
    pub scalar_c: Option<String>,
    pub hyperplane_table: Vec<HyperplaneRow>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: Vec<String>, inputs: &[&[u8]]) -> Report {
        let mut h = Sha256::new();
        for bytes in inputs {
            h.update(bytes);
        }
        Report {
            command,
            input_sha256: hex::encode(h.finalize()),
            outcome: Outcome::Ok,
            exponents: None,
            scalar_c: None,
            hyperplane_table: Vec::new(),
            elapsed_ms: 0,
            detail: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// One row per hyperplane, without membership data.
pub fn plain_table(arr: &MultiArrangement) -> Vec<HyperplaneRow> {
    arr.hyperplanes()
        .iter()
        .enumerate()
        .map(|(index, (h, m))| HyperplaneRow {
            index,
            form: h.to_string(),
            multiplicity: *m,
            achieved: None,
            ok: true,
        })
        .collect()
}

/// One row per hyperplane combining the membership results of several
/// derivations.
pub fn membership_table(arr: &MultiArrangement, results: &[Membership]) -> Vec<HyperplaneRow> {
    let mut rows = plain_table(arr);
    for row in &mut rows {
        let achieved: Vec<u32> = results.iter().map(|m| m.checks[row.index].achieved).collect();
        row.ok = achieved.iter().all(|&a| a >= row.multiplicity);
        row.achieved = Some(achieved);
    }
    rows
}

//! Report shapes for `tfs solve` and `tfs verify`. The JSON bodies are
//! byte-deterministic for a fixed configuration: timing goes to the
//! human summary only.

use std::collections::BTreeMap;

use serde::Serialize;

use tfs_core::io::{ForcingCertificate, GraphRecord};

pub const REPORT_SCHEMA: &str = "tfs-report/1";
pub const SOLVE_SCHEMA: &str = "tfs-solve/1";

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub schema: &'static str,
    pub claim: String,
    pub order_range: (usize, usize),
    pub trees_checked: usize,
    pub claims: Vec<ClaimResult>,
    pub config: BTreeMap<String, String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub holds: bool,
    pub equality_cases: usize,
    /// Offending trees as parent-array lines, sorted.
    pub counterexamples: Vec<String>,
    /// Full audit context per counterexample (witnesses, certificates),
    /// aligned with `counterexamples`.
    pub details: Vec<serde_json::Value>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }

    pub fn human_summary(&self) -> String {
        let mut out = format!(
            "claim {} over orders {}..={}: {} trees checked in {} ms\n",
            self.claim, self.order_range.0, self.order_range.1, self.trees_checked, self.elapsed_ms
        );
        for c in &self.claims {
            out.push_str(&format!(
                "  {}: {} ({} equality cases, {} counterexamples)\n",
                c.claim_id,
                if c.holds { "holds" } else { "FAILS" },
                c.equality_cases,
                c.counterexamples.len()
            ));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub schema: &'static str,
    pub graph: GraphRecord,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<usize>,
    #[serde(rename = "Ft", skip_serializing_if = "Option::is_none")]
    pub ft: Option<usize>,
    #[serde(rename = "witnessF", skip_serializing_if = "Option::is_none")]
    pub witness_f: Option<Vec<usize>>,
    #[serde(rename = "witnessFt", skip_serializing_if = "Option::is_none")]
    pub witness_ft: Option<Vec<usize>>,
    #[serde(rename = "certificateF", skip_serializing_if = "Option::is_none")]
    pub certificate_f: Option<ForcingCertificate>,
    #[serde(rename = "certificateFt", skip_serializing_if = "Option::is_none")]
    pub certificate_ft: Option<ForcingCertificate>,
}

//! Machine-checkable pass/fail records for the verified claims.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

/// A structured verdict for one claim. A PASS or FAIL always carries a
/// finite, re-checkable witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub params: Value,
    pub verdict: Verdict,
    pub witness: Value,
}

impl Certificate {
    pub fn new(claim: &str, params: Value, verdict: Verdict, witness: Value) -> Self {
        Certificate {
            claim: claim.to_string(),
            params,
            verdict,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Exit status convention: 0 PASS, 1 FAIL, 2 INCONCLUSIVE.
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }
}

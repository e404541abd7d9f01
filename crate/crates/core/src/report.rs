//! Structured outcome of a theorem or corollary check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Serializes as
/// `{"check":…,"params":{…},"pass":…,"counts":{…},"details":{…},"witness":…}`.
/// Maps are ordered so that rerunning a check reproduces the same bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub counts: BTreeMap<String, Value>,
    pub details: BTreeMap<String, Value>,
    /// First counterexample found, or `null`.
    pub witness: Option<Value>,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            params: BTreeMap::new(),
            pass: true,
            counts: BTreeMap::new(),
            details: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn count(&mut self, key: &str, value: impl Into<Value>) {
        self.counts.insert(key.to_string(), value.into());
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    /// Records a counterexample and marks the check failed. Only the first
    /// witness is kept.
    pub fn fail(&mut self, witness: impl Into<Value>) {
        self.pass = false;
        if self.witness.is_none() {
            self.witness = Some(witness.into());
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report values are plain JSON")
    }
}

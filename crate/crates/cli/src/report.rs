//! JSON reports with a stable field order.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Check {
    pub fn new(name: &str, passed: bool, details: Value) -> Self {
        Check { name: name.to_string(), passed, certificate: None, details, elapsed_ms: None }
    }

    pub fn with_certificate(mut self, c: Value) -> Self {
        self.certificate = Some(c);
        self
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub document: String,
    pub seed: u64,
    pub chart: Vec<String>,
    pub grid_points: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn finish(&mut self) {
        self.passed = self.checks.iter().all(|c| c.passed);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

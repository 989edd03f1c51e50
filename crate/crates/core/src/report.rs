//! Structured pass/fail results shared by every checker.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub witnesses: Vec<Value>,
    pub data: Map<String, Value>,
    /// Wall time spent; kept out of the serialized form so reports stay
    /// byte-for-byte reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn new(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            witnesses: Vec::new(),
            data: Map::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Records a failure together with its witness.
    pub fn fail(&mut self, witness: impl Into<Value>) {
        self.status = Status::Fail;
        self.witnesses.push(witness.into());
    }

    pub fn failed_with(mut self, witness: impl Into<Value>) -> Self {
        self.fail(witness);
        self
    }

    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        if !ok {
            self.fail(witness());
        }
    }

    pub fn with_data(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.data.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn push(&mut self, check: CheckResult) {
        debug_assert!(self.get(&check.name).is_none(), "duplicate check {}", check.name);
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = CheckResult>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check, for terminals.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {:<32} {:>8.1} ms\n", c.name, c.elapsed.as_secs_f64() * 1e3));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialization_omits_timing() {
        let mut r = CheckReport::default();
        let mut c = CheckResult::new("x").with_data("k", 3);
        c.elapsed = Duration::from_millis(5);
        c.fail(serde_json::json!([1, 0, 1]));
        r.push(c);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"checks":[{"name":"x","status":"fail","witnesses":[[1,0,1]],"data":{"k":3}}]}"#);
        assert!(!r.all_passed());
    }
}

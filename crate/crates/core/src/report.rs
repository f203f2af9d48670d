use serde::{Deserialize, Serialize};

use crate::catkit::CheckFailure;
use crate::config::SessionConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One counterexample, tagged with the identity or check it violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    pub fn new(check: &str, inputs: impl Into<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Failure {
            check: check.to_string(),
            inputs: inputs.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    pub fn tagged(check: &str, f: CheckFailure) -> Self {
        Failure {
            check: check.to_string(),
            inputs: f.inputs,
            lhs: f.lhs,
            rhs: f.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    /// Suite-specific output (survivors, elimination steps, ...).
    pub result: serde_json::Value,
}

impl Report {
    pub fn new(suite: &str, cfg: &SessionConfig) -> Self {
        Report {
            suite: suite.to_string(),
            seed: cfg.seed,
            config: cfg.echo(),
            cases: 0,
            failures: Vec::new(),
            verdict: Verdict::Pass,
            notes: Vec::new(),
            result: serde_json::Value::Null,
        }
    }

    pub fn add_cases(&mut self, n: usize) {
        self.cases += n;
    }

    pub fn fail(&mut self, f: Failure) {
        self.failures.push(f);
        self.verdict = Verdict::Fail;
    }

    pub fn extend(&mut self, fs: impl IntoIterator<Item = Failure>) {
        for f in fs {
            self.fail(f);
        }
    }

    /// Records a failure unless `ok`.
    pub fn require(&mut self, ok: bool, check: &str, inputs: impl Into<String>, lhs: impl ToString, rhs: impl ToString) {
        self.cases += 1;
        if !ok {
            self.fail(Failure::new(check, inputs, lhs, rhs));
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn set_result(&mut self, key: &str, value: impl Serialize) {
        if !self.result.is_object() {
            self.result = serde_json::Value::Object(Default::default());
        }
        self.result[key] = serde_json::to_value(value).expect("result serialises");
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// One line for humans.
    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("{}: {verdict} ({} cases, {} failures, seed {})", self.suite, self.cases, self.failures.len(), self.seed);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first [{}] {}: {} != {}", f.check, f.inputs, f.lhs, f.rhs));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_failures() {
        let mut r = Report::new("x", &SessionConfig::default());
        r.require(true, "a", "in", 1, 1);
        assert!(r.passed());
        assert_eq!(r.exit_code(), 0);
        r.require(false, "b", "in", 1, 2);
        assert!(!r.passed());
        assert_eq!(r.cases, 2);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdict"], "FAIL");
        assert_eq!(v["failures"][0]["check"], "b");
        assert!(r.summary().starts_with("x: FAIL (2 cases, 1 failures"));
    }
}

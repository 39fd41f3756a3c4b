//! Check results and the report envelope.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    /// what claim this check audits, in words
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    /// Passes iff `expected == actual`.
    pub fn compare(id: impl Into<String>, anchor: impl Into<String>, expected: impl ToString, actual: impl ToString) -> CheckResult {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        CheckResult { id: id.into(), case: None, anchor: anchor.into(), status, expected, actual, detail: String::new() }
    }

    pub fn verdict(id: impl Into<String>, anchor: impl Into<String>, ok: bool, expected: impl ToString, actual: impl ToString) -> CheckResult {
        let mut c = CheckResult::compare(id, anchor, expected, actual);
        c.status = if ok { Status::Pass } else { Status::Fail };
        c
    }

    /// A check that could not run, e.g. because the fixture is broken.
    pub fn error(id: impl Into<String>, anchor: impl Into<String>, err: impl ToString) -> CheckResult {
        CheckResult::verdict(id, anchor, false, "no error", "error").detail(err.to_string())
    }

    pub fn case(mut self, case: impl Into<String>) -> CheckResult {
        self.case = Some(case.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> CheckResult {
        self.detail = d.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub timestamp: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(timestamp: String, checks: Vec<CheckResult>) -> Report {
        Report { version: REPORT_VERSION, timestamp, checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let cell = |s: &str| s.replace('|', "\\|").replace('\n', " ");
        let mut s = format!("# Verification report\n\n{} checks, {} failed. Generated {}.\n\n", self.checks.len(), self.failures(), self.timestamp);
        s.push_str("| status | id | case | claim | expected | actual |\n|---|---|---|---|---|---|\n");
        for c in &self.checks {
            let st = if c.passed() { "pass" } else { "FAIL" };
            s.push_str(&format!(
                "| {st} | {} | {} | {} | {} | {} |\n",
                cell(&c.id),
                cell(c.case.as_deref().unwrap_or("")),
                cell(&c.anchor),
                cell(&c.expected),
                cell(&c.actual)
            ));
        }
        let details: Vec<&CheckResult> = self.checks.iter().filter(|c| !c.detail.is_empty()).collect();
        if !details.is_empty() {
            s.push_str("\n## Details\n\n");
            for c in details {
                s.push_str(&format!("- `{}`: {}\n", c.id, c.detail));
            }
        }
        s
    }
}

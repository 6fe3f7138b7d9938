//! Verification reports: one row per check, rendered as a table or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub group: String,
    pub status: Status,
    /// `0` for exact identities that hold, otherwise the first offending
    /// entry or the worst numerical error.
    pub residual: String,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportInput {
    pub seed: u64,
    pub only: Vec<String>,
    pub corrupt: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: String,
    pub input: ReportInput,
    pub checks: Vec<CheckResult>,
    /// Findings that do not fail a check, such as a closed-form expression that
    /// disagrees with the one derived from the bracket.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(input: ReportInput) -> Self {
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            input,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<width$}  {}  {:>9.1} ms  {}",
                c.name,
                c.status.label(),
                c.wall_ms,
                c.residual
            );
        }
        let passed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Pass)
            .count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

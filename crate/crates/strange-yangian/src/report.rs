//! Findings and reports.
//!
//! Every audit emits findings; a run collects them into a [`FindingsReport`]
//! that serializes to canonical JSON (sorted maps, `"p/q"` rationals, no
//! wall-clock data) so repeated runs are byte-identical.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Outcome of one checked identity.
///
/// `Info` is used for two things that must not flip the exit code: expected
/// failures of injected negative controls, and documented discrepancies
/// between a printed formula and the value the matrix model forces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    /// Suite that produced the finding.
    pub suite: String,
    /// Stable identifier, e.g. `level0/bracket-hx/i=1,j=2`.
    pub id: String,
    /// The identity being checked, written as a formula.
    pub anchor: String,
    pub status: Status,
    /// Exact witness on failure or documentation on info findings.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Finding {
    pub fn pass(suite: &str, id: String, anchor: &str) -> Finding {
        Finding { suite: suite.into(), id, anchor: anchor.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(suite: &str, id: String, anchor: &str, witness: String) -> Finding {
        Finding {
            suite: suite.into(),
            id,
            anchor: anchor.into(),
            status: Status::Fail,
            witness: Some(witness),
        }
    }

    pub fn info(suite: &str, id: String, anchor: &str, witness: String) -> Finding {
        Finding {
            suite: suite.into(),
            id,
            anchor: anchor.into(),
            status: Status::Info,
            witness: Some(witness),
        }
    }

    /// Pass/fail from a boolean, with the witness attached on failure.
    pub fn check(suite: &str, id: String, anchor: &str, ok: bool, witness: impl FnOnce() -> String) -> Finding {
        if ok {
            Finding::pass(suite, id, anchor)
        } else {
            Finding::fail(suite, id, anchor, witness())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub pass: usize,
    pub fail: usize,
    pub info: usize,
}

/// A full verification report. Deterministic for a given configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingsReport {
    pub n: usize,
    pub suites: Vec<String>,
    pub max_level: usize,
    pub max_degree: usize,
    pub controls: bool,
    pub summary: ReportSummary,
    pub findings: Vec<Finding>,
}

impl FindingsReport {
    pub fn new(n: usize, suites: Vec<String>, max_level: usize, max_degree: usize, controls: bool) -> Self {
        FindingsReport {
            n,
            suites,
            max_level,
            max_degree,
            controls,
            summary: ReportSummary { pass: 0, fail: 0, info: 0 },
            findings: Vec::new(),
        }
    }

    pub fn extend(&mut self, findings: Vec<Finding>) {
        for f in findings {
            match f.status {
                Status::Pass => self.summary.pass += 1,
                Status::Fail => self.summary.fail += 1,
                Status::Info => self.summary.info += 1,
            }
            self.findings.push(f);
        }
    }

    /// Exit-code contract: success iff no genuine failure.
    pub fn is_success(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    /// Markdown view of the same data.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Verification report (n = {})", self.n);
        let _ = writeln!(out);
        let _ = writeln!(out, "Suites: {}", self.suites.join(", "));
        let _ = writeln!(
            out,
            "Result: **{}** ({} pass, {} fail, {} info)",
            if self.is_success() { "success" } else { "FAILURE" },
            self.summary.pass,
            self.summary.fail,
            self.summary.info
        );
        let _ = writeln!(out);
        let _ = writeln!(out, "| status | id | identity |");
        let _ = writeln!(out, "|---|---|---|");
        for f in &self.findings {
            let status = match f.status {
                Status::Pass => "pass",
                Status::Fail => "**fail**",
                Status::Info => "info",
            };
            let _ = writeln!(out, "| {} | `{}` | `{}` |", status, f.id, f.anchor.replace('|', "\\|"));
        }
        let with_witness: Vec<&Finding> = self.findings.iter().filter(|f| f.witness.is_some()).collect();
        if !with_witness.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "## Witnesses");
            for f in with_witness {
                let _ = writeln!(out);
                let _ = writeln!(out, "### `{}`", f.id);
                let _ = writeln!(out);
                let _ = writeln!(out, "```\n{}\n```", f.witness.as_deref().unwrap_or(""));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_and_exit_contract() {
        let mut r = FindingsReport::new(2, vec!["model".into()], 4, 4, false);
        r.extend(vec![
            Finding::pass("model", "a".into(), "x"),
            Finding::info("model", "b".into(), "y", "note".into()),
        ]);
        assert!(r.is_success());
        r.extend(vec![Finding::fail("model", "c".into(), "z", "residual".into())]);
        assert!(!r.is_success());
        assert_eq!(r.summary.pass, 1);
        assert_eq!(r.summary.fail, 1);
        assert_eq!(r.summary.info, 1);
    }

    #[test]
    fn json_round_trip() {
        let mut r = FindingsReport::new(3, vec!["rmatrix".into()], 8, 5, true);
        r.extend(vec![Finding::pass("rmatrix", "unitarity".into(), "r(u,v) = -r21(v,u)")]);
        let s = r.to_json();
        let back: FindingsReport = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
    }
}

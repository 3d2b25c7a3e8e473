//! Report serialization and the exit-code policy.
//!
//! JSON schema: `{ "session", "checks": [ { "name", "verdict",
//! "degree_cap", "witness"?, "assumptions" } ], "notes"?, "verdict" }`.
//! The exit code is a pure function of the report: 0 when everything
//! is verified, 2 on any failure, 3 when the only shortfalls are
//! inconclusive verdicts.

use crate::config::ReportFormat;
use hgw_core::hg::{CheckVerdict, VerificationReport};
use hgw_core::ncalg::ZeroVerdict;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: String,
    pub degree_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub session: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: String,
}

pub const VERIFIED: &str = "verified";
pub const FAILED: &str = "failed";
pub const INCONCLUSIVE: &str = "inconclusive";

impl Report {
    pub fn new(session: impl Into<String>) -> Self {
        Report {
            session: session.into(),
            checks: Vec::new(),
            notes: Vec::new(),
            verdict: VERIFIED.to_string(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        verdict: &str,
        degree_cap: usize,
        witness: Option<String>,
        assumptions: Vec<String>,
    ) {
        self.checks.push(Check {
            name: name.into(),
            verdict: verdict.to_string(),
            degree_cap,
            witness,
            assumptions,
        });
    }

    pub fn push_zero_verdict(
        &mut self,
        name: impl Into<String>,
        v: &ZeroVerdict,
        degree_cap: usize,
        assumptions: Vec<String>,
    ) {
        let (verdict, witness) = match v {
            ZeroVerdict::Verified => (VERIFIED, None),
            ZeroVerdict::NonzeroAtCap(t) => (FAILED, Some(t.to_string())),
            ZeroVerdict::Inconclusive(reason) => (INCONCLUSIVE, Some(reason.clone())),
        };
        self.push(name, verdict, degree_cap, witness, assumptions);
    }

    /// Folds a core verification report in, attaching the given
    /// standing assumptions to every check.
    pub fn extend_from_core(&mut self, core: &VerificationReport, assumptions: &[String]) {
        for c in &core.checks {
            let (verdict, witness) = match &c.verdict {
                CheckVerdict::Verified => (VERIFIED, None),
                CheckVerdict::Failed { witness } => (FAILED, Some(witness.clone())),
                CheckVerdict::Inconclusive { reason } => (INCONCLUSIVE, Some(reason.clone())),
            };
            let mut all = c.assumptions.clone();
            all.extend(assumptions.iter().cloned());
            self.push(c.name.clone(), verdict, c.degree_cap, witness, all);
        }
        self.notes.extend(core.notes.iter().cloned());
    }

    /// Recomputes the overall verdict from the per-check verdicts.
    pub fn finalize(mut self) -> Self {
        self.verdict = if self.checks.iter().any(|c| c.verdict == FAILED) {
            FAILED.to_string()
        } else if self.checks.iter().any(|c| c.verdict == INCONCLUSIVE) {
            INCONCLUSIVE.to_string()
        } else {
            VERIFIED.to_string()
        };
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict.as_str() {
            FAILED => 2,
            INCONCLUSIVE => 3,
            _ => 0,
        }
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => {
                serde_json::to_string_pretty(self).expect("report serializes")
            }
            ReportFormat::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "session: {}", self.session);
        for c in &self.checks {
            let _ = write!(out, "  [{:^12}] {} (D = {})", c.verdict, c.name, c.degree_cap);
            if let Some(w) = &c.witness {
                let _ = write!(out, "\n      witness: {}", w);
            }
            for a in &c.assumptions {
                let _ = write!(out, "\n      assuming: {}", a);
            }
            let _ = writeln!(out);
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {}", n);
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

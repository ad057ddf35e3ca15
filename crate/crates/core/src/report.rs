//! Pass/fail records shared by every verifier.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `lhs ≤ rhs`; slack is `rhs - lhs`.
    Inequality,
    /// `lhs = rhs`; slack is `-|lhs - rhs|`.
    Identity,
}

/// One evaluated inequality or identity. `pass ⇔ slack ≥ -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: CheckKind,
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn inequality(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(name.into(), CheckKind::Inequality, lhs, rhs, rhs - lhs, tolerance)
    }

    pub fn identity(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::build(name.into(), CheckKind::Identity, lhs, rhs, -(lhs - rhs).abs(), tolerance)
    }

    fn build(name: String, kind: CheckKind, lhs: f64, rhs: f64, slack: f64, tolerance: f64) -> Self {
        // NaN slack fails
        let pass = slack >= -tolerance;
        CheckReport {
            name,
            kind,
            lhs,
            rhs,
            diff: (lhs - rhs).abs(),
            slack,
            tolerance,
            pass,
            witness: None,
            note: None,
        }
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Prefixes the witness with more context, keeping what was there.
    pub fn in_context(mut self, context: &str) -> Self {
        self.witness = Some(match self.witness.take() {
            Some(w) => format!("{context} {w}"),
            None => context.to_string(),
        });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Header matching [`CheckReport::table_row`].
    pub fn table_header() -> String {
        format!(
            "{:<28} {:>4} {:>23} {:>23} {:>10} {:>8}  {}",
            "check", "ok", "lhs", "rhs", "slack", "tol", "witness"
        )
    }

    pub fn table_row(&self) -> String {
        format!(
            "{:<28} {:>4} {:>23.16e} {:>23.16e} {:>10.2e} {:>8.0e}  {}{}",
            self.name,
            if self.pass { "ok" } else { "FAIL" },
            self.lhs,
            self.rhs,
            self.slack,
            self.tolerance,
            self.witness.as_deref().unwrap_or(""),
            self.note.as_deref().map(|n| format!(" [{n}]")).unwrap_or_default(),
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.table_row())
    }
}

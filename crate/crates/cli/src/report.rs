//! Check records and the files written for a run.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use cartan_core::integral::{Comparison, Criterion};
use cartan_core::quadrature::QuadDiagnostics;
use cartan_core::{Element, VerificationReport};
use serde::{Deserialize, Serialize};

use crate::config::Suite;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: Suite,
    pub name: String,
    /// `None` when the check could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Element>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub windings: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<QuadDiagnostics>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckRecord {
    pub fn scalar(
        suite: Suite,
        name: impl Into<String>,
        residual: f64,
        criterion: Criterion,
    ) -> Self {
        Self {
            suite,
            name: name.into(),
            residual: Some(residual),
            tolerance: criterion.tolerance,
            comparison: criterion.comparison,
            pass: criterion.accepts(residual),
            value: None,
            windings: None,
            diagnostics: None,
            notes: Vec::new(),
            error: None,
        }
    }

    pub fn from_report(suite: Suite, name: impl Into<String>, r: VerificationReport) -> Self {
        Self {
            suite,
            name: name.into(),
            residual: Some(r.residual),
            tolerance: r.tolerance,
            comparison: r.comparison,
            pass: r.pass,
            value: Some(r.value),
            windings: r.windings,
            diagnostics: Some(r.diagnostics),
            notes: r.notes,
            error: None,
        }
    }

    pub fn failed(
        suite: Suite,
        name: impl Into<String>,
        criterion: Criterion,
        error: impl std::fmt::Display,
    ) -> Self {
        Self {
            suite,
            name: name.into(),
            residual: None,
            tolerance: criterion.tolerance,
            comparison: criterion.comparison,
            pass: false,
            value: None,
            windings: None,
            diagnostics: None,
            notes: Vec::new(),
            error: Some(error.to_string()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Replaces the tolerance of an at-most check and recomputes `pass`.
    pub fn override_tolerance(&mut self, tol: f64) {
        if self.comparison == Comparison::AtMost {
            self.tolerance = tol;
            self.pass = self.error.is_none() && self.residual.is_some_and(|r| r <= tol);
        }
    }
}

/// A named value that is reported but not checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub value: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub algebra: String,
    pub frame: String,
    pub seed: u64,
    pub nodes_cap: usize,
    pub suites: Vec<Suite>,
    pub checks: Vec<CheckRecord>,
    pub facts: Vec<Fact>,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

impl RunReport {
    pub fn new(
        algebra: &str,
        frame: &str,
        seed: u64,
        nodes_cap: usize,
        suites: Vec<Suite>,
        checks: Vec<CheckRecord>,
        facts: Vec<Fact>,
    ) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        Self {
            tool: "cartan".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            algebra: algebra.into(),
            frame: frame.into(),
            seed,
            nodes_cap,
            suites,
            checks,
            facts,
            passed,
            failed,
            pass: failed == 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "algebra {}  frame {}  seed {}  nodes cap {}",
            self.algebra, self.frame, self.seed, self.nodes_cap
        );
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .max(5);
        let _ = writeln!(
            s,
            "{:<10} {:<width$} {:>12} {:>3} {:>10}  result",
            "suite", "check", "residual", "", "tolerance"
        );
        for c in &self.checks {
            let op = match c.comparison {
                Comparison::AtMost => "<=",
                Comparison::AtLeast => ">=",
            };
            let residual = c
                .residual
                .map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
            let _ = writeln!(
                s,
                "{:<10} {:<width$} {:>12} {:>3} {:>10.3e}  {}",
                c.suite.name(),
                c.name,
                residual,
                op,
                c.tolerance,
                if c.pass { "pass" } else { "FAIL" }
            );
            if let Some(e) = &c.error {
                let _ = writeln!(s, "{:<10} {:<width$}   error: {e}", "", "");
            }
        }
        for f in &self.facts {
            let _ = writeln!(s, "{}: {}", f.name, f.value);
        }
        let _ = writeln!(s, "{} passed, {} failed", self.passed, self.failed);
        s
    }

    /// `check,level,nodes,change` rows of every refinement series.
    pub fn convergence_csv(&self) -> String {
        let mut s = String::from("suite,check,level,nodes,change\n");
        for c in &self.checks {
            if let Some(d) = &c.diagnostics {
                for (level, step) in d.series.iter().enumerate() {
                    let change = if step.change.is_finite() {
                        format!("{:e}", step.change)
                    } else {
                        String::new()
                    };
                    let _ = writeln!(
                        s,
                        "{},\"{}\",{},{},{}",
                        c.suite.name(),
                        c.name,
                        level,
                        step.nodes,
                        change
                    );
                }
            }
        }
        s
    }

    /// Writes `report.json`, `summary.txt` and `convergence.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (name, body) in [
            ("report.json", self.to_json()),
            ("summary.txt", self.summary()),
            ("convergence.csv", self.convergence_csv()),
        ] {
            let path = dir.join(name);
            fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
        }
        Ok(())
    }
}

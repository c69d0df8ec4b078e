//! Versioned run reports with deterministic JSON rendering.
//!
//! Reports never carry timestamps or machine identifiers: the same command,
//! seed, and inputs must produce byte-identical output. Residuals are
//! rounded to three significant digits in the `max_residual` field; the
//! exact values appear only when verbose rendering is requested.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// One identity check. Non-gating rows are informational: they document
/// variants that are expected to fail and never affect the exit status.
#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub identity: String,
    /// Largest residual seen, scientific notation, 3 significant digits.
    pub max_residual: String,
    pub pass: bool,
    pub gating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_exact: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub pass: bool,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

/// Round to 3 significant digits in scientific notation, e.g. "4.26e-9".
pub fn sig3(x: f64) -> String {
    format!("{x:.2e}")
}

impl Report {
    pub fn new(command: &str, seed: u64, samples: usize, tol: f64) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            samples,
            tol,
            pass: true,
            checks: Vec::new(),
            notes: Vec::new(),
            details: None,
        }
    }

    /// Add a gating check judged against the report tolerance.
    pub fn check(&mut self, name: &str, identity: &str, residual: f64) {
        self.check_with(name, identity, residual, self.tol, true);
    }

    /// Add a check with its own bound; the row gates the exit status only
    /// when `gating` is set.
    pub fn check_with(&mut self, name: &str, identity: &str, residual: f64, tol: f64, gating: bool) {
        let pass = residual.is_finite() && residual <= tol;
        if gating && !pass {
            self.pass = false;
        }
        self.checks.push(CheckEntry {
            name: name.to_string(),
            identity: identity.to_string(),
            max_residual: sig3(residual),
            pass,
            gating,
            residual_exact: Some(residual),
        });
    }

    pub fn note(&mut self, text: &str) {
        self.notes.push(text.to_string());
    }

    /// Attach command-specific payload (components, class labels, ...).
    pub fn attach<T: Serialize>(&mut self, details: &T) {
        self.details = Some(serde_json::to_value(details).expect("serializable details"));
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.gating && !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    /// Render to pretty JSON with a trailing newline. Verbose rendering
    /// keeps the exact residuals; the default drops them.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = self.clone();
        if !verbose {
            for c in &mut out.checks {
                c.residual_exact = None;
            }
        }
        let mut text = serde_json::to_string_pretty(&out).expect("report serializes");
        text.push('\n');
        text
    }
}

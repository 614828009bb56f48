use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub data: String,
    pub domain: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub steps: Option<u32>,
    pub version: String,
}

impl ReportMetadata {
    pub fn new(data: impl Into<String>, domain: impl Into<String>, seed: u64) -> Self {
        ReportMetadata {
            data: data.into(),
            domain: domain.into(),
            seed,
            steps: None,
            version: crate::VERSION.to_string(),
        }
    }

    pub fn with_steps(mut self, steps: u32) -> Self {
        self.steps = Some(steps);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub check: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub samples: usize,
}

impl ReportRow {
    /// `pass` is set from `max_residual ≤ tolerance`; a NaN residual fails.
    pub fn new(check: impl Into<String>, max_residual: f64, tolerance: f64, samples: usize) -> Self {
        ReportRow { check: check.into(), max_residual, tolerance, pass: max_residual <= tolerance, samples }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub metadata: ReportMetadata,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub rows: Vec<ReportRow>,
}

impl VerificationReport {
    pub fn new(metadata: ReportMetadata, rows: Vec<ReportRow>) -> Self {
        VerificationReport { metadata, notes: Vec::new(), rows }
    }

    pub fn all_pass(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidData(format!("bad report: {e}")))
    }

    /// One line per row, for terminals.
    pub fn summary(&self) -> String {
        let width = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
        let mut out = format!("{} on {}\n", self.metadata.data, self.metadata.domain);
        for r in &self.rows {
            out += &format!(
                "{:<4} {:<width$}  residual {:.3e}  tol {:.1e}  n={}\n",
                if r.pass { "ok" } else { "FAIL" },
                r.check,
                r.max_residual,
                r.tolerance,
                r.samples
            );
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out
    }
}

//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct SampleCounts {
    pub attempted: u32,
    pub valid: u32,
    pub skipped: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailureRecord {
    pub index: u32,
    /// The offending input (chart points as `p/q` coordinate strings).
    pub input: serde_json::Value,
    pub residual: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub artifact_version: String,
    pub check: String,
    pub backend: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chart: Option<String>,
    pub couplings: [String; 2],
    pub seed: u64,
    pub samples: SampleCounts,
    pub failures: Vec<FailureRecord>,
    /// Largest residual magnitude observed (exact backends report the
    /// magnitude of an exactly-zero residual as 0).
    pub max_residual: f64,
    pub tolerance: f64,
    pub elapsed_ms: u128,
    pub notes: Vec<String>,
    /// Check-specific payload (per-sector dimensions, eigenvalue arrays).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut out = format!(
            "{verdict} {} backend={} couplings=({},{}) seed={} samples={}/{} skipped={} max_residual={:.3e} ({} ms)\n",
            self.check,
            self.backend,
            self.couplings[0],
            self.couplings[1],
            self.seed,
            self.samples.valid,
            self.samples.attempted,
            self.samples.skipped,
            self.max_residual,
            self.elapsed_ms,
        );
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        for f in self.failures.iter().take(10) {
            out.push_str(&format!(
                "  failure #{}: residual={:.3e} {} input={}\n",
                f.index, f.residual, f.detail, f.input
            ));
        }
        if self.failures.len() > 10 {
            out.push_str(&format!(
                "  ... {} more failures\n",
                self.failures.len() - 10
            ));
        }
        out
    }
}

/// Accumulates one campaign's outcomes.
pub struct ReportBuilder {
    report: VerificationReport,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(
        check: &str,
        backend: &str,
        chart: Option<String>,
        couplings: [String; 2],
        seed: u64,
        tolerance: f64,
    ) -> Self {
        ReportBuilder {
            report: VerificationReport {
                artifact_version: ARTIFACT_VERSION.to_string(),
                check: check.to_string(),
                backend: backend.to_string(),
                chart,
                couplings,
                seed,
                samples: SampleCounts::default(),
                failures: Vec::new(),
                max_residual: 0.0,
                tolerance,
                elapsed_ms: 0,
                notes: Vec::new(),
                details: None,
            },
            started: Instant::now(),
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.report.notes.push(text.into());
    }

    pub fn details(&mut self, value: serde_json::Value) {
        self.report.details = Some(value);
    }

    pub fn skip_samples(&mut self, n: u32) {
        self.report.samples.attempted += n;
        self.report.samples.skipped += n;
    }

    /// Records one verdict; `residual` is the observed magnitude and
    /// `passed` the backend-appropriate zero test.
    pub fn record(
        &mut self,
        passed: bool,
        residual: f64,
        input: serde_json::Value,
        detail: impl Into<String>,
    ) {
        self.report.samples.attempted += 1;
        self.report.samples.valid += 1;
        self.report.max_residual = self.report.max_residual.max(residual);
        if !passed {
            self.report.failures.push(FailureRecord {
                index: self.report.samples.attempted - 1,
                input,
                residual,
                detail: detail.into(),
            });
        }
    }

    pub fn finish(mut self) -> VerificationReport {
        self.report.elapsed_ms = self.started.elapsed().as_millis();
        self.report
    }
}

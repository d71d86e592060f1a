//! Sweep report type and its two serializations. JSON is the primary
//! machine format; CSV is a single header-plus-row table for spreadsheet
//! import. Floats go through the shortest round-trip formatting in both.

use std::path::Path;

use serde::Serialize;

/// Output format for `verify --out`.
#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Header row plus one data row.
    Csv,
    /// Pretty-printed object with lower_snake_case keys.
    Json,
}

/// Swept interval, inclusive of both written endpoints.
#[derive(Serialize)]
pub struct Domain {
    pub min: f64,
    pub max: f64,
}

/// Result of one `verify` run. `pass` is exactly
/// `max_rel_residual <= tol`; the exit code mirrors it.
#[derive(Serialize)]
pub struct SweepReport {
    pub identity_id: String,
    pub samples: usize,
    pub domain: Domain,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub worst_point: f64,
    pub pass: bool,
    pub elapsed_ms: u64,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        format!(
            "identity_id,samples,domain_min,domain_max,max_abs_residual,\
             max_rel_residual,worst_point,pass,elapsed_ms\n\
             {},{},{},{},{},{},{},{},{}\n",
            self.identity_id,
            self.samples,
            self.domain.min,
            self.domain.max,
            self.max_abs_residual,
            self.max_rel_residual,
            self.worst_point,
            self.pass,
            self.elapsed_ms,
        )
    }

    pub fn write(&self, path: &Path, format: Format) -> std::io::Result<()> {
        let body = match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        };
        std::fs::write(path, body)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} samples on [{}, {}], max rel residual {:.3e} at {}, {} ms: {}",
            self.identity_id,
            self.samples,
            self.domain.min,
            self.domain.max,
            self.max_rel_residual,
            self.worst_point,
            self.elapsed_ms,
            if self.pass { "pass" } else { "FAIL" },
        )
    }
}

use std::io::Write;

use bvk_core::ResidualReport;
use serde::{Deserialize, Serialize};

use crate::config::Format;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_HEADER: [&str; 11] = [
    "suite",
    "case_id",
    "anchor",
    "grid",
    "points",
    "max_residual",
    "mean_residual",
    "tolerance",
    "pass",
    "wall_time_ms",
    "metrics",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub reports: Vec<ResidualReport>,
}

pub fn emit_report(reports: &[ResidualReport], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let file = ReportFile { schema_version: SCHEMA_VERSION, reports: reports.to_vec() };
            serde_json::to_writer_pretty(&mut *out, &file)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in reports {
                let metrics: Vec<String> = r.metrics.iter().map(|(k, v)| format!("{k}={v:e}")).collect();
                w.write_record([
                    r.suite.clone(),
                    r.case_id.clone(),
                    r.anchor.clone(),
                    r.grid.description.clone(),
                    r.grid.points.to_string(),
                    format!("{:e}", r.max_residual),
                    format!("{:e}", r.mean_residual),
                    format!("{:e}", r.tolerance),
                    r.pass.to_string(),
                    format!("{:.3}", r.wall_time_ms),
                    metrics.join(";"),
                ])?;
            }
            w.flush()
        }
    }
}

pub fn parse_json(s: &str) -> serde_json::Result<ReportFile> {
    serde_json::from_str(s)
}

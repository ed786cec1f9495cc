//! CSV and JSON emission. Numbers use the shortest decimal form that reads
//! back to the same binary64 value.

use std::io::Write;

use serde::Serialize;

use crate::{Failure, Format};

/// Bumped whenever the column layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub family: &'static str,
    pub a: f64,
    pub m: i64,
    pub terms_used: usize,
    pub z_approx_re: f64,
    pub z_approx_im: f64,
    pub z_refined_re: Option<f64>,
    pub z_refined_im: Option<f64>,
    pub eps1: Option<f64>,
    pub eps2: Option<f64>,
    pub residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationRow {
    pub family: &'static str,
    pub a: f64,
    pub m: i64,
    pub z_approx_re: f64,
    pub z_approx_im: f64,
    pub z_ref_re: f64,
    pub z_ref_im: f64,
    pub g1_approx: f64,
    pub g1_ref: f64,
    pub g2_approx: Option<f64>,
    pub g2_ref: Option<f64>,
    pub eps1: f64,
    pub eps2: Option<f64>,
}

/// Write `rows` with a `#` metadata line (CSV) or as a JSON array.
pub fn emit<T: Serialize>(out: impl Write, format: Format, meta: &str, rows: &[T]) -> Result<(), Failure> {
    let io = |e: &dyn std::fmt::Display| Failure::Io(e.to_string());
    match format {
        Format::Csv => {
            let mut out = out;
            writeln!(out, "# pcfz v{SCHEMA_VERSION} {meta}")?;
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r).map_err(|e| io(&e))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows).map_err(|e| io(&e))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

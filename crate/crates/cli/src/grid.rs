//! Phase of `U(a, z)` on a rectangular grid, for phase portraits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use pcfz_core::pcf_eval;
use rayon::prelude::*;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub a: f64,
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub nx: usize,
    pub ny: usize,
}

fn axis(range: (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![range.0];
    }
    let step = (range.1 - range.0) / (n - 1) as f64;
    (0..n)
        .map(|k| if k == n - 1 { range.1 } else { range.0 + step * k as f64 })
        .collect()
}

fn check(spec: &GridSpec) -> Result<(), Failure> {
    let ok_range = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
    if !ok_range(spec.re) || !ok_range(spec.im) {
        return Err(Failure::Usage("grid ranges must be finite with min <= max".into()));
    }
    if spec.nx == 0 || spec.ny == 0 {
        return Err(Failure::Usage("--nx and --ny must be at least 1".into()));
    }
    if (spec.nx > 1 && spec.re.0 == spec.re.1) || (spec.ny > 1 && spec.im.0 == spec.im.1) {
        return Err(Failure::Usage("an empty range needs a single grid line".into()));
    }
    Ok(())
}

/// Rows `x,y,arg` ordered by `y` then `x`, starting at `(re_min, im_min)`.
pub fn phase_rows(spec: &GridSpec) -> Result<Vec<(f64, f64, f64)>, Failure> {
    check(spec)?;
    let xs = axis(spec.re, spec.nx);
    let ys = axis(spec.im, spec.ny);
    let rows: Vec<Vec<(f64, f64, f64)>> = ys
        .par_iter()
        .map(|&y| {
            xs.iter()
                .map(|&x| {
                    let v = pcf_eval::eval_u(spec.a, Complex64::new(x, y))?;
                    Ok((x, y, v.value.arg()))
                })
                .collect::<Result<Vec<_>, Failure>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn phase_grid(spec: &GridSpec, out: Option<&Path>) -> Result<(), Failure> {
    let rows = phase_rows(spec)?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = sink;
    writeln!(
        w,
        "# pcfz v{} command=phase-grid a={} re=[{},{}] im=[{},{}] nx={} ny={}",
        crate::output::SCHEMA_VERSION,
        spec.a,
        spec.re.0,
        spec.re.1,
        spec.im.0,
        spec.im.1,
        spec.nx,
        spec.ny
    )?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["x", "y", "arg"]).map_err(|e| Failure::Io(e.to_string()))?;
    for (x, y, arg) in rows {
        csv.serialize((x, y, arg)).map_err(|e| Failure::Io(e.to_string()))?;
    }
    csv.flush()?;
    Ok(())
}

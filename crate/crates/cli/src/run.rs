//! The `zeros` and `validate` commands.

use std::io;

use log::{debug, info, warn};
use num_complex::Complex64;
use pcfz_core::zeros::{self, ExpansionOptions, FamilyKind, ZeroApproximation};
use pcfz_core::{pcf_eval, refine, Error};
use rayon::prelude::*;

use crate::output::{self, OutputRecord, ValidationRow};
use crate::{oracle, FamilyArg, Failure, Reference, Selection};

const DEFAULT_COUNT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Task {
    kind: FamilyKind,
    m: i64,
}

fn is_odd_integer(u: f64) -> bool {
    u == u.round() && (u as i64) % 2 == 1
}

fn families(sel: &Selection) -> Result<Vec<FamilyKind>, Failure> {
    let a = sel.a;
    if !a.is_finite() || a == 0.0 {
        return Err(Failure::Usage(format!("--a must be finite and non-zero, got {a}")));
    }
    let need_negative = |kind: FamilyKind| {
        if a < 0.0 {
            Ok(vec![kind])
        } else {
            Err(Failure::Usage(format!("family {} needs a < 0", kind.name())))
        }
    };
    match sel.family {
        FamilyArg::Auto if a > 0.0 => Ok(vec![FamilyKind::AposComplex]),
        FamilyArg::Auto if is_odd_integer(-2.0 * a) => {
            info!("u = {} is an odd integer: only the positive real zeros are listed", -2.0 * a);
            Ok(vec![FamilyKind::AnegPositive])
        }
        FamilyArg::Auto => Ok(vec![
            FamilyKind::AnegPositive,
            FamilyKind::AnegNonpositive,
            FamilyKind::AnegComplex,
        ]),
        FamilyArg::Apos if a > 0.0 => Ok(vec![FamilyKind::AposComplex]),
        FamilyArg::Apos => Err(Failure::Usage("family apos needs a > 0".into())),
        FamilyArg::Pos => need_negative(FamilyKind::AnegPositive),
        FamilyArg::Nonpos => need_negative(FamilyKind::AnegNonpositive),
        FamilyArg::Complex => {
            let kinds = need_negative(FamilyKind::AnegComplex)?;
            if is_odd_integer(-2.0 * a) {
                return Err(Error::PolynomialCase(-2.0 * a).into());
            }
            Ok(kinds)
        }
    }
}

fn plan(sel: &Selection, opts: &ExpansionOptions) -> Result<Vec<Task>, Failure> {
    let mut tasks = Vec::new();
    for kind in families(sel)? {
        let ms: Vec<i64> = match &sel.m {
            Some(ms) => ms.clone(),
            None => {
                let first = zeros::first_index(kind, sel.a);
                let total = match kind {
                    FamilyKind::AnegPositive => zeros::count_positive(-2.0 * sel.a),
                    FamilyKind::AnegNonpositive => zeros::count_nonpositive(sel.a, opts)?,
                    _ => sel.count.unwrap_or(DEFAULT_COUNT),
                };
                let n = sel.count.map_or(total, |c| c.min(total));
                (first..first + n as i64).collect()
            }
        };
        debug!("{}: indices {ms:?}", kind.name());
        tasks.extend(ms.into_iter().map(|m| Task { kind, m }));
    }
    Ok(tasks)
}

fn options(sel: &Selection) -> ExpansionOptions {
    ExpansionOptions {
        terms: usize::from(sel.terms),
        refine_airy: !sel.raw_airy,
    }
}

fn polish(a: f64, approx: &ZeroApproximation) -> Result<refine::RefinedZero, Error> {
    let r = refine::t_iterate_with(a, approx.z, &refine::IterOptions::default())?;
    if r.converged {
        Ok(r)
    } else {
        Err(Error::NonConvergence {
            last: r.value,
            residual: r.residual,
            iterations: r.iterations,
        })
    }
}

fn zero_record(a: f64, task: Task, opts: &ExpansionOptions, refine_on: bool) -> Result<OutputRecord, Error> {
    let approx = zeros::zero(task.kind, a, task.m, opts)?;
    let mut rec = OutputRecord {
        family: task.kind.name(),
        a,
        m: task.m,
        terms_used: approx.terms_used,
        z_approx_re: approx.z.re,
        z_approx_im: approx.z.im + 0.0,
        z_refined_re: None,
        z_refined_im: None,
        eps1: None,
        eps2: None,
        residual: None,
    };
    if refine_on {
        let r = polish(a, &approx)?;
        let v = pcf_eval::metrics(task.m, approx.z, r.value)?;
        rec.z_refined_re = Some(r.value.re);
        rec.z_refined_im = Some(r.value.im + 0.0);
        rec.eps1 = Some(v.eps1);
        rec.eps2 = v.eps2;
        rec.residual = Some(r.residual);
    }
    Ok(rec)
}

/// Print failures, then hand back the one that decides the exit code.
fn report<T>(results: Vec<(Task, Result<T, Error>)>) -> (Vec<T>, Option<Failure>) {
    let mut rows = Vec::new();
    let mut failure = None;
    for (task, r) in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                warn!("{} m = {}: {e}", task.kind.name(), task.m);
                eprintln!("pcfz: {} m = {}: {e}", task.kind.name(), task.m);
                failure.get_or_insert(Failure::from(e));
            }
        }
    }
    (rows, failure)
}

pub fn zeros(sel: &Selection, refine_on: bool) -> Result<(), Failure> {
    let opts = options(sel);
    let tasks = plan(sel, &opts)?;
    let results: Vec<_> = tasks
        .par_iter()
        .map(|&t| (t, zero_record(sel.a, t, &opts, refine_on)))
        .collect();
    let (rows, failure) = report(results);
    let meta = format!(
        "command=zeros a={} family={:?} terms={} refine={refine_on}",
        sel.a, sel.family, sel.terms
    );
    output::emit(io::stdout().lock(), sel.format, &meta.to_lowercase(), &rows)?;
    failure.map_or(Ok(()), Err)
}

fn validation_row(
    a: f64,
    task: Task,
    opts: &ExpansionOptions,
    reference: &Option<Vec<f64>>,
    refine_on: bool,
) -> Result<ValidationRow, Error> {
    let approx = zeros::zero(task.kind, a, task.m, opts)?;
    let (z_approx, z_ref) = match reference {
        None => (approx.z, polish(a, &approx)?.value),
        Some(nodes) => {
            let idx = usize::try_from(task.m)
                .ok()
                .and_then(|m| nodes.len().checked_sub(m))
                .ok_or(Error::Index {
                    index: task.m,
                    lo: 1,
                    hi: nodes.len() as i64,
                })?;
            let z = if refine_on { polish(a, &approx)?.value } else { approx.z };
            (z, Complex64::new(nodes[idx], 0.0))
        }
    };
    let v = pcf_eval::metrics(task.m, z_approx, z_ref)?;
    Ok(ValidationRow {
        family: task.kind.name(),
        a,
        m: task.m,
        z_approx_re: z_approx.re,
        z_approx_im: z_approx.im + 0.0,
        z_ref_re: z_ref.re,
        z_ref_im: z_ref.im,
        g1_approx: v.g1_approx,
        g1_ref: v.g1_ref,
        g2_approx: v.g2_approx,
        g2_ref: v.g2_ref,
        eps1: v.eps1,
        eps2: v.eps2,
    })
}

pub fn validate(sel: &Selection, reference: Reference, refine_on: bool) -> Result<(), Failure> {
    let opts = options(sel);
    let tasks = plan(sel, &opts)?;
    let nodes = match reference {
        Reference::Refined => None,
        Reference::Oracle => {
            let n = oracle::hermite_degree(sel.a).ok_or_else(|| {
                Failure::Usage("the oracle reference needs a = -n - 1/2 with n >= 1".into())
            })?;
            if tasks.iter().any(|t| t.kind != FamilyKind::AnegPositive) {
                return Err(Failure::Usage("the oracle reference covers the positive real zeros only".into()));
            }
            Some(oracle::hermite_nodes(n))
        }
    };
    let results: Vec<_> = tasks
        .par_iter()
        .map(|&t| (t, validation_row(sel.a, t, &opts, &nodes, refine_on)))
        .collect();
    let (rows, failure) = report(results);
    let meta = format!(
        "command=validate a={} family={:?} terms={} reference={:?} refine={refine_on}",
        sel.a, sel.family, sel.terms, reference
    );
    output::emit(io::stdout().lock(), sel.format, &meta.to_lowercase(), &rows)?;
    failure.map_or(Ok(()), Err)
}

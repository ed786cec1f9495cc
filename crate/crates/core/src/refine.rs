//! Polishing of zero approximations by the fixed-point iteration
//!
//! `T(z) = z - q^{-1} arctan(q U(a,z) / U'(a,z))`, `q = (-z^2/4 - a)^{1/2}`,
//!
//! which converges with order four, and traversal of a zero sequence by the
//! displacement `H(z) = z + pi / q` between neighbouring zeros.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pcf_eval;

pub const MAX_ITER: usize = 20;

/// Iteration stops once `|T(z) - z| <= TOL (1 + |z|)`.
pub const TOL: f64 = 1e-13;

/// Iterates with `|z^2/4 + a| < TURNING_GUARD (1 + |a|)` are rejected.
pub const TURNING_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedZero {
    pub value: Complex64,
    pub seed: Complex64,
    /// Applications of `T`, the final confirming one included.
    pub iterations: usize,
    /// Size of the last correction `|T(z) - z|`.
    pub residual: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterOptions {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for IterOptions {
    fn default() -> Self {
        Self {
            max_iter: MAX_ITER,
            tol: TOL,
        }
    }
}

/// Principal `(-z^2/4 - a)^{1/2}`.
pub fn local_q(a: f64, z: Complex64) -> Result<Complex64> {
    let w = -z * z / 4.0 - a;
    if w.norm() < TURNING_GUARD * (1.0 + a.abs()) {
        return Err(Error::TurningPoint(z));
    }
    Ok(w.sqrt())
}

/// One step `T(z) - z`, limited to `|step| < pi / (2|q|)` by halving.
pub fn t_step(a: f64, z: Complex64) -> Result<Complex64> {
    let q = local_q(a, z)?;
    let v = pcf_eval::eval_u(a, z)?;
    if v.derivative.norm() == 0.0 {
        return Err(Error::DivisionHazard(z));
    }
    let mut step = -(q * v.value / v.derivative).atan() / q;
    let limit = PI / (2.0 * q.norm());
    while step.norm() >= limit {
        step *= 0.5;
    }
    if z.im == 0.0 {
        step.im = 0.0;
    }
    Ok(step)
}

/// Iterate `T` from `z0`; reports non-convergence through the flag.
pub fn t_iterate_with(a: f64, z0: Complex64, opts: &IterOptions) -> Result<RefinedZero> {
    let mut z = z0;
    let mut residual = f64::INFINITY;
    for k in 1..=opts.max_iter {
        let step = t_step(a, z)?;
        z += step;
        residual = step.norm();
        if residual <= opts.tol * (1.0 + z.norm()) {
            return Ok(RefinedZero {
                value: z,
                seed: z0,
                iterations: k,
                residual,
                converged: true,
            });
        }
    }
    Ok(RefinedZero {
        value: z,
        seed: z0,
        iterations: opts.max_iter,
        residual,
        converged: false,
    })
}

/// Iterate `T` from `z0` with the default limits.
pub fn t_iterate(a: f64, z0: Complex64) -> Result<RefinedZero> {
    let r = t_iterate_with(a, z0, &IterOptions::default())?;
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

/// The branch of `q` at `z` closest to `reference`, or, without one, the
/// branch for which `z + pi/q` moves away from the origin.
fn oriented_q(a: f64, z: Complex64, reference: Option<Complex64>) -> Result<Complex64> {
    let q = local_q(a, z)?;
    let flip = match reference {
        Some(r) => (q * r.conj()).re < 0.0,
        None => (z.conj() / q).re < 0.0,
    };
    Ok(if flip { -q } else { q })
}

/// `count` consecutive zeros starting with the one nearest `z_start`,
/// ordered by increasing modulus.
pub fn sweep(a: f64, z_start: Complex64, count: usize) -> Result<Vec<RefinedZero>> {
    if count == 0 {
        return Err(Error::InvalidArgument("sweep needs count >= 1".into()));
    }
    let mut out = vec![t_iterate(a, z_start)?];
    let mut q_prev = None;
    while out.len() < count {
        let z = out[out.len() - 1].value;
        let q = oriented_q(a, z, q_prev)?;
        q_prev = Some(q);
        let next = t_iterate(a, z + PI / q)?;
        let quarter = 0.25 * PI / q.norm();
        if out.iter().any(|p| (p.value - next.value).norm() < quarter) || next.value.norm() <= z.norm() {
            return Err(Error::ChainBreak(next.value));
        }
        out.push(next);
    }
    Ok(out)
}

/// Whether `U(a, .)` winds once around `z` on a circle well inside the
/// local zero spacing.
pub fn certify(a: f64, z: Complex64) -> Result<bool> {
    let q = local_q(a, z)?;
    let radius = (0.05 * PI / q.norm()).min(0.05 * (1.0 + z.norm()));
    let w = pcf_eval::winding_number(a, z, radius, 32)?;
    Ok((w - 1.0).abs() < 1e-6)
}

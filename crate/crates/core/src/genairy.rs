//! Zeros of the Airy combination
//! `Ai(u, z) = e^{(3u-1) pi i/6} Ai_1(z) + e^{-(3u-1) pi i/6} Ai_{-1}(z)`,
//! which is real on the real axis where it equals
//! `sin(u pi/2) Ai(z) + cos(u pi/2) Bi(z)`, and satisfies
//! `Ai(u + 2n, z) = (-1)^n Ai(u, z)`.
//!
//! Three families are handled: the non-positive real zeros, the single
//! positive zero that exists for some `u`, and the non-real zeros in the
//! first quadrant (the fourth-quadrant ones are their conjugates).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::airy::{self, ScaledAiry};
use crate::error::{Error, Result};

/// Below this `|t|` the large-`t` series for `T(t)` is flagged unreliable.
pub const T_SERIES_MIN: f64 = 2.0;

/// Default half-width of the band around odd integers `u` treated as the
/// polynomial case.
pub const POLYNOMIAL_GUARD: f64 = 1e-8;

/// Iteration cap for [`refine_zero`].
pub const MAX_REFINE_ITER: usize = 30;

/// Relative step size at which refinement stops.
pub const REFINE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroKind {
    NegativeReal,
    SolePositive,
    ComplexFirstQuadrant,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenAiryZero {
    pub m: u32,
    pub kind: ZeroKind,
    pub value: Complex64,
    pub refined: bool,
    /// `|1 + e^{(3u-1) pi i/3} Ai_1(value) / Ai_{-1}(value)|`.
    pub residual: f64,
}

/// Index bookkeeping for a given `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexShift {
    pub mu: f64,
    pub vartheta: u8,
    pub m_plus: i64,
    pub m_minus: i64,
}

/// `T(t)` with a flag telling whether `|t|` is large enough to trust it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TValue {
    pub value: Complex64,
    pub reliable: bool,
}

/// Result of solving the identity for a nearby zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refinement {
    pub value: Complex64,
    /// `|value - approx|`.
    pub delta: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// `u mod 2` in `[0, 2)`.
fn reduce(u: f64) -> f64 {
    u.rem_euclid(2.0)
}

/// `(sin(u pi/2), cos(u pi/2))` with the argument reduced exactly first.
fn sin_cos_half_pi(u: f64) -> (f64, f64) {
    let r = u.rem_euclid(4.0);
    if r != r.floor() {
        return (0.5 * PI * r).sin_cos();
    }
    match r as u8 {
        0 => (0.0, 1.0),
        1 => (1.0, 0.0),
        2 => (0.0, -1.0),
        _ => (-1.0, 0.0),
    }
}

fn check_u(u: f64) -> Result<()> {
    if u.is_finite() && u >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("u must be finite and non-negative, got {u}")))
    }
}

/// The period-2 index shift: `2u` on `[0, 4/3)`, `2u - 4` on `[4/3, 2]`.
pub fn mu(u: f64) -> f64 {
    let r = reduce(u);
    if r < 4.0 / 3.0 {
        2.0 * r
    } else {
        2.0 * r - 4.0
    }
}

/// 1 when `1 < u + 2n < 4/3` for some integer `n`, otherwise 0.
pub fn vartheta(u: f64) -> u8 {
    let r = reduce(u);
    u8::from(r > 1.0 && r < 4.0 / 3.0)
}

pub fn index_shift(u: f64) -> IndexShift {
    IndexShift {
        mu: mu(u),
        vartheta: vartheta(u),
        m_plus: ((u + 1.0) / 4.0).floor() as i64,
        m_minus: ((u - 1.0) / 4.0).floor() as i64,
    }
}

/// `T(t) ~ t^{2/3} (1 + 5/(48 t^2) - 5/(36 t^4) + ...)`, principal branch.
pub fn t_series(t: Complex64) -> TValue {
    let (value, _) = airy::t_series_raw(t);
    TValue {
        value,
        reliable: t.norm() >= T_SERIES_MIN,
    }
}

/// `Ai(u, z)` up to the constant factor `e^{(3u-1) pi i/6}`, i.e.
/// `e^{(3u-1) pi i/3} Ai_1(z) + Ai_{-1}(z)`, together with `Ai_{-1}(z)`.
fn identity_parts(u: f64, z: Complex64) -> Result<(ScaledAiry, ScaledAiry)> {
    let phase = Complex64::from_polar(1.0, (u - 1.0 / 3.0) * PI);
    let a1 = airy::eval_ai_rotated_scaled(1, z)?.rotate(phase, phase);
    let am1 = airy::eval_ai_rotated_scaled(-1, z)?;
    Ok((a1.add(am1), am1))
}

/// `|1 + e^{(3u-1) pi i/3} Ai_1(z) / Ai_{-1}(z)|`.
pub fn identity_residual(u: f64, z: Complex64) -> Result<f64> {
    let (f, am1) = identity_parts(u, z)?;
    if am1.value.norm() == 0.0 {
        return Err(Error::DivisionHazard(z));
    }
    Ok((f.value / am1.value).norm() * (f.log_scale - am1.log_scale).exp())
}

/// `sin(u pi/2) Ai(x) + cos(u pi/2) Bi(x)` and its derivative.
fn real_combination(u: f64, x: f64) -> Result<(f64, f64)> {
    let (s, c) = sin_cos_half_pi(u);
    let ai = airy::eval_ai(Complex64::new(x, 0.0))?;
    let bi = airy::eval_bi_real(x)?;
    Ok((
        s * ai.value.re + c * bi.value.re,
        s * ai.derivative.re + c * bi.derivative.re,
    ))
}

/// Safeguarded Newton iteration for a real root inside `[lo, hi]`, where the
/// function changes sign.
fn bracketed_root(u: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, _) = real_combination(u, lo)?;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (f, d) = real_combination(u, x)?;
        if f == 0.0 {
            return Ok(x);
        }
        if (f < 0.0) == (flo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / d;
        let next = if d != 0.0 && newton > lo.min(hi) && newton < lo.max(hi) {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 1e-16 * (1.0 + x.abs()) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NonConvergence {
        last: Complex64::new(x, 0.0),
        residual: real_combination(u, x)?.0.abs(),
        iterations: 200,
    })
}

/// Newton iteration on the real form, starting from `x0`.
fn real_newton(u: f64, x0: f64) -> Result<f64> {
    let mut x = x0;
    for _ in 0..MAX_REFINE_ITER {
        let (f, d) = real_combination(u, x)?;
        if d == 0.0 {
            return Err(Error::DivisionHazard(Complex64::new(x, 0.0)));
        }
        let step = f / d;
        x -= step;
        if step.abs() <= REFINE_TOL * (1.0 + x.abs()) {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        last: Complex64::new(x, 0.0),
        residual: real_combination(u, x)?.0.abs(),
        iterations: MAX_REFINE_ITER,
    })
}

fn is_four_thirds(u: f64) -> bool {
    (reduce(u) - 4.0 / 3.0).abs() <= 4.0 * f64::EPSILON * (1.0 + u)
}

/// Largest non-positive zero, found by scanning down from the origin.
fn first_non_positive(u: f64) -> Result<f64> {
    if is_four_thirds(u) {
        return Ok(0.0);
    }
    const STEP: f64 = 0.05;
    let (f0, _) = real_combination(u, 0.0)?;
    if f0 == 0.0 {
        return Ok(0.0);
    }
    let mut x = 0.0;
    loop {
        let next = x - STEP;
        let (f, _) = real_combination(u, next)?;
        if f == 0.0 {
            return Ok(next);
        }
        if (f < 0.0) != (f0 < 0.0) {
            return bracketed_root(u, next, x);
        }
        x = next;
        if x < -10.0 {
            return Err(Error::NonConvergence {
                last: Complex64::new(x, 0.0),
                residual: f.abs(),
                iterations: 200,
            });
        }
    }
}

/// The `m`-th non-positive zero (`m >= 1`), ordered downwards from 0.
///
/// For `m >= 2` the value is `-T(3 pi tau_m / 8)` with `tau_m = 4m - 3 + mu(u)`,
/// refined on request. For `m = 1` there is no asymptotic form and the zero
/// is always computed numerically.
pub fn neg_zeros(u: f64, m: u32, refine: bool) -> Result<GenAiryZero> {
    check_u(u)?;
    if m == 0 {
        return Err(Error::Index {
            index: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let (value, refined) = if m == 1 {
        (first_non_positive(u)?, true)
    } else {
        let tau = 4.0 * f64::from(m) - 3.0 + mu(u);
        let seed = -t_series(Complex64::new(3.0 * PI * tau / 8.0, 0.0)).value.re;
        if refine {
            (real_newton(u, seed)?, true)
        } else {
            (seed, false)
        }
    };
    let z = Complex64::new(value, 0.0);
    Ok(GenAiryZero {
        m,
        kind: ZeroKind::NegativeReal,
        value: z,
        refined,
        residual: identity_residual(u, z)?,
    })
}

/// The unique positive zero, present exactly when `vartheta(u) = 1`. When
/// `u + 2n = 4/3` the zero sits at the origin and is returned as 0.
pub fn sole_positive_zero(u: f64) -> Result<Option<GenAiryZero>> {
    check_u(u)?;
    let value = if is_four_thirds(u) {
        0.0
    } else if vartheta(u) == 0 {
        return Ok(None);
    } else {
        let (f0, _) = real_combination(u, 0.0)?;
        let mut b = 1.0;
        loop {
            let (fb, _) = real_combination(u, b)?;
            if (fb < 0.0) != (f0 < 0.0) || fb == 0.0 {
                break;
            }
            b *= 2.0;
            if b > 64.0 {
                return Ok(None);
            }
        }
        bracketed_root(u, 0.0, b)?
    };
    let z = Complex64::new(value, 0.0);
    Ok(Some(GenAiryZero {
        m: 0,
        kind: ZeroKind::SolePositive,
        value: z,
        refined: true,
        residual: identity_residual(u, z)?,
    }))
}

/// Distance from `u` to the nearest odd integer.
fn odd_distance(u: f64) -> f64 {
    let r = (u - 1.0).rem_euclid(2.0);
    r.min(2.0 - r)
}

/// Leading asymptotic value of the `m`-th first-quadrant zero (`m >= 1`).
///
/// Refuses `u` within `guard` of an odd integer, where there are no non-real
/// zeros.
pub fn complex_zero_seed(u: f64, m: u32, guard: f64) -> Result<TValue> {
    check_u(u)?;
    if m == 0 {
        return Err(Error::Index {
            index: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    if odd_distance(u) <= guard {
        return Err(Error::PolynomialCase(u));
    }
    let (_, c) = sin_cos_half_pi(u);
    let shift = index_shift(u);
    let mf = f64::from(m);
    let re = if c > 0.0 {
        4.0 * mf + 4.0 * shift.m_plus as f64 - u - 1.0
    } else {
        4.0 * mf + 4.0 * shift.m_minus as f64 - u + 1.0
    };
    let tau = Complex64::new(re, 2.0 / PI * (2.0 * c.abs()).ln());
    let t = t_series(tau * (3.0 * PI / 8.0));
    Ok(TValue {
        value: Complex64::from_polar(1.0, PI / 3.0) * t.value,
        reliable: t.reliable,
    })
}

/// The `m`-th non-real zero in the first quadrant, with the default
/// polynomial-case guard band.
pub fn complex_zeros(u: f64, m: u32, refine: bool) -> Result<GenAiryZero> {
    complex_zeros_guarded(u, m, refine, POLYNOMIAL_GUARD)
}

pub fn complex_zeros_guarded(u: f64, m: u32, refine: bool, guard: f64) -> Result<GenAiryZero> {
    let seed = complex_zero_seed(u, m, guard)?;
    let (value, residual, refined) = if refine {
        let r = refine_zero(u, seed.value)?;
        (r.value, r.residual, true)
    } else {
        (seed.value, identity_residual(u, seed.value)?, false)
    };
    Ok(GenAiryZero {
        m,
        kind: ZeroKind::ComplexFirstQuadrant,
        value,
        refined,
        residual,
    })
}

/// Damped Newton iteration on `e^{(3u-1) pi i/3} Ai_1(z) + Ai_{-1}(z)` from
/// `approx`.
pub fn refine_zero(u: f64, approx: Complex64) -> Result<Refinement> {
    check_u(u)?;
    if !approx.is_finite() {
        return Err(Error::Domain(approx));
    }
    let eval = |z: Complex64| -> Result<(Complex64, f64)> {
        let (f, am1) = identity_parts(u, z)?;
        if f.derivative.norm() == 0.0 {
            return Err(Error::DivisionHazard(z));
        }
        let res = if am1.value.norm() == 0.0 {
            f64::INFINITY
        } else {
            (f.value / am1.value).norm() * (f.log_scale - am1.log_scale).exp()
        };
        Ok((f.value / f.derivative, res))
    };
    let mut z = approx;
    let (mut step, mut res) = eval(z)?;
    for it in 1..=MAX_REFINE_ITER {
        let mut damping = 1.0;
        let (mut cand, mut cand_eval);
        loop {
            cand = z - step * damping;
            cand_eval = eval(cand)?;
            if cand_eval.1 <= res || damping < 1e-3 {
                break;
            }
            damping *= 0.5;
        }
        let moved = (cand - z).norm();
        z = cand;
        (step, res) = cand_eval;
        if moved <= REFINE_TOL * (1.0 + z.norm()) {
            return Ok(Refinement {
                value: z,
                delta: (z - approx).norm(),
                residual: res,
                iterations: it,
            });
        }
    }
    Err(Error::NonConvergence {
        last: z,
        residual: res,
        iterations: MAX_REFINE_ITER,
    })
}

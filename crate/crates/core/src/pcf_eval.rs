//! Numerical evaluation of `U(a, z)` and `U'(a, z)` for real `a` and complex
//! `z`, independent of the asymptotic zero machinery.
//!
//! Three methods are available:
//!
//! * **Series**: Taylor-series continuation of `y'' = (z^2/4 + a) y` along a
//!   straight path from the origin, where `U(a,0)` and `U'(a,0)` are known in
//!   closed form. Each step re-expands the solution about the current point.
//!   Runs in binary64 or in double-double arithmetic.
//! * **Asymptotic**: the Poincare expansion `U ~ z^{-a-1/2} e^{-z^2/4} sum ...`
//!   for large `|z|` with `|arg z| <= pi/2`, optionally followed by an inward
//!   Taylor continuation when `z` itself is too small for the expansion.
//! * **Quadrature**: double-exponential quadrature of the Laplace-type
//!   integral representation, valid for `a > -1/2`.
//!
//! In the left half plane [`eval_u`] also tries the connection formula that
//! expresses `U(a, z)` through `U(a, -z)` and `U(-a, -iz)`, both of which lie
//! in the right half plane.
//!
//! Values are returned as `mantissa * exp(log_scale)` so that exponentially
//! large results stay representable.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use statrs::function::gamma::{gamma, ln_gamma};

use crate::dd::{self, CDd, Dd};
use crate::error::{Error, Result};

/// Evaluation method that produced a [`PcfValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Asymptotic,
    Quadrature,
}

/// `U(a,z)` and `U'(a,z)` as `mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PcfValue {
    pub value: Complex64,
    pub derivative: Complex64,
    pub log_scale: f64,
    pub method: Method,
    /// Estimated error relative to `|U| + |U'| / (1 + |z^2/4 + a|^{1/2})`.
    /// Values above about `1e-2` only indicate that no digits can be trusted.
    pub est_accuracy: f64,
}

impl PcfValue {
    /// Unscaled `(U, U')`, or an overflow error.
    pub fn unscaled(&self) -> Result<(Complex64, Complex64)> {
        let f = self.log_scale.exp();
        let (v, d) = (self.value * f, self.derivative * f);
        if v.is_finite() && d.is_finite() {
            Ok((v, d))
        } else {
            Err(Error::Overflow {
                mantissa: self.value,
                log_scale: self.log_scale,
            })
        }
    }

    /// `U / U'`, independent of the scaling.
    pub fn ratio(&self) -> Complex64 {
        self.value / self.derivative
    }

    fn conj(self) -> Self {
        Self {
            value: self.value.conj(),
            derivative: self.derivative.conj(),
            ..self
        }
    }
}

/// Accuracy comparison of an approximate zero against a reference zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationRecord {
    pub m: i64,
    pub z_approx: Complex64,
    pub z_ref: Complex64,
    pub g1_approx: f64,
    pub g1_ref: f64,
    pub g2_approx: Option<f64>,
    pub g2_ref: Option<f64>,
    pub eps1: f64,
    /// `None` when `Re(z_ref) Im(z_ref) = 0`.
    pub eps2: Option<f64>,
}

/// Largest `|a|` for which the closed-form origin values are representable.
pub const MAX_ABS_A: f64 = 300.0;

/// Arithmetic needed by the Taylor integrator.
trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const STEP_EPS: f64;
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(self) -> Complex64;
    fn real(x: f64) -> Self;
    fn scale(self, f: f64) -> Self;
    fn div_f64(self, d: f64) -> Self;
    fn mag(self) -> f64;
}

impl Scalar for Complex64 {
    const STEP_EPS: f64 = 1e-14;
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    fn real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn div_f64(self, d: f64) -> Self {
        self / d
    }
    fn mag(self) -> f64 {
        self.re.abs() + self.im.abs()
    }
}

impl Scalar for CDd {
    const STEP_EPS: f64 = 1e-30;
    fn from_c64(z: Complex64) -> Self {
        dd::cdd(z)
    }
    fn to_c64(self) -> Complex64 {
        dd::to_c64(self)
    }
    fn real(x: f64) -> Self {
        CDd::new(Dd::from(x), Dd::from(0.0))
    }
    fn scale(self, f: f64) -> Self {
        dd::scale(self, f)
    }
    fn div_f64(self, d: f64) -> Self {
        dd::div_f64(self, d)
    }
    fn mag(self) -> f64 {
        dd::norm1(self)
    }
}

fn local_rate(a: f64, z: Complex64) -> f64 {
    (z * z / 4.0 + a).norm().sqrt()
}

/// One Taylor step of `y'' = (z^2/4 + a) y` from `center` by `h`.
///
/// Works with the scaled coefficients `Y_k = y_k h^k`, which satisfy
/// `(k+1)(k+2) Y_{k+2} = p0 h^2 Y_k + p1 h^3 Y_{k-1} + p2 h^4 Y_{k-2}`.
fn taylor_step<S: Scalar>(a: f64, center: S, h: S, y: S, dy: S) -> (S, S) {
    let zero = S::real(0.0);
    let hh = h * h;
    let ca = (center * center * S::real(0.25) + S::real(a)) * hh;
    let cb = center.scale(0.5) * hh * h;
    let cc = (hh * hh).scale(0.25);
    // (Y_{k-2}, Y_{k-1}, Y_k, Y_{k+1})
    let (mut y_km2, mut y_km1, mut y_k, mut y_k1) = (zero, zero, y, dy * h);
    let mut sum = y_k + y_k1;
    let mut dsum = y_k1;
    let mut quiet = 0;
    for k in 0..400usize {
        let next = (ca * y_k + cb * y_km1 + cc * y_km2).div_f64(((k + 1) * (k + 2)) as f64);
        let idx = (k + 2) as f64;
        sum = sum + next;
        dsum = dsum + next.scale(idx);
        (y_km2, y_km1, y_k, y_k1) = (y_km1, y_k, y_k1, next);
        if next.mag() * idx <= S::STEP_EPS * 0.01 * (sum.mag() + dsum.mag()) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (sum, dsum / h)
}

struct PathResult<S> {
    y: S,
    dy: S,
    log_scale: f64,
    est: f64,
}

/// Continue the solution with data `(y0, dy0) * e^{log0}` at `start` to `end`
/// along the straight segment.
///
/// A generic companion solution is carried along in binary64. A relative
/// error made at step `s` is amplified by the growth of the companion from
/// `s` to `end` divided by the growth of the computed solution, which gives
/// the error estimate.
fn integrate<S: Scalar>(a: f64, start: Complex64, end: Complex64, y0: S, dy0: S, log0: f64) -> PathResult<S> {
    const STEP: f64 = 1.5;
    let len = (end - start).norm();
    let dir = if len > 0.0 { (end - start) / len } else { Complex64::new(1.0, 0.0) };
    let (mut y, mut dy, mut lu) = (y0, dy0, log0);

    let u0 = (y0.to_c64(), dy0.to_c64());
    let kappa0 = local_rate(a, start) + 1.0;
    let (mut w, mut dw) = if u0.0.norm() * kappa0 >= u0.1.norm() {
        (Complex64::new(0.0, 0.0), Complex64::new(kappa0, 0.0))
    } else {
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    };
    let mut lw = 0.0;
    let size = |v: Complex64, d: Complex64, kappa: f64| (v.norm() + d.norm() / kappa).ln();

    // (log size of U, log size of W) before each step
    let mut probes: Vec<(f64, f64)> = Vec::new();
    let mut s = 0.0;
    let mut pos = start;
    while s < len {
        let kappa = local_rate(a, pos) + 1.0;
        let ds = (STEP / kappa).min(len - s);
        let s_next = if len - s - ds < 1e-12 * len { len } else { s + ds };
        let next = if s_next == len { end } else { start + dir * s_next };
        probes.push((size(y.to_c64(), dy.to_c64(), kappa) + lu, size(w, dw, kappa) + lw));

        let h = S::from_c64(next) - S::from_c64(pos);
        (y, dy) = taylor_step(a, S::from_c64(pos), h, y, dy);
        (w, dw) = taylor_step(a, pos, next - pos, w, dw);

        let m = y.mag() + dy.mag();
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            y = y.scale(1.0 / m);
            dy = dy.scale(1.0 / m);
            lu += m.ln();
        }
        let m = w.norm() + dw.norm();
        if m > 1e100 || (m < 1e-100 && m > 0.0) {
            w /= m;
            dw /= m;
            lw += m.ln();
        }
        s = s_next;
        pos = next;
    }

    let kappa_e = local_rate(a, end) + 1.0;
    let gu = size(y.to_c64(), dy.to_c64(), kappa_e) + lu;
    let gw = size(w, dw, kappa_e) + lw;
    let est = if gu.is_finite() {
        probes
            .iter()
            .map(|&(us, ws)| S::STEP_EPS * (gw - ws - (gu - us)).exp().max(1.0))
            .sum()
    } else {
        f64::INFINITY
    };
    PathResult {
        y,
        dy,
        log_scale: lu,
        est,
    }
}

fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        0.0
    } else {
        (PI * r).sin()
    }
}

/// `1/Gamma(x)`, exactly zero at the poles.
pub(crate) fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * gamma(1.0 - x) / PI
    } else {
        1.0 / gamma(x)
    }
}

/// `Gamma(x + 1/2) / Gamma(x)` in double-double; `None` at poles of the
/// numerator.
fn gamma_half_ratio(x: Dd) -> Option<Dd> {
    const C: [f64; 14] = [
        1.0,
        -1.0 / 8.0,
        1.0 / 128.0,
        5.0 / 1024.0,
        -21.0 / 32768.0,
        -399.0 / 262_144.0,
        869.0 / 4_194_304.0,
        39325.0 / 33_554_432.0,
        -334_477.0 / 2_147_483_648.0,
        -28_717_403.0 / 17_179_869_184.0,
        59_697_183.0 / 274_877_906_944.0,
        8_400_372_435.0 / 2_199_023_255_552.0,
        -34_429_291_905.0 / 70_368_744_177_664.0,
        -7_199_255_611_995.0 / 562_949_953_421_312.0,
    ];
    let mut prod = Dd::from(1.0);
    let mut y = x;
    let half = Dd::from(0.5);
    while y.hi() < 200.0 {
        if y.hi() == 0.0 {
            return Some(Dd::from(0.0));
        }
        let yh = y + half;
        if yh.hi() == 0.0 {
            return None;
        }
        prod = prod * y / yh;
        y = y + Dd::from(1.0);
    }
    let inv = Dd::from(1.0) / y;
    let mut series = Dd::from(0.0);
    for c in C.iter().rev() {
        series = series * inv + Dd::from(*c);
    }
    Some(prod * y.sqrt() * series)
}

/// `U(a, 0)` and `U'(a, 0)` in binary64.
pub fn origin_values(a: f64) -> (f64, f64) {
    let sp = PI.sqrt();
    let u0 = sp * 2f64.powf(-a / 2.0 - 0.25) * recip_gamma(0.75 + a / 2.0);
    let u1 = -sp * 2f64.powf(-a / 2.0 + 0.25) * recip_gamma(0.25 + a / 2.0);
    (u0, u1)
}

fn check_args(a: f64, z: Complex64) -> Result<()> {
    if !z.is_finite() || !a.is_finite() {
        return Err(Error::Domain(z));
    }
    if a.abs() > MAX_ABS_A {
        return Err(Error::InvalidArgument(format!("|a| = {} exceeds {MAX_ABS_A}", a.abs())));
    }
    Ok(())
}

/// Relative error of the closed-form origin data (gamma function evaluation).
fn origin_eps(a: f64) -> f64 {
    5e-15 * (1.0 + a.abs())
}

fn series_from_origin<S: Scalar>(a: f64, z: Complex64, y0: S, dy0: S) -> PcfValue {
    let r = integrate(a, Complex64::new(0.0, 0.0), z, y0, dy0, 0.0);
    PcfValue {
        value: r.y.to_c64(),
        derivative: r.dy.to_c64(),
        log_scale: r.log_scale,
        method: Method::Series,
        est_accuracy: r.est + origin_eps(a),
    }
}

/// `(U(a,0), U'(a,0))` with the ratio of the two accurate to double-double
/// precision.
fn origin_state(a: f64) -> (CDd, CDd) {
    let (u0, u1) = origin_values(a);
    match gamma_half_ratio(Dd::from(0.25) + Dd::from(a) * Dd::from(0.5)) {
        None => (CDd::real(0.0), CDd::real(u1)),
        Some(r) => {
            let n = Dd::from(u0);
            let sqrt2 = Dd::from(2.0).sqrt();
            (CDd::new(n, Dd::ZERO), CDd::new(-(sqrt2 * r * n), Dd::ZERO))
        }
    }
}

/// Taylor continuation from the origin in binary64.
pub fn eval_u_series(a: f64, z: Complex64) -> Result<PcfValue> {
    check_args(a, z)?;
    if z.im < 0.0 {
        return Ok(eval_u_series(a, z.conj())?.conj());
    }
    let (y0, dy0) = origin_state(a);
    Ok(series_from_origin(a, z, dd::to_c64(y0), dd::to_c64(dy0)))
}

/// Forward continuation from the origin in both precisions. The deviation
/// of the binary64 result measures how much the path amplifies rounding
/// errors, which bounds the double-double error even where the growth-based
/// estimate is fooled by an already contaminated solution.
fn forward_checked(a: f64, z: Complex64) -> PcfValue {
    let (y0, dy0) = origin_state(a);
    let lo = series_from_origin(a, z, dd::to_c64(y0), dd::to_c64(dy0));
    let mut hi = series_from_origin(a, z, y0, dy0);
    let k = 1.0 + local_rate(a, z);
    let shift = (lo.log_scale - hi.log_scale).exp();
    let dev = ((lo.value * shift - hi.value).norm() + (lo.derivative * shift - hi.derivative).norm() / k)
        / (hi.value.norm() + hi.derivative.norm() / k);
    hi.est_accuracy = if dev.is_finite() {
        hi.est_accuracy.max(1e-15 * dev + origin_eps(a))
    } else {
        f64::INFINITY
    };
    hi
}

/// Taylor continuation from the origin in double-double arithmetic.
///
/// Zeros located with this evaluator are limited only by binary64 rounding
/// of `z`, except where the path is numerically unstable (see
/// [`PcfValue::est_accuracy`]).
pub fn eval_u_precise(a: f64, z: Complex64) -> Result<PcfValue> {
    check_args(a, z)?;
    if z.im < 0.0 {
        return Ok(eval_u_precise(a, z.conj())?.conj());
    }
    Ok(forward_checked(a, z))
}

/// Poincare expansion at `z`; `None` if it cannot reach `tol`.
fn poincare(a: f64, z: Complex64, tol: f64) -> Option<PcfValue> {
    if z.norm() == 0.0 || z.arg().abs() > 0.5 * PI + 1e-12 {
        return None;
    }
    let inv = 1.0 / (2.0 * z * z);
    let mut coef = 1.0_f64; // (a+1/2)_{2s} / s!
    let mut pw = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut dsum = -(a + 0.5) / z;
    let mut last = f64::INFINITY;
    let mut converged = false;
    for s in 0..500 {
        let sf = f64::from(s);
        coef *= -(a + 0.5 + 2.0 * sf) * (a + 1.5 + 2.0 * sf) / (sf + 1.0);
        pw *= inv;
        let t = pw * coef;
        let size = t.norm();
        if size > last && size > tol {
            return None;
        }
        sum += t;
        dsum += t * (-(a + 0.5 + 2.0 * (sf + 1.0)) / z);
        last = size;
        if size <= tol * sum.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let l = -z * z / 4.0 - (a + 0.5) * z.ln();
    let phase = Complex64::new(0.0, l.im).exp();
    Some(PcfValue {
        value: phase * sum,
        derivative: phase * (dsum - z / 2.0 * sum),
        log_scale: l.re,
        method: Method::Asymptotic,
        est_accuracy: last + f64::EPSILON * (2.0 + l.norm()),
    })
}

/// The Poincare expansion at `z` (|arg z| <= pi/2), if it reaches 1e-15.
pub fn eval_u_asymptotic(a: f64, z: Complex64) -> Result<PcfValue> {
    check_args(a, z)?;
    if z.im < 0.0 {
        return Ok(eval_u_asymptotic(a, z.conj())?.conj());
    }
    poincare(a, z, 1e-16).ok_or(Error::InvalidArgument(format!(
        "Poincare expansion does not reach full accuracy at z = {z}"
    )))
}

/// Start from the Poincare expansion further out on the ray through `z` and
/// continue inwards.
fn inward(a: f64, z: Complex64) -> Option<PcfValue> {
    let dir = if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) };
    let mut r = z.norm().max(2.0 * a.abs().sqrt() + 4.0);
    let rmax = 4.0 * r + 60.0;
    while r <= rmax {
        if let Some(p) = poincare(a, dir * r, 1e-17) {
            let res = integrate(a, dir * r, z, p.value, p.derivative, p.log_scale);
            return Some(PcfValue {
                value: res.y,
                derivative: res.dy,
                log_scale: res.log_scale,
                method: Method::Asymptotic,
                est_accuracy: res.est + p.est_accuracy,
            });
        }
        r *= 1.25;
    }
    None
}

/// `ln|1/Gamma(x)|` and the sign of `1/Gamma(x)`; sign 0 at the poles.
fn ln_recip_gamma(x: f64) -> (f64, f64) {
    if x <= 0.0 && x == x.floor() {
        return (f64::NEG_INFINITY, 0.0);
    }
    if x > 0.0 {
        return (-ln_gamma(x), 1.0);
    }
    let s = sin_pi(x);
    ((s.abs() / PI).ln() + ln_gamma(1.0 - x), s.signum())
}

/// `U(a, z)` for `Re z < 0`, `Im z >= 0` from the connection formula
///
/// `U(a,z) = e^{-i phi} [sqrt(2 pi) U(-a,-iz) / Gamma(a+1/2) - e^{-i phi} U(a,-z)]`,
/// `phi = pi (a/2 - 1/4)`, whose two terms are evaluated in the right half
/// plane where [`eval_u`] is accurate.
fn connection(a: f64, z: Complex64) -> Result<PcfValue> {
    let i = Complex64::i();
    let far = eval_u(-a, -i * z)?;
    let near = eval_u(a, -z)?;
    let (lrg, sign) = ln_recip_gamma(a + 0.5);
    let rot = Complex64::from_polar(1.0, -PI * (0.5 * a - 0.25));
    let ls_far = far.log_scale + lrg + 0.5 * (2.0 * PI).ln();
    let l = if sign == 0.0 { near.log_scale } else { ls_far.max(near.log_scale) };
    let f = if sign == 0.0 { 0.0 } else { sign * (ls_far - l).exp() };
    let g = (near.log_scale - l).exp();
    let value = rot * (far.value * f - rot * near.value * g);
    let derivative = rot * (-i * far.derivative * f + rot * near.derivative * g);
    let kappa = |w: Complex64, b: f64| 1.0 + (w * w / 4.0 + b).norm().sqrt();
    let size = |v: &PcfValue, k: f64| v.value.norm() + v.derivative.norm() / k;
    let k = kappa(z, a);
    let err = far.est_accuracy * f.abs() * size(&far, kappa(-i * z, -a)) * kappa(-i * z, -a) / k
        + near.est_accuracy * g * size(&near, k);
    let scale = value.norm() + derivative.norm() / k;
    Ok(PcfValue {
        value,
        derivative,
        log_scale: l,
        method: far.method,
        est_accuracy: err / scale + 4.0 * f64::EPSILON,
    })
}

fn better(x: PcfValue, y: Option<PcfValue>) -> PcfValue {
    match y {
        Some(y) if y.est_accuracy < x.est_accuracy => y,
        _ => x,
    }
}

/// `U(a, z)` and `U'(a, z)`, taking the most accurate of the available
/// methods: the Poincare expansion, inward continuation, forward continuation
/// in double-double arithmetic and, for `Re z < 0`, the connection formula.
pub fn eval_u(a: f64, z: Complex64) -> Result<PcfValue> {
    check_args(a, z)?;
    if z.im < 0.0 {
        return Ok(eval_u(a, z.conj())?.conj());
    }
    if z.re > 0.0 {
        if let Some(p) = poincare(a, z, 1e-16) {
            return Ok(p);
        }
        return Ok(better(forward_checked(a, z), inward(a, z)));
    }
    let fwd = forward_checked(a, z);
    if z.re < 0.0 {
        return Ok(better(fwd, connection(a, z).ok()));
    }
    Ok(fwd)
}

/// Double-exponential (exp-sinh) quadrature of `int_0^inf t^p e^{-t^2/2 - z t} dt`,
/// returning the integral and the integral of the modulus.
fn laplace_integral(p: f64, z: Complex64) -> (Complex64, f64, f64) {
    let f = |s: f64| -> (Complex64, f64) {
        let e = 0.5 * PI * s.sinh();
        if e.abs() > 700.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let t = e.exp();
        let jac = t * 0.5 * PI * s.cosh();
        let lnmag = p * t.ln() - 0.5 * t * t - z.re * t;
        if lnmag < -745.0 {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let mag = lnmag.exp() * jac;
        (Complex64::from_polar(mag, -z.im * t), mag)
    };
    // locate the truncation interval: integrand below 1e-20 of the peak
    let mut peak = 0.0_f64;
    let grid: Vec<f64> = (-800..=800).map(|k| f64::from(k) * 0.01).collect();
    for &s in &grid {
        peak = peak.max(f(s).1);
    }
    let lo = grid.iter().copied().find(|&s| f(s).1 > 1e-20 * peak).unwrap_or(-8.0) - 0.05;
    let hi = grid.iter().rev().copied().find(|&s| f(s).1 > 1e-20 * peak).unwrap_or(8.0) + 0.05;

    let mut h = (hi - lo) / 64.0;
    let mut n = 64usize;
    let (mut sum, mut abs_sum) = (Complex64::new(0.0, 0.0), 0.0);
    for k in 0..=n {
        let (v, m) = f(lo + k as f64 * h);
        let w = if k == 0 || k == n { 0.5 } else { 1.0 };
        sum += v * w;
        abs_sum += m * w;
    }
    let mut integral = sum * h;
    let mut change = f64::INFINITY;
    for _ in 0..14 {
        // add midpoints
        let mut mid = Complex64::new(0.0, 0.0);
        let mut mid_abs = 0.0;
        for k in 0..n {
            let (v, m) = f(lo + (k as f64 + 0.5) * h);
            mid += v;
            mid_abs += m;
        }
        sum += mid;
        abs_sum += mid_abs;
        n *= 2;
        h *= 0.5;
        let next = sum * h;
        change = (next - integral).norm();
        integral = next;
        if change <= 1e-16 * abs_sum * h {
            break;
        }
    }
    (integral, abs_sum * h, change)
}

/// Above this estimated error the quadrature result is reported as a failure.
pub const QUADRATURE_MAX_ERROR: f64 = 1e-6;

/// `U(a, z)` from its Laplace-type integral representation (`a > -1/2`).
pub fn eval_u_quadrature(a: f64, z: Complex64) -> Result<PcfValue> {
    check_args(a, z)?;
    if a <= -0.5 {
        return Err(Error::InvalidArgument(format!(
            "integral representation requires a > -1/2, got {a}"
        )));
    }
    let (i0, abs0, ch0) = laplace_integral(a - 0.5, z);
    let (i1, abs1, ch1) = laplace_integral(a + 0.5, z);
    let pre = -z * z / 4.0;
    let rg = recip_gamma(a + 0.5);
    let phase = Complex64::new(0.0, pre.im).exp() * rg;
    let value = phase * i0;
    let derivative = phase * (-z / 2.0 * i0 - i1);
    let kappa = local_rate(a, z) + 1.0;
    let denom = value.norm() + derivative.norm() / kappa;
    let num = (abs0 + ch0 / f64::EPSILON) * (1.0 + z.norm() / (2.0 * kappa)) + (abs1 + ch1 / f64::EPSILON) / kappa;
    let est = 2.0 * origin_eps(a) + f64::EPSILON * (pre.norm() + 2.0 * num * rg.abs() / denom.max(1e-300));
    if est.is_nan() || est >= QUADRATURE_MAX_ERROR {
        return Err(Error::NonConvergence {
            last: value,
            residual: est,
            iterations: 0,
        });
    }
    Ok(PcfValue {
        value,
        derivative,
        log_scale: pre.re,
        method: Method::Quadrature,
        est_accuracy: est,
    })
}

/// `U'(a, z)` from `U'(a,z) = -z/2 U(a,z) - (a + 1/2) U(a+1, z)`.
pub fn eval_u_prime(a: f64, z: Complex64) -> Result<Complex64> {
    let u = eval_u(a, z)?;
    let up = eval_u(a + 1.0, z)?;
    let l = u.log_scale.max(up.log_scale);
    let v = -z / 2.0 * u.value * (u.log_scale - l).exp() - (a + 0.5) * up.value * (up.log_scale - l).exp();
    let out = v * l.exp();
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::Overflow {
            mantissa: v,
            log_scale: l,
        })
    }
}

/// `|1 + i e^{-u pi i/2} U(u/2, i sqrt(2u) w) / U(u/2, -i sqrt(2u) w)|` with
/// `u = -2a`; vanishes at the complex zeros `-w` of `U(a, sqrt(2u) .)`.
pub fn connection_residual(a: f64, w: Complex64) -> Result<f64> {
    if a >= 0.0 {
        return Err(Error::InvalidArgument(format!("needs a < 0, got {a}")));
    }
    let u = -2.0 * a;
    let s = (2.0 * u).sqrt();
    let i = Complex64::i();
    let num = eval_u(u / 2.0, i * s * w)?;
    let den = eval_u(u / 2.0, -i * s * w)?;
    if den.value.norm() == 0.0 || !den.value.is_finite() {
        return Err(Error::DivisionHazard(w));
    }
    let ratio = num.value / den.value * (num.log_scale - den.log_scale).exp();
    let r = 1.0 + i * Complex64::from_polar(1.0, -u * PI / 2.0) * ratio;
    Ok(r.norm())
}

/// Net change of `arg U(a, .)` around the circle `|z - center| = radius`,
/// in units of `2 pi`: the number of zeros inside, for a small enough circle.
///
/// Fails with `NonConvergence` if the phase jumps by more than `pi/2`
/// between samples, since the count would then be ambiguous.
pub fn winding_number(a: f64, center: Complex64, radius: f64, samples: usize) -> Result<f64> {
    if radius.is_nan() || radius <= 0.0 || samples < 8 {
        return Err(Error::InvalidArgument(format!(
            "winding needs radius > 0 and at least 8 samples, got {radius} and {samples}"
        )));
    }
    let point = |k: usize| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / samples as f64);
    let phase = |z: Complex64| -> Result<f64> { Ok(eval_u(a, z)?.value.arg()) };
    let first = phase(point(0))?;
    let mut prev = first;
    let mut total = 0.0;
    for k in 1..=samples {
        let cur = if k == samples { first } else { phase(point(k))? };
        let mut d = cur - prev;
        d -= 2.0 * PI * (d / (2.0 * PI)).round();
        if d.abs() > 0.5 * PI {
            return Err(Error::NonConvergence {
                last: point(k),
                residual: d.abs(),
                iterations: k,
            });
        }
        total += d;
        prev = cur;
    }
    Ok(total / (2.0 * PI))
}

/// Relative errors of modulus (`eps1`) and of `Re/Im` (`eps2`).
pub fn metrics(m: i64, z_approx: Complex64, z_ref: Complex64) -> Result<ValidationRecord> {
    if z_ref.norm() == 0.0 {
        return Err(Error::InvalidArgument("reference zero must be non-zero".into()));
    }
    let g2 = |z: Complex64| (z.re * z.im != 0.0).then(|| z.re / z.im);
    let g1_approx = z_approx.norm();
    let g1_ref = z_ref.norm();
    let g2_approx = g2(z_approx);
    let g2_ref = g2(z_ref);
    let eps2 = match (g2_approx, g2_ref) {
        (Some(x), Some(r)) => Some((1.0 - x / r).abs()),
        (None, Some(_)) => Some(1.0),
        _ => None,
    };
    Ok(ValidationRecord {
        m,
        z_approx,
        z_ref,
        g1_approx,
        g1_ref,
        g2_approx,
        g2_ref,
        eps1: (1.0 - g1_approx / g1_ref).abs(),
        eps2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_ratio_matches_binary64() {
        for x in [0.3, 1.7, 5.25, -2.85, -0.2] {
            let r = gamma_half_ratio(Dd::from(x)).unwrap();
            let expect = recip_gamma(x) / recip_gamma(x + 0.5);
            assert!((f64::from(r) - expect).abs() < 1e-13 * expect.abs(), "{x}");
        }
        assert!(gamma_half_ratio(Dd::from(-0.5)).is_none());
        assert_eq!(f64::from(gamma_half_ratio(Dd::from(-2.0)).unwrap()), 0.0);
    }

    #[test]
    fn metrics_edge_cases() {
        let z = c(-1.0, 2.0);
        let r = metrics(1, z, z).unwrap();
        assert_eq!((r.eps1, r.eps2), (0.0, Some(0.0)));
        let r = metrics(1, z * 1.01, z).unwrap();
        assert!((r.eps1 - 0.01).abs() < 1e-14);
        assert!(r.eps2.unwrap() < 1e-15);
        assert!(metrics(1, z, c(2.0, 0.0)).unwrap().eps2.is_none());
    }

    #[test]
    fn conjugation_is_exact() {
        let z = c(-1.3, 2.2);
        let a = eval_u(0.7, z).unwrap();
        let b = eval_u(0.7, z.conj()).unwrap();
        assert_eq!(a.value.conj(), b.value);
        assert_eq!(a.derivative.conj(), b.derivative);
    }

    #[test]
    fn precise_and_double_agree() {
        for (a, z) in [(8.3, c(-1.38, 6.6)), (-6.2, c(-5.7, 1.4)), (-30.5, c(3.0, 0.0))] {
            let p = eval_u_precise(a, z).unwrap();
            let d = eval_u_series(a, z).unwrap();
            let rel = (p.value - d.value * (d.log_scale - p.log_scale).exp()).norm() / p.value.norm();
            assert!(rel < 1e-10, "{a} {z}: {rel:e}");
            assert!(p.est_accuracy < 1e-12);
        }
    }

    #[test]
    fn vanishes_at_tabulated_zero() {
        let z = c(-5.690_558_573_810_463, 1.383_240_680_648_268_7);
        let p = eval_u_precise(-6.2, z).unwrap();
        let kappa = local_rate(-6.2, z) + 1.0;
        assert!(p.value.norm() < 1e-14 * p.derivative.norm() / kappa);
    }

    #[test]
    fn connection_residual_vanishes_at_zero() {
        let a: f64 = -6.2;
        let z = c(-5.690_558_573_810_463, 1.383_240_680_648_268_7);
        let w = -z / (2.0 * (-a).sqrt());
        assert!(connection_residual(a, w).unwrap() < 1e-12);
        assert!(connection_residual(a, w * 1.01).unwrap() > 1e-3);
        assert!(connection_residual(1.0, w).is_err());
    }

    #[test]
    fn recurrence_derivative_matches_ode_derivative() {
        for (a, z) in [(0.7, c(1.0, 0.5)), (-6.2, c(-2.0, 1.0)), (3.0, c(-1.0, 2.0))] {
            let d = eval_u_prime(a, z).unwrap();
            let (_, expect) = eval_u(a, z).unwrap().unscaled().unwrap();
            assert!((d - expect).norm() < 1e-12 * expect.norm(), "{a} {z}");
        }
    }

    #[test]
    fn methods_agree_in_overlap() {
        for (a, z) in [(0.7, c(1.0, 0.5)), (5.0, c(4.0, 3.0)), (2.5, c(-1.0, 1.5))] {
            let q = eval_u_quadrature(a, z).unwrap();
            let s = eval_u_precise(a, z).unwrap();
            let (qv, _) = q.unscaled().unwrap();
            let (sv, sd) = s.unscaled().unwrap();
            let kappa = local_rate(a, z) + 1.0;
            let tol = (q.est_accuracy + s.est_accuracy) * (sv.norm() + sd.norm() / kappa);
            assert!((qv - sv).norm() <= tol, "{a} {z}");
        }
    }

    #[test]
    fn hermite_case_terminates() {
        // U(-n-1/2, x) = e^{-x^2/4} He_n(x); He_2(x) = x^2 - 1
        let x: f64 = 3.0;
        let p = eval_u_asymptotic(-2.5, c(x, 0.0)).unwrap();
        let (v, _) = p.unscaled().unwrap();
        let expect = (-x * x / 4.0).exp() * (x * x - 1.0);
        assert!((v.re - expect).abs() < 1e-14 * expect, "{v} {expect}");
        assert!(matches!(eval_u_quadrature(-2.5, c(1.0, 0.0)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn recessive_real_axis_matches_quadrature() {
        // U decays like e^{-x^2/4} here while the companion grows by about 1e22
        for (a, x) in [(0.152_566_077_009_687_88, 10.226_515_295_330_337), (7.705_352_400_753_278, 5.511_019_546_296_308)] {
            let p = eval_u_precise(a, c(x, 0.0)).unwrap();
            let q = eval_u_quadrature(a, c(x, 0.0)).unwrap();
            let (u, _) = p.unscaled().unwrap();
            let (v, _) = q.unscaled().unwrap();
            let err = ((u - v) / v).norm();
            assert!(err < 1e-7 && err <= p.est_accuracy + q.est_accuracy, "{a} {x}: {err:e}");
        }
    }
}

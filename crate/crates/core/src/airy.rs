//! Airy functions on the complex plane.
//!
//! Inside the disc `|z| <= MACLAURIN_RADIUS` the Maclaurin series is summed in
//! double-double arithmetic, which absorbs the cancellation between the two
//! entire series. Outside it the exponential-form asymptotic expansion is used
//! for `|arg z| <= 2pi/3` and the three-term connection formula
//! `Ai(z) + w Ai(z w) + w^2 Ai(z w^2) = 0` covers the remaining sector.
//!
//! Values that would overflow are carried as a mantissa together with a real
//! exponent of `e` (see [`ScaledAiry`]).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dd::{self, CDd, Dd};
use crate::error::{Error, Result};

/// Radius of the Maclaurin disc. Both methods agree to better than 1e-13 on
/// the annulus `8 <= |z| <= 11`.
pub const MACLAURIN_RADIUS: f64 = 9.0;

const SQRT3_2: f64 = 0.866_025_403_784_438_6;
/// e^{2 pi i / 3}
const OMEGA: Complex64 = Complex64::new(-0.5, SQRT3_2);
/// e^{-2 pi i / 3}
const OMEGA_BAR: Complex64 = Complex64::new(-0.5, -SQRT3_2);

/// Ai (or Bi) together with its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValue {
    pub value: Complex64,
    pub derivative: Complex64,
}

/// Airy value stored as `mantissa * exp(log_scale)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledAiry {
    pub value: Complex64,
    pub derivative: Complex64,
    pub log_scale: f64,
}

impl ScaledAiry {
    fn unscaled(value: Complex64, derivative: Complex64) -> Self {
        Self {
            value,
            derivative,
            log_scale: 0.0,
        }
    }

    /// Re-exponentiate, or report the scaled pair if that would overflow.
    pub fn into_value(self) -> Result<AiryValue> {
        let f = self.log_scale.exp();
        let value = self.value * f;
        let derivative = self.derivative * f;
        if value.is_finite() && derivative.is_finite() {
            Ok(AiryValue { value, derivative })
        } else {
            Err(Error::Overflow {
                mantissa: self.value,
                log_scale: self.log_scale,
            })
        }
    }

    fn conj(self) -> Self {
        Self {
            value: self.value.conj(),
            derivative: self.derivative.conj(),
            log_scale: self.log_scale,
        }
    }

    pub(crate) fn rotate(self, c_value: Complex64, c_deriv: Complex64) -> Self {
        Self {
            value: self.value * c_value,
            derivative: self.derivative * c_deriv,
            log_scale: self.log_scale,
        }
    }

    /// Sum of two scaled values.
    pub(crate) fn add(self, other: Self) -> Self {
        let (big, small) = if self.log_scale >= other.log_scale {
            (self, other)
        } else {
            (other, self)
        };
        let f = (small.log_scale - big.log_scale).exp();
        Self {
            value: big.value + small.value * f,
            derivative: big.derivative + small.derivative * f,
            log_scale: big.log_scale,
        }
    }
}

// Ai(0) and -Ai'(0) to double-double precision.
fn c1() -> Dd {
    Dd::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17)
}
fn c2() -> Dd {
    Dd::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17)
}
fn sqrt3() -> Dd {
    Dd::new(1.732_050_807_568_877_2, 1.003_508_422_180_690_3e-16)
}

/// The four Maclaurin sums `f, f', g, g'` with `Ai = c1 f - c2 g`,
/// `Bi = sqrt3 (c1 f + c2 g)`.
struct Maclaurin {
    f: CDd,
    fp: CDd,
    g: CDd,
    gp: CDd,
}

fn maclaurin(z: Complex64) -> Maclaurin {
    let zd = dd::cdd(z);
    let z3 = zd * zd * zd;
    let one = CDd::new(Dd::from(1.0), Dd::from(0.0));
    let mut f = one;
    let mut fp = CDd::new(Dd::from(0.0), Dd::from(0.0));
    let mut g = zd;
    let mut gp = one;
    let mut tf = one;
    let mut tfp = dd::div_f64(zd * zd, 2.0);
    let mut tg = zd;
    let mut tgp = one;
    let mut peak = 1.0_f64;
    for k in 0..200u32 {
        let k3 = 3.0 * f64::from(k);
        if k > 0 {
            tf = dd::div_f64(tf * z3, (k3 - 1.0) * k3);
            tg = dd::div_f64(tg * z3, k3 * (k3 + 1.0));
            tgp = dd::div_f64(tgp * z3, (k3 - 2.0) * k3);
            f = f + tf;
            g = g + tg;
            gp = gp + tgp;
            tfp = if k == 1 {
                tfp
            } else {
                dd::div_f64(tfp * z3, (k3 - 3.0) * (k3 - 1.0))
            };
            fp = fp + tfp;
        }
        let size = dd::norm1(tf)
            .max(dd::norm1(tg))
            .max(dd::norm1(tgp))
            .max(dd::norm1(tfp));
        peak = peak.max(size);
        if k > 2 && size < 1e-34 * peak {
            break;
        }
    }
    Maclaurin { f, fp, g, gp }
}

fn maclaurin_ai(z: Complex64) -> AiryValue {
    let m = maclaurin(z);
    let (c1, c2) = (c1(), c2());
    AiryValue {
        value: dd::to_c64(m.f * c1 - m.g * c2),
        derivative: dd::to_c64(m.fp * c1 - m.gp * c2),
    }
}

fn maclaurin_bi(x: f64) -> AiryValue {
    let m = maclaurin(Complex64::new(x, 0.0));
    let (c1, c2, s3) = (c1(), c2(), sqrt3());
    AiryValue {
        value: dd::to_c64((m.f * c1 + m.g * c2) * s3),
        derivative: dd::to_c64((m.fp * c1 + m.gp * c2) * s3),
    }
}

/// Ai(z) from the exponential-form expansion, valid for `|arg z| <= 2pi/3`
/// and `|z| >= MACLAURIN_RADIUS`.
fn asymptotic_ai(z: Complex64) -> ScaledAiry {
    let zeta = z.powf(1.5) * (2.0 / 3.0);
    let inv = 1.0 / zeta;
    let mut u = 1.0_f64;
    let mut pw = Complex64::new(1.0, 0.0);
    let mut sum_u = Complex64::new(1.0, 0.0);
    let mut sum_v = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let kf = f64::from(k);
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        pw *= -inv;
        let tu = pw * u;
        let tv = pw * v;
        let size = tu.norm().max(tv.norm());
        if size > last {
            break;
        }
        sum_u += tu;
        sum_v += tv;
        last = size;
        if size < 1e-17 {
            break;
        }
    }
    let z4 = z.powf(0.25);
    let phase = Complex64::new(0.0, -zeta.im).exp() / (2.0 * PI.sqrt());
    ScaledAiry {
        value: phase / z4 * sum_u,
        derivative: -phase * z4 * sum_v,
        log_scale: -zeta.re,
    }
}

/// Ai(z), Ai'(z) in scaled form; never overflows.
pub fn eval_ai_scaled(z: Complex64) -> ScaledAiry {
    if z.norm() <= MACLAURIN_RADIUS {
        let v = maclaurin_ai(z);
        return ScaledAiry::unscaled(v.value, v.derivative);
    }
    if z.im < 0.0 {
        return eval_ai_scaled(z.conj()).conj();
    }
    if z.arg() <= 2.0 * PI / 3.0 {
        return asymptotic_ai(z);
    }
    // Ai(z) = -w^2 Ai(z w^2) - w Ai(z w), w = e^{2 pi i/3}
    let a = asymptotic_ai(z * OMEGA_BAR).rotate(-OMEGA_BAR, -OMEGA_BAR * OMEGA_BAR);
    let b = asymptotic_ai(z * OMEGA).rotate(-OMEGA, -OMEGA * OMEGA);
    a.add(b)
}

/// Ai(z) and Ai'(z).
pub fn eval_ai(z: Complex64) -> Result<AiryValue> {
    if !z.is_finite() {
        return Err(Error::Domain(z));
    }
    eval_ai_scaled(z).into_value()
}

fn rotation(l: i32) -> Result<Complex64> {
    match l {
        1 => Ok(OMEGA_BAR),
        -1 => Ok(OMEGA),
        _ => Err(Error::InvalidArgument(format!(
            "rotation index must be +1 or -1, got {l}"
        ))),
    }
}

/// `Ai_l(z) = Ai(z e^{-2 pi i l/3})` and its z-derivative, scaled.
pub fn eval_ai_rotated_scaled(l: i32, z: Complex64) -> Result<ScaledAiry> {
    let w = rotation(l)?;
    let s = eval_ai_scaled(z * w);
    Ok(ScaledAiry {
        derivative: s.derivative * w,
        ..s
    })
}

/// `Ai_l(z) = Ai(z e^{-2 pi i l/3})` for `l = +1, -1`, with its z-derivative.
pub fn eval_ai_rotated(l: i32, z: Complex64) -> Result<AiryValue> {
    if !z.is_finite() {
        return Err(Error::Domain(z));
    }
    eval_ai_rotated_scaled(l, z)?.into_value()
}

/// Bi(x), Bi'(x) for real x.
pub fn eval_bi_real(x: f64) -> Result<AiryValue> {
    if !x.is_finite() {
        return Err(Error::Domain(Complex64::new(x, 0.0)));
    }
    if x.abs() <= MACLAURIN_RADIUS {
        let v = maclaurin_bi(x);
        return Ok(AiryValue {
            value: Complex64::new(v.value.re, 0.0),
            derivative: Complex64::new(v.derivative.re, 0.0),
        });
    }
    // Bi(x) = 2 Re{ e^{pi i/6} Ai(x e^{2 pi i/3}) }
    let c = Complex64::from_polar(1.0, PI / 6.0);
    let s = eval_ai_scaled(Complex64::new(x, 0.0) * OMEGA).rotate(c, c * OMEGA);
    let s = ScaledAiry {
        value: Complex64::new(2.0 * s.value.re, 0.0),
        derivative: Complex64::new(2.0 * s.derivative.re, 0.0),
        log_scale: s.log_scale,
    };
    s.into_value()
}

/// `T(t)` from the asymptotic inversion of the Airy zero phase, together with
/// the last retained term's relative size.
pub(crate) fn t_series_raw(t: Complex64) -> (Complex64, f64) {
    const C: [f64; 4] = [
        5.0 / 48.0,
        -5.0 / 36.0,
        77125.0 / 82944.0,
        -108_056_875.0 / 6_967_296.0,
    ];
    let inv2 = 1.0 / (t * t);
    let mut pw = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(1.0, 0.0);
    for c in C {
        pw *= inv2;
        sum += pw * c;
    }
    (t.powf(2.0 / 3.0) * sum, (pw * C[3]).norm())
}

/// The m-th negative zero `a_m` of Ai (m >= 1), ordered `a_1 > a_2 > ...`.
pub fn real_airy_zero(m: u32) -> f64 {
    assert!(m >= 1, "Airy zeros are indexed from 1");
    let t = 3.0 * PI * (4.0 * f64::from(m) - 1.0) / 8.0;
    let mut x = -t_series_raw(Complex64::new(t, 0.0)).0.re;
    for _ in 0..50 {
        let v = maclaurin_or_asymptotic_real(x);
        let step = v.0 / v.1;
        x -= step;
        if step.abs() <= 1e-15 * x.abs() {
            break;
        }
    }
    x
}

fn maclaurin_or_asymptotic_real(x: f64) -> (f64, f64) {
    let v = eval_ai_scaled(Complex64::new(x, 0.0));
    (v.value.re, v.derivative.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin_matches_constant() {
        let v = eval_ai(Complex64::new(0.0, 0.0)).unwrap();
        assert!((v.value.re - 0.355_028_053_887_817_2).abs() < 1e-16);
        assert!((v.derivative.re + 0.258_819_403_792_806_8).abs() < 1e-16);
    }

    #[test]
    fn methods_agree_on_overlap_annulus() {
        for r in [8.0, 9.5, 11.0] {
            for k in 0..16 {
                let th = -PI + 2.0 * PI * f64::from(k) / 16.0 + 0.1;
                let z = Complex64::from_polar(r, th);
                let series = maclaurin_ai(z);
                let asy = if th.abs() <= 2.0 * PI / 3.0 {
                    asymptotic_ai(z)
                } else {
                    let zz = if z.im < 0.0 { z.conj() } else { z };
                    let a = asymptotic_ai(zz * OMEGA_BAR).rotate(-OMEGA_BAR, -OMEGA_BAR * OMEGA_BAR);
                    let b = asymptotic_ai(zz * OMEGA).rotate(-OMEGA, -OMEGA * OMEGA);
                    let s = a.add(b);
                    if z.im < 0.0 {
                        s.conj()
                    } else {
                        s
                    }
                };
                let a = asy.into_value().unwrap();
                let scale = series.value.norm().max(1e-300);
                let rel = (a.value - series.value).norm() / scale;
                // near the negative axis the value can sit close to a zero
                let abs_ok = (a.value - series.value).norm() <= 1e-13 * series.derivative.norm().max(1.0);
                assert!(rel < 1e-12 || abs_ok, "r={r} th={th} rel={rel:e}");
            }
        }
    }

    #[test]
    fn rotated_at_origin() {
        let a = eval_ai_rotated(1, Complex64::new(0.0, 0.0)).unwrap();
        assert!((a.value.re - 0.355_028_053_887_817_2).abs() < 1e-16);
        assert!(eval_ai_rotated(2, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn bi_wronskian_and_sign() {
        for x in [-15.0, -2.0, 1.0, 5.0, 12.0] {
            let a = eval_ai(Complex64::new(x, 0.0)).unwrap();
            let b = eval_bi_real(x).unwrap();
            let w = a.value.re * b.derivative.re - a.derivative.re * b.value.re;
            assert!((w - 1.0 / PI).abs() < 1e-13 * (1.0 + b.value.re.abs()), "x={x} w={w}");
        }
        assert!(eval_bi_real(-2.0).unwrap().value.re < 0.0);
    }

    #[test]
    fn bi_overflows_far_right() {
        assert!(matches!(eval_bi_real(200.0), Err(Error::Overflow { .. })));
        assert!(eval_ai(Complex64::new(-120.0, 0.0)).is_ok());
    }

    #[test]
    fn airy_zeros_ordered() {
        let mut prev = 0.0;
        for m in 1..=50 {
            let a = real_airy_zero(m);
            assert!(a < prev);
            prev = a;
        }
    }
}

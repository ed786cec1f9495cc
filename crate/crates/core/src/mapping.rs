//! The turning-point change of variables `zhat -> zeta` and its companions
//! `beta`, `sigma`, together with the numerical inverse `zeta -> zhat`.
//!
//! `(2/3) zeta^{3/2} = int_1^zhat (t^2 - 1)^{1/2} dt`, with `zeta` analytic in
//! the plane cut along `(-inf, -1]` and `zeta(1) = 0`. Close to the turning
//! point every quantity is taken from the local power series in `zhat - 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `|zhat - 1|` below which the local series replaces the closed forms.
pub const TURNING_SERIES_RADIUS: f64 = 0.1;

/// Coefficients of `zeta(1 + t) / t` in powers of `t` (series reversion of the
/// defining integral).
const ZETA_SERIES: [f64; 12] = [
    1.259_921_049_894_873_2,
    0.125_992_104_989_487_32,
    -0.014_399_097_713_084_265,
    0.002_959_814_529_911_765_5,
    -0.000_768_367_436_406_718_8,
    0.000_227_716_399_997_110_4,
    -7.363_016_532_116_175e-5,
    2.533_604_801_921_156_6e-5,
    -9.136_143_762_223_523e-6,
    3.417_220_532_907_719e-6,
    -1.316_239_456_254_413_5e-6,
    5.193_432_248_023_127e-7,
];

/// `zeta`, `beta`, `sigma` and their `zhat`-derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapBundle {
    pub zhat: Complex64,
    pub zeta: Complex64,
    pub beta: Complex64,
    pub sigma: Complex64,
    /// d zeta / d zhat
    pub zeta1: Complex64,
    /// d^2 zeta / d zhat^2
    pub zeta2: Complex64,
    pub sigma1: Complex64,
    pub sigma2: Complex64,
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= -1.0
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// zeta(1+t) and its first three t-derivatives from the local series.
fn zeta_series(t: Complex64) -> [Complex64; 4] {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    // zeta = sum_{k>=1} b_k t^k with b_k = ZETA_SERIES[k-1]; Horner per derivative
    for (d, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in (d.max(1)..=ZETA_SERIES.len()).rev() {
            let mut f = ZETA_SERIES[k - 1];
            for j in 0..d {
                f *= (k - j) as f64;
            }
            acc = acc * t + f;
        }
        // acc currently holds sum f_k t^{k - max(d,1)}
        *slot = if d == 0 { acc * t } else { acc };
    }
    out
}

/// Closed form of zeta for `|zhat| >= 1`.
fn zeta_outer(z: Complex64) -> Complex64 {
    let inv2 = 1.0 / (z * z);
    let root = (1.0 - inv2).sqrt();
    let bracket = 0.75 * (root - inv2 * (1.0 + root).ln() - inv2 * z.ln());
    z.powf(4.0 / 3.0) * bracket.powf(2.0 / 3.0)
}

/// Closed form of zeta for `|zhat| < 1`.
fn zeta_inner(z: Complex64) -> Complex64 {
    let root = (1.0 - z * z).sqrt();
    let acos = -Complex64::i() * (z + Complex64::i() * root).ln();
    -(0.75 * (acos - z * root)).powf(2.0 / 3.0)
}

/// The turning-point variable `zeta(zhat)`.
pub fn zeta(zhat: Complex64) -> Result<Complex64> {
    if on_cut(zhat) || !zhat.is_finite() {
        return Err(Error::Domain(zhat));
    }
    let t = zhat - 1.0;
    let z = if t.norm() < TURNING_SERIES_RADIUS {
        zeta_series(t)[0]
    } else if zhat.norm() >= 1.0 {
        zeta_outer(zhat)
    } else {
        zeta_inner(zhat)
    };
    // real section stays real
    Ok(if zhat.im == 0.0 { c(z.re) } else { z })
}

/// `beta = zhat (zhat^2 - 1)^{-1/2}`, continuous off `[-1, 1]`.
pub fn beta(zhat: Complex64) -> Complex64 {
    if zhat.norm() >= 1.0 {
        (1.0 - 1.0 / (zhat * zhat)).powf(-0.5)
    } else {
        let s = zhat * (1.0 - zhat * zhat).powf(-0.5);
        if zhat.im >= 0.0 {
            -Complex64::i() * s
        } else {
            Complex64::i() * s
        }
    }
}

/// `sigma = (zeta / (zhat^2 - 1))^{1/2}`.
pub fn sigma(zhat: Complex64) -> Result<Complex64> {
    Ok(map_bundle(zhat)?.sigma)
}

/// All mapping quantities at `zhat`.
pub fn map_bundle(zhat: Complex64) -> Result<MapBundle> {
    if on_cut(zhat) || !zhat.is_finite() {
        return Err(Error::Domain(zhat));
    }
    let t = zhat - 1.0;
    let beta = if t.norm() == 0.0 || (zhat + 1.0).norm() == 0.0 {
        Complex64::new(f64::INFINITY, 0.0)
    } else {
        beta(zhat)
    };
    if t.norm() < TURNING_SERIES_RADIUS {
        let [z0, z1, z2, z3] = zeta_series(t);
        let sigma = 1.0 / z1;
        return Ok(MapBundle {
            zhat,
            zeta: z0,
            beta,
            sigma,
            zeta1: z1,
            zeta2: z2,
            sigma1: -z2 * sigma * sigma,
            sigma2: -(z3 * z1 - 2.0 * z2 * z2) * sigma * sigma * sigma,
        });
    }
    let zeta = zeta(zhat)?;
    let sigma = (zeta / (zhat * zhat - 1.0)).sqrt();
    let s2 = sigma * sigma;
    let s3 = s2 * sigma;
    let zs3 = zhat * s3;
    Ok(MapBundle {
        zhat,
        zeta,
        beta,
        sigma,
        zeta1: 1.0 / sigma,
        zeta2: (2.0 * zs3 - 1.0) / (2.0 * s2 * zeta),
        sigma1: (1.0 - 2.0 * zs3) / (2.0 * zeta),
        sigma2: (6.0 * s3 * s3 + 4.0 * s2 * s2 * zeta - zs3 - 1.0) / (2.0 * sigma * zeta * zeta),
    })
}

/// `zeta(-1)`: the image of the end of the cut.
pub fn zeta_at_minus_one() -> f64 {
    -(0.75 * std::f64::consts::PI).powf(2.0 / 3.0)
}

const INVERT_MAX_ITER: usize = 100;

/// Solve `zeta(zhat) = target` for `zhat`.
///
/// Real targets above `zeta(-1)` give real `zhat > -1`; first-quadrant targets
/// give first-quadrant `zhat`.
pub fn invert_zeta(target: Complex64) -> Result<Complex64> {
    if !target.is_finite() {
        return Err(Error::Domain(target));
    }
    if target.im == 0.0 {
        return invert_real(target.re).map(c);
    }
    let tol = 1e-14 * (1.0 + target.norm());
    let mut z = initial_guess(target);
    let mut res = zeta(z)? - target;
    for it in 0..INVERT_MAX_ITER {
        let b = map_bundle(z)?;
        let step = res * b.sigma;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let cand = z - step * lambda;
            if let Ok(zc) = zeta(cand) {
                let r = zc - target;
                if r.norm() < res.norm() || r.norm() <= tol {
                    accepted = Some((cand, r));
                    break;
                }
            }
            lambda *= 0.5;
        }
        let Some((zn, rn)) = accepted else {
            if res.norm() <= 1e-13 * (1.0 + target.norm()) {
                return Ok(z);
            }
            return Err(Error::NonConvergence {
                last: z,
                residual: res.norm(),
                iterations: it,
            });
        };
        let moved = (zn - z).norm();
        z = zn;
        res = rn;
        if res.norm() <= tol || moved <= 4.0 * f64::EPSILON * z.norm() {
            return Ok(z);
        }
    }
    if res.norm() <= 1e-13 * (1.0 + target.norm()) {
        Ok(z)
    } else {
        Err(Error::NonConvergence {
            last: z,
            residual: res.norm(),
            iterations: INVERT_MAX_ITER,
        })
    }
}

fn initial_guess(target: Complex64) -> Complex64 {
    let cbrt2 = 2f64.powf(1.0 / 3.0);
    if target.norm() < 0.5 {
        // zeta ~ 2^{1/3} t (1 + t/10)
        let t0 = target / cbrt2;
        return 1.0 + t0 - t0 * t0 / 10.0;
    }
    // xi ~ zhat^2/2 - ln(2 zhat)/2 - 1/4
    let xi = target.powf(1.5) * (2.0 / 3.0);
    let mut z = (2.0 * xi).sqrt();
    for _ in 0..8 {
        let next = (2.0 * xi + (2.0 * z).ln() + 0.5).sqrt();
        if !next.is_finite() {
            break;
        }
        z = next;
    }
    z
}

fn invert_real(target: f64) -> Result<f64> {
    let floor = zeta_at_minus_one();
    if target <= floor {
        return Err(Error::Domain(c(target)));
    }
    let f = |x: f64| -> Result<f64> { Ok(zeta(c(x))?.re - target) };
    let mut lo = -1.0;
    let mut hi = 2.0;
    while f(hi)? < 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    let mut x = if target.abs() < 0.5 {
        1.0 + target / 2f64.powf(1.0 / 3.0)
    } else {
        0.5 * (lo + hi)
    };
    if x <= lo || x >= hi {
        x = 0.5 * (lo + hi);
    }
    let tol = 1e-15 * (1.0 + target.abs());
    for it in 0..200 {
        let fx = f(x)?;
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let s = map_bundle(c(x))?.sigma.re;
        let mut next = x - fx * s;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 2.0 * f64::EPSILON * x.abs().max(1e-300) || hi - lo <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(next);
        }
        if it == 199 {
            return Err(Error::NonConvergence {
                last: c(x),
                residual: fx.abs(),
                iterations: it,
            });
        }
        x = next;
    }
    Ok(x)
}

//! Closed-form expansion coefficients: the rational functions `G_1..G_4`, the
//! first coefficient `Upsilon_1` of the expansion of the Airy argument, and the
//! first two correction terms of the zero expansion.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mapping;

/// Below this `|zeta0|` the correction formulas lose too many digits.
pub const DEGENERATE_ZETA: f64 = 1e-4;

/// `|zhat - 1|` below which `Upsilon_1` is taken from its local series.
pub const UPSILON_SERIES_RADIUS: f64 = 1e-2;

/// Taylor coefficients of `Upsilon_1(1 + t)`.
const UPSILON1_SERIES: [f64; 6] = [
    -0.040_497_462_318_049_495,
    0.019_598_771_887_253_583,
    -0.010_746_859_039_899_003,
    0.005_918_430_333_740_191,
    -0.003_229_773_415_524_117,
    0.001_744_953_503_650_49,
];

fn poly(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// `G_s(zhat)` for `s = 1..=4`.
pub fn g_coeff(s: u32, zhat: Complex64) -> Result<Complex64> {
    let z2 = zhat * zhat;
    let d = z2 - 1.0;
    if d.norm() < f64::EPSILON {
        return Err(Error::Pole(zhat));
    }
    let v = match s {
        1 => -(z2 - 6.0) / (24.0 * d),
        2 => poly(&[56.0, -252.0, 441.0, 1860.0, 3420.0], z2) / (5760.0 * d.powi(4)),
        3 => {
            -poly(
                &[
                    3968.0, -29760.0, 96720.0, -177_320.0, 199_485.0, -1_719_018.0, -5_480_580.0,
                    -1_590_120.0,
                ],
                z2,
            ) / (322_560.0 * d.powi(7))
        }
        4 => {
            poly(
                &[
                    130_048.0,
                    -1_365_504.0,
                    6_486_144.0,
                    -18_377_408.0,
                    34_457_640.0,
                    -44_794_932.0,
                    41_062_021.0,
                    495_103_464.0,
                    3_107_060_712.0,
                    2_497_542_880.0,
                    292_852_560.0,
                ],
                z2,
            ) / (3_440_640.0 * d.powi(10))
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "G_s is available for s = 1..=4, got {s}"
            )))
        }
    };
    Ok(v)
}

/// `Upsilon_1(zhat) = zhat sigma G_1 / zeta - 5 / (48 zeta^2)`, with the
/// removable singularity at the turning point filled in.
pub fn upsilon1(zhat: Complex64) -> Result<Complex64> {
    let t = zhat - 1.0;
    if t.norm() < UPSILON_SERIES_RADIUS {
        return Ok(poly(
            &UPSILON1_SERIES.iter().rev().copied().collect::<Vec<_>>(),
            t,
        ));
    }
    let b = mapping::map_bundle(zhat)?;
    let g1 = g_coeff(1, zhat)?;
    Ok(zhat * b.sigma * g1 / b.zeta - 5.0 / (48.0 * b.zeta * b.zeta))
}

/// Leading zero approximation with its mapped companions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrectionInput {
    pub z0: Complex64,
    pub zeta0: Complex64,
    pub sigma0: Complex64,
}

impl CorrectionInput {
    /// Build from a leading term, taking `zeta0` and `sigma0` from the map.
    pub fn at(z0: Complex64) -> Result<Self> {
        let b = mapping::map_bundle(z0)?;
        Ok(Self {
            z0,
            zeta0: b.zeta,
            sigma0: b.sigma,
        })
    }

    fn check(&self) -> Result<()> {
        if self.zeta0.norm() < DEGENERATE_ZETA {
            Err(Error::Degenerate(self.zeta0.norm()))
        } else {
            Ok(())
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            z0: self.z0.conj(),
            zeta0: self.zeta0.conj(),
            sigma0: self.sigma0.conj(),
        }
    }
}

/// First correction term of the zero expansion (coefficient of `u^{-2}`).
pub fn correction1(inp: &CorrectionInput) -> Result<Complex64> {
    inp.check()?;
    let CorrectionInput { z0: z, zeta0: q, sigma0: s } = *inp;
    let s3 = s * s * s;
    Ok(s / (48.0 * q * q) * (12.0 * z * s * q - 10.0 * z * z * z * s3 + 5.0))
}

/// Second correction term of the zero expansion (coefficient of `u^{-4}`).
pub fn correction2(inp: &CorrectionInput) -> Result<Complex64> {
    inp.check()?;
    let CorrectionInput { z0: z, zeta0: q, sigma0: s } = *inp;
    let z2 = z * z;
    let sp = |k: i32| s.powi(k);
    let zp = |k: i32| z.powi(k);
    let q2 = q * q;
    let q3 = q2 * q;
    let brace = 200.0 * zp(7) * sp(9) * (221.0 * z2 + 35.0)
        - 720.0 * zp(5) * sp(7) * q * (221.0 * z2 + 25.0)
        - 4000.0 * zp(4) * sp(6)
        + 24.0 * zp(3) * sp(5) * q2 * (8847.0 * z2 + 580.0)
        + 5400.0 * z2 * sp(4) * q
        - 10.0 * z * sp(3) * (12432.0 * z2 * q3 + 288.0 * q3 - 25.0)
        - 1200.0 * sp(2) * q2
        + 27360.0 * z * s * q2 * q2
        - 5525.0;
    Ok(-s / (46080.0 * q.powi(5)) * brace)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn g_values() {
        assert_eq!(g_coeff(1, c(0.0)).unwrap(), c(-0.25));
        assert!((g_coeff(1, c(1e7)).unwrap() + 1.0 / 24.0).norm() < 1e-12);
        assert!((g_coeff(2, c(0.0)).unwrap() - 19.0 / 32.0).norm() < 1e-15);
        assert!(matches!(g_coeff(3, c(1.0)), Err(Error::Pole(_))));
        assert!(g_coeff(5, c(0.3)).is_err());
    }

    #[test]
    fn g_is_even() {
        let z = Complex64::new(0.7, 1.3);
        for s in 1..=4 {
            let a = g_coeff(s, z).unwrap();
            let b = g_coeff(s, -z).unwrap();
            assert!((a - b).norm() <= 1e-15 * a.norm());
        }
    }

    #[test]
    fn upsilon1_is_finite_through_turning_point() {
        let a = upsilon1(c(1.0 + 1e-4)).unwrap();
        let b = upsilon1(c(1.0 + 1e-5)).unwrap();
        assert!((a - b).norm() <= 1e-3);
        // the closed form and the local series agree where both are usable
        let z = Complex64::new(1.0 + 0.0099, 0.0);
        let series = poly(&UPSILON1_SERIES.iter().rev().copied().collect::<Vec<_>>(), z - 1.0);
        let b = mapping::map_bundle(z).unwrap();
        let closed = z * b.sigma * g_coeff(1, z).unwrap() / b.zeta - 5.0 / (48.0 * b.zeta * b.zeta);
        assert!((series - closed).norm() < 1e-9, "{series} {closed}");
        assert!(upsilon1(c(2.0)).unwrap().im == 0.0);
    }

    #[test]
    fn corrections_commute_with_conjugation() {
        let inp = CorrectionInput::at(Complex64::new(1.3, 0.8)).unwrap();
        let a = correction1(&inp).unwrap();
        let b = correction1(&inp.conj()).unwrap();
        assert_eq!(a.conj(), b);
        let a = correction2(&inp).unwrap();
        let b = correction2(&inp.conj()).unwrap();
        assert_eq!(a.conj(), b);
    }

    #[test]
    fn invariant_of_constructed_input() {
        let inp = CorrectionInput::at(Complex64::new(0.4, 2.0)).unwrap();
        let r = inp.sigma0 * inp.sigma0 * (inp.z0 * inp.z0 - 1.0) - inp.zeta0;
        assert!(r.norm() < 1e-12);
    }

    #[test]
    fn degenerate_near_turning_point() {
        let inp = CorrectionInput::at(c(1.0 + 1e-6)).unwrap();
        assert!(matches!(correction1(&inp), Err(Error::Degenerate(_))));
    }

    #[test]
    fn first_correction_decays_along_anti_stokes_ray() {
        let mut prev = f64::INFINITY;
        for r in [2.0, 8.0, 32.0, 128.0] {
            let zeta = Complex64::from_polar(r, std::f64::consts::PI / 3.0);
            let z0 = mapping::invert_zeta(zeta).unwrap();
            let v = correction1(&CorrectionInput::at(z0).unwrap()).unwrap().norm();
            assert!(v < prev);
            prev = v;
        }
    }
}

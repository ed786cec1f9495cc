//! Uniform asymptotic approximations to the zeros of `U(a, z)`.
//!
//! With `u = 2|a|` the zeros are written in a scaled variable `zhat` as
//! `zhat_m ~ zhat_{m,0} + zhat_{m,1}/u^2 + zhat_{m,2}/u^4`, where the leading
//! term solves `zeta(zhat_{m,0}) = u^{-2/3} x` for an Airy-type zero `x`:
//!
//! | family             | Airy-type zero                   | z-plane zero             |
//! |--------------------|----------------------------------|--------------------------|
//! | `AposComplex`      | `e^{pi i/3} abs(a_m)`, `a_m` of Ai | `i sqrt(2u) zhat`        |
//! | `AnegPositive`     | `a_m` of Ai                      | `sqrt(2u) xhat`          |
//! | `AnegNonpositive`  | non-positive zeros of `Ai(u, .)` | `-sqrt(2u) xhat`         |
//! | `AnegComplex`      | complex zeros of `Ai(u, .)`      | `-sqrt(2u) conj(what)`   |
//!
//! Complex zeros are reported in the second quadrant; their conjugates are
//! zeros as well.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::airy;
use crate::coeffs::{self, CorrectionInput};
use crate::error::{Error, Result};
use crate::genairy;
use crate::mapping;

pub use crate::genairy::vartheta;

/// The largest number of expansion terms (`s = 0, 1, 2`).
pub const MAX_TERMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    AposComplex,
    AnegPositive,
    AnegNonpositive,
    AnegComplex,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::AposComplex => "apos-complex",
            FamilyKind::AnegPositive => "aneg-positive",
            FamilyKind::AnegNonpositive => "aneg-nonpositive",
            FamilyKind::AnegComplex => "aneg-complex",
        }
    }

    pub fn is_complex(self) -> bool {
        matches!(self, FamilyKind::AposComplex | FamilyKind::AnegComplex)
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "apos-complex" => Ok(FamilyKind::AposComplex),
            "aneg-positive" => Ok(FamilyKind::AnegPositive),
            "aneg-nonpositive" => Ok(FamilyKind::AnegNonpositive),
            "aneg-complex" => Ok(FamilyKind::AnegComplex),
            other => Err(Error::InvalidArgument(format!("unknown zero family '{other}'"))),
        }
    }
}

/// A zero family of `U(a, .)`; `count` is `None` for the infinite families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFamily {
    pub kind: FamilyKind,
    pub a: f64,
    pub u: f64,
    pub count: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionOptions {
    /// Number of expansion terms, `1..=MAX_TERMS`.
    pub terms: usize,
    /// Use numerically refined zeros of `Ai(u, .)` instead of their
    /// asymptotic forms (affects the `a < 0` families).
    pub refine_airy: bool,
}

impl Default for ExpansionOptions {
    fn default() -> Self {
        Self {
            terms: MAX_TERMS,
            refine_airy: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroApproximation {
    pub family: FamilyKind,
    pub m: i64,
    /// Leading term `zhat_{m,0}`.
    pub z0: Complex64,
    /// Correction coefficients `zhat_{m,s}`, `s = 1, 2, ...`.
    pub terms: Vec<Complex64>,
    /// `z0 + sum terms[s-1] / u^{2s}` over the terms used.
    pub zhat: Complex64,
    /// The zero of `U(a, .)` in the z-plane.
    pub z: Complex64,
    /// Expansion terms actually used, including the leading one. Can be less
    /// than requested when the leading term sits on the turning point.
    pub terms_used: usize,
}

fn check_terms(opts: &ExpansionOptions) -> Result<()> {
    if (1..=MAX_TERMS).contains(&opts.terms) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "terms must be in 1..={MAX_TERMS}, got {}",
            opts.terms
        )))
    }
}

fn check_a(a: f64, positive: bool) -> Result<()> {
    let ok = a.is_finite() && if positive { a > 0.0 } else { a < 0.0 };
    if ok {
        Ok(())
    } else {
        let want = if positive { "a > 0" } else { "a < 0" };
        Err(Error::InvalidArgument(format!("this family needs {want}, got a = {a}")))
    }
}

/// Leading term plus corrections, in the scaled plane.
fn assemble(zhat0: Complex64, u: f64, terms: usize) -> Result<(Vec<Complex64>, Complex64, usize)> {
    if terms == 1 {
        return Ok((Vec::new(), zhat0, 1));
    }
    let inp = CorrectionInput::at(zhat0)?;
    let c1 = match coeffs::correction1(&inp) {
        Ok(c) => c,
        Err(Error::Degenerate(_)) => return Ok((Vec::new(), zhat0, 1)),
        Err(e) => return Err(e),
    };
    let mut out = vec![c1];
    if terms >= 3 {
        out.push(coeffs::correction2(&inp)?);
    }
    let u2 = u * u;
    let mut zhat = zhat0;
    let mut scale = 1.0;
    for c in &out {
        scale /= u2;
        zhat += c * scale;
    }
    let used = out.len() + 1;
    Ok((out, zhat, used))
}

/// Real leading term: keep it exactly real.
fn real_leading(target: f64) -> Result<Complex64> {
    let x = mapping::invert_zeta(Complex64::new(target, 0.0))?;
    Ok(Complex64::new(x.re, 0.0))
}

/// Number of positive zeros `M+` of `U(-u/2, .)`.
pub fn count_positive(u: f64) -> usize {
    if !u.is_finite() || u <= 3.0 {
        return 0;
    }
    if u == u.round() && (u as i64) % 2 == 1 {
        let n = ((u - 1.0) / 2.0) as usize;
        return n / 2;
    }
    ((u + 1.0) / 4.0).floor() as usize
}

/// The `m`-th complex zero of `U(a, .)` for `a > 0` in the second quadrant.
pub fn zeros_apos(a: f64, m: u32, opts: &ExpansionOptions) -> Result<ZeroApproximation> {
    check_a(a, true)?;
    check_terms(opts)?;
    if m == 0 {
        return Err(Error::Index {
            index: 0,
            lo: 1,
            hi: i64::MAX,
        });
    }
    let u = 2.0 * a;
    let am = airy::real_airy_zero(m).abs();
    let zeta0 = Complex64::from_polar(am * u.powf(-2.0 / 3.0), PI / 3.0);
    let z0 = mapping::invert_zeta(zeta0)?;
    let (terms, zhat, terms_used) = assemble(z0, u, opts.terms)?;
    Ok(ZeroApproximation {
        family: FamilyKind::AposComplex,
        m: i64::from(m),
        z0,
        terms,
        zhat,
        z: Complex64::i() * (2.0 * u).sqrt() * zhat,
        terms_used,
    })
}

/// The `m`-th positive zero (`1 <= m <= M+`) for `a < 0`, ordered by
/// decreasing value.
pub fn zeros_aneg_positive(a: f64, m: u32, opts: &ExpansionOptions) -> Result<ZeroApproximation> {
    check_a(a, false)?;
    check_terms(opts)?;
    let u = -2.0 * a;
    let count = count_positive(u);
    if m == 0 || m as usize > count {
        return Err(Error::Index {
            index: i64::from(m),
            lo: 1,
            hi: count as i64,
        });
    }
    let target = airy::real_airy_zero(m) * u.powf(-2.0 / 3.0);
    let z0 = real_leading(target)?;
    let (terms, zhat, terms_used) = assemble(z0, u, opts.terms)?;
    let zhat = Complex64::new(zhat.re, 0.0);
    Ok(ZeroApproximation {
        family: FamilyKind::AnegPositive,
        m: i64::from(m),
        z0,
        terms,
        zhat,
        z: (2.0 * u).sqrt() * zhat,
        terms_used,
    })
}

fn check_not_polynomial(u: f64) -> Result<()> {
    if u == u.round() && (u as i64) % 2 == 1 {
        Err(Error::PolynomialCase(u))
    } else {
        Ok(())
    }
}

/// The non-positive zero with index `m` in `1 - vartheta ..= M- - vartheta`,
/// ordered by decreasing `xhat` (the zero itself is `-sqrt(2u) xhat`).
pub fn zeros_aneg_nonpositive(a: f64, m: i64, opts: &ExpansionOptions) -> Result<ZeroApproximation> {
    check_a(a, false)?;
    check_terms(opts)?;
    let u = -2.0 * a;
    if u <= 1.0 {
        return Err(Error::InvalidArgument(format!("non-positive zeros need u > 1, got u = {u}")));
    }
    check_not_polynomial(u)?;
    let first = 1 - i64::from(vartheta(u));
    if m < first {
        return Err(Error::Index {
            index: m,
            lo: first,
            hi: i64::MAX,
        });
    }
    let approx = nonpositive_unchecked(u, m, opts)?;
    if approx.zhat.re < 0.0 {
        let count = count_nonpositive(a, opts)?;
        return Err(Error::Index {
            index: m,
            lo: first,
            hi: count as i64 - 1 + first,
        });
    }
    Ok(approx)
}

fn nonpositive_unchecked(u: f64, m: i64, opts: &ExpansionOptions) -> Result<ZeroApproximation> {
    let x = if m == 0 {
        genairy::sole_positive_zero(u)?
            .ok_or(Error::Index {
                index: 0,
                lo: 1,
                hi: i64::MAX,
            })?
            .value
            .re
    } else {
        let m32 = u32::try_from(m).map_err(|_| Error::Index {
            index: m,
            lo: 0,
            hi: i64::from(u32::MAX),
        })?;
        genairy::neg_zeros(u, m32, opts.refine_airy)?.value.re
    };
    let z0 = real_leading(x * u.powf(-2.0 / 3.0))?;
    let (terms, zhat, terms_used) = assemble(z0, u, opts.terms)?;
    let zhat = Complex64::new(zhat.re, 0.0);
    Ok(ZeroApproximation {
        family: FamilyKind::AnegNonpositive,
        m,
        z0,
        terms,
        zhat,
        z: -(2.0 * u).sqrt() * zhat,
        terms_used,
    })
}

/// `M-`: the number of indices whose expansion value `xhat` is non-negative.
pub fn count_nonpositive(a: f64, opts: &ExpansionOptions) -> Result<usize> {
    check_a(a, false)?;
    let u = -2.0 * a;
    if u <= 1.0 {
        return Ok(0);
    }
    check_not_polynomial(u)?;
    let first = 1 - i64::from(vartheta(u));
    let mut count = 0;
    let mut m = first;
    loop {
        match nonpositive_unchecked(u, m, opts) {
            Ok(z) if z.zhat.re >= 0.0 => count += 1,
            Ok(_) | Err(Error::Domain(_)) => return Ok(count),
            Err(e) => return Err(e),
        }
        m += 1;
    }
}

/// The `m`-th complex zero for `a < 0`, reported in the second quadrant.
pub fn zeros_aneg_complex(a: f64, m: u32, opts: &ExpansionOptions) -> Result<ZeroApproximation> {
    check_a(a, false)?;
    check_terms(opts)?;
    let u = -2.0 * a;
    let airy_zero = genairy::complex_zeros(u, m, opts.refine_airy)?.value;
    let z0 = mapping::invert_zeta(airy_zero * u.powf(-2.0 / 3.0))?;
    let (terms, zhat, terms_used) = assemble(z0, u, opts.terms)?;
    Ok(ZeroApproximation {
        family: FamilyKind::AnegComplex,
        m: i64::from(m),
        z0,
        terms,
        zhat,
        z: -(2.0 * u).sqrt() * zhat.conj(),
        terms_used,
    })
}

/// Dispatch on the family; `m` follows each family's own indexing.
pub fn zero(kind: FamilyKind, a: f64, m: i64, opts: &ExpansionOptions) -> Result<ZeroApproximation> {
    let as_u32 = |m: i64| {
        u32::try_from(m).map_err(|_| Error::Index {
            index: m,
            lo: 1,
            hi: i64::from(u32::MAX),
        })
    };
    match kind {
        FamilyKind::AposComplex => zeros_apos(a, as_u32(m)?, opts),
        FamilyKind::AnegPositive => zeros_aneg_positive(a, as_u32(m)?, opts),
        FamilyKind::AnegNonpositive => zeros_aneg_nonpositive(a, m, opts),
        FamilyKind::AnegComplex => zeros_aneg_complex(a, as_u32(m)?, opts),
    }
}

/// The family descriptor, with `M+` or `M-` for the finite ones.
pub fn family(kind: FamilyKind, a: f64, opts: &ExpansionOptions) -> Result<ZeroFamily> {
    let u = 2.0 * a.abs();
    let count = match kind {
        FamilyKind::AposComplex => {
            check_a(a, true)?;
            None
        }
        FamilyKind::AnegComplex => {
            check_a(a, false)?;
            None
        }
        FamilyKind::AnegPositive => {
            check_a(a, false)?;
            Some(count_positive(u))
        }
        FamilyKind::AnegNonpositive => Some(count_nonpositive(a, opts)?),
    };
    Ok(ZeroFamily { kind, a, u, count })
}

/// First index of a family (`1 - vartheta` for the non-positive zeros).
pub fn first_index(kind: FamilyKind, a: f64) -> i64 {
    match kind {
        FamilyKind::AnegNonpositive => 1 - i64::from(vartheta(2.0 * a.abs())),
        _ => 1,
    }
}

/// Asymptotic zeros of the Hermite polynomial `H_n`, in increasing order.
pub fn hermite_zeros(n: u32, opts: &ExpansionOptions) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let u = 2.0 * f64::from(n) + 1.0;
    let a = -u / 2.0;
    let mut pos = Vec::new();
    for m in 1..=count_positive(u) as u32 {
        let z = zeros_aneg_positive(a, m, opts)?;
        pos.push(u.sqrt() * z.zhat.re);
    }
    let mut all: Vec<f64> = pos.iter().map(|x| -x).collect();
    if n % 2 == 1 {
        all.push(0.0);
    }
    all.extend(pos.iter().rev());
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(terms: usize) -> ExpansionOptions {
        ExpansionOptions {
            terms,
            refine_airy: true,
        }
    }

    #[test]
    fn positive_zero_counts() {
        assert_eq!(count_positive(12.4), 3);
        assert_eq!(count_positive(61.0), 15);
        assert_eq!(count_positive(2.5), 0);
        assert_eq!(count_positive(3.0), 0);
        assert_eq!(count_positive(7.0), 1);
        assert_eq!(count_positive(9.0), 2);
    }

    #[test]
    fn apos_leading_term_near_turning_point() {
        let u = 1e6;
        let z = zeros_apos(u / 2.0, 1, &opts(1)).unwrap();
        let a1 = airy::real_airy_zero(1).abs();
        let approx = 1.0 + Complex64::from_polar(a1 / (2f64.powf(1.0 / 3.0) * u.powf(2.0 / 3.0)), PI / 3.0);
        assert!((z.z0 - approx).norm() < 1e-6);
    }

    #[test]
    fn apos_second_quadrant_and_assembly() {
        let z = zeros_apos(8.3, 1, &opts(3)).unwrap();
        assert!(z.z.re < 0.0 && z.z.im > 0.0);
        let u: f64 = 16.6;
        let assembled = z.z0 + z.terms[0] / (u * u) + z.terms[1] / u.powi(4);
        assert_eq!(assembled, z.zhat);
        assert!((z.z - Complex64::new(-1.382_736_145_125, 6.603_634_203_32)).norm() < 1e-4);
    }

    #[test]
    fn hermite_thirty() {
        let xs = hermite_zeros(30, &opts(3)).unwrap();
        assert_eq!(xs.len(), 30);
        assert!((xs[29] - 6.863_345).abs() < 1e-5, "{}", xs[29]);
        assert!((xs[15] - 0.201_12).abs() < 1e-4, "{}", xs[15]);
        for (x, y) in xs.iter().zip(xs.iter().rev()) {
            assert_eq!(*x, -*y);
        }
    }

    #[test]
    fn hermite_two_is_close() {
        let xs = hermite_zeros(2, &opts(3)).unwrap();
        assert_eq!(xs.len(), 2);
        assert!((xs[1] - 0.5f64.sqrt()).abs() < 5e-2);
        assert_eq!(hermite_zeros(3, &opts(3)).unwrap()[1], 0.0);
    }

    #[test]
    fn aneg_positive_ordering_and_index() {
        let mut prev = f64::INFINITY;
        for m in 1..=3 {
            let z = zeros_aneg_positive(-6.2, m, &opts(3)).unwrap();
            assert!(z.zhat.re < prev && z.zhat.re > 0.0);
            prev = z.zhat.re;
        }
        assert!(matches!(zeros_aneg_positive(-6.2, 4, &opts(3)), Err(Error::Index { .. })));
    }

    #[test]
    fn aneg_nonpositive_chain() {
        let o = opts(3);
        let count = count_nonpositive(-6.2, &o).unwrap();
        assert!(count >= 2);
        let mut prev = f64::INFINITY;
        for m in 1..=count as i64 {
            let z = zeros_aneg_nonpositive(-6.2, m, &o).unwrap();
            assert!(z.zhat.re < prev && z.zhat.re >= 0.0);
            assert!(z.z.re <= 0.0 && z.z.im == 0.0);
            prev = z.zhat.re;
        }
        assert!(zeros_aneg_nonpositive(-6.2, count as i64 + 1, &o).is_err());
        assert!(matches!(zeros_aneg_nonpositive(-3.5, 1, &o), Err(Error::PolynomialCase(_))));
    }

    #[test]
    fn sole_positive_airy_zero_gives_xhat_above_one() {
        // u = 3.2: 3.2 - 2 = 1.2 in (1, 4/3)
        let a = -1.6;
        assert_eq!(first_index(FamilyKind::AnegNonpositive, a), 0);
        let z = zeros_aneg_nonpositive(a, 0, &opts(1)).unwrap();
        assert!(z.zhat.re > 1.0);
    }

    #[test]
    fn aneg_complex_quadrant_and_argument_trend() {
        let o = opts(3);
        let z1 = zeros_aneg_complex(-6.2, 1, &o).unwrap();
        let z100 = zeros_aneg_complex(-6.2, 100, &o).unwrap();
        assert!(z1.z.re < 0.0 && z1.z.im > 0.0);
        assert!((z1.z - Complex64::new(-5.690_558_573_8, 1.383_240_680_6)).norm() < 1e-3);
        assert!((z100.z0.arg() - PI / 4.0).abs() < (z1.z0.arg() - PI / 4.0).abs());
    }

    #[test]
    fn terms_are_validated() {
        assert!(zeros_apos(8.3, 1, &opts(0)).is_err());
        assert!(zeros_apos(8.3, 1, &opts(4)).is_err());
        assert!(zeros_apos(-8.3, 1, &opts(3)).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for k in [
            FamilyKind::AposComplex,
            FamilyKind::AnegPositive,
            FamilyKind::AnegNonpositive,
            FamilyKind::AnegComplex,
        ] {
            assert_eq!(k.name().parse::<FamilyKind>().unwrap(), k);
        }
    }
}

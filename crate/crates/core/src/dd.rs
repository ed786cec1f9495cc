//! Double-double real and complex arithmetic (about 32 significant digits),
//! built on the error-free transformations of Knuth and Dekker.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn split(a: f64) -> (f64, f64) {
    let t = 134_217_729.0 * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    /// From a pre-normalised pair, as produced by high-precision tables.
    pub(crate) const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    fn norm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    pub(crate) fn hi(self) -> f64 {
        self.hi
    }

    #[cfg(test)]
    fn lo(self) -> f64 {
        self.lo
    }

    pub(crate) fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Self::norm(p, e + self.lo * b)
    }

    pub(crate) fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let q2 = (s + (f - e + self.lo)) / b;
        Self::norm(q1, q2)
    }

    pub(crate) fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::ZERO;
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = ((self.hi - p) - e + self.lo) / (2.0 * x);
        Self::norm(x, r)
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl From<Dd> for f64 {
    fn from(x: Dd) -> f64 {
        x.hi + x.lo
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        Dd::norm(s, e + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + -b
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        Dd::norm(p, e + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Dd { hi: q1, lo: q2 } + Dd::from(q3)
    }
}

/// Complex double-double number.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct CDd {
    pub(crate) re: Dd,
    pub(crate) im: Dd,
}

impl CDd {
    pub(crate) fn new(re: Dd, im: Dd) -> Self {
        Self { re, im }
    }

    pub(crate) fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }
}

impl Neg for CDd {
    type Output = CDd;
    fn neg(self) -> CDd {
        CDd::new(-self.re, -self.im)
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, b: CDd) -> CDd {
        CDd::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, b: CDd) -> CDd {
        CDd::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, b: CDd) -> CDd {
        CDd::new(self.re * b.re - self.im * b.im, self.re * b.im + self.im * b.re)
    }
}

impl Mul<Dd> for CDd {
    type Output = CDd;
    fn mul(self, b: Dd) -> CDd {
        CDd::new(self.re * b, self.im * b)
    }
}

impl Div for CDd {
    type Output = CDd;
    fn div(self, b: CDd) -> CDd {
        let d = b.re * b.re + b.im * b.im;
        let n = self * b.conj();
        CDd::new(n.re / d, n.im / d)
    }
}

pub(crate) fn cdd(z: Complex64) -> CDd {
    CDd::new(Dd::from(z.re), Dd::from(z.im))
}

pub(crate) fn to_c64(z: CDd) -> Complex64 {
    Complex64::new(f64::from(z.re), f64::from(z.im))
}

pub(crate) fn scale(z: CDd, s: f64) -> CDd {
    CDd::new(z.re.mul_f64(s), z.im.mul_f64(s))
}

pub(crate) fn div_f64(z: CDd, s: f64) -> CDd {
    CDd::new(z.re.div_f64(s), z.im.div_f64(s))
}

pub(crate) fn norm1(z: CDd) -> f64 {
    z.re.hi.abs() + z.im.hi.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    // reference values from 40-digit arithmetic
    #[test]
    fn division_and_sqrt_are_double_double() {
        let third = Dd::from(1.0) / Dd::from(3.0);
        assert_eq!((third.hi(), third.lo()), (0.333_333_333_333_333_3, 1.850_371_707_708_594e-17));
        let s = Dd::from(2.0).sqrt();
        assert_eq!(s.hi(), std::f64::consts::SQRT_2);
        assert!((s.lo() + 9.667_293_313_452_913e-17).abs() < 1e-31);
        let r = Dd::from(1.0).div_f64(3.0);
        assert_eq!(r, third);
    }

    #[test]
    fn round_trip_products() {
        let a = Dd::from(1.0) / Dd::from(7.0);
        let b = a * Dd::from(7.0) - Dd::from(1.0);
        assert!(f64::from(b).abs() < 1e-31);
        let z = CDd::new(a, Dd::from(0.3));
        let w = CDd::new(Dd::from(-1.7), a);
        let back = z * w / w - z;
        assert!(norm1(back) < 1e-31);
    }
}

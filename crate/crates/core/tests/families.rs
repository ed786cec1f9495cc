use std::f64::consts::PI;

use num_complex::Complex64;
use pcfz_core::zeros::{self, ExpansionOptions, FamilyKind};
use pcfz_core::{pcf_eval, refine, Error};

fn opts(terms: usize) -> ExpansionOptions {
    ExpansionOptions {
        terms,
        refine_airy: true,
    }
}

fn refined(kind: FamilyKind, a: f64, m: i64) -> Complex64 {
    let seed = zeros::zero(kind, a, m, &opts(3)).unwrap();
    refine::t_iterate(a, seed.z).unwrap().value
}

fn sign_changes(a: f64, end: f64, sign: f64) -> usize {
    let n = 6000;
    let mut prev = 0.0;
    let mut count = 0;
    for k in 1..=n {
        let x = sign * end * f64::from(k) / f64::from(n);
        let v = pcf_eval::eval_u(a, Complex64::new(x, 0.0)).unwrap().value.re;
        if prev * v < 0.0 {
            count += 1;
        }
        if v != 0.0 {
            prev = v;
        }
    }
    count
}

#[test]
fn each_term_improves_every_family() {
    let cases = [
        (FamilyKind::AposComplex, 8.3, 1..=10),
        (FamilyKind::AnegComplex, -6.2, 1..=10),
        (FamilyKind::AnegPositive, -15.3, 1..=7),
        (FamilyKind::AnegNonpositive, -15.3, 1..=6),
    ];
    for (kind, a, ms) in cases {
        for m in ms {
            let exact = refined(kind, a, m);
            let errs: Vec<f64> = (1..=3)
                .map(|k| (zeros::zero(kind, a, m, &opts(k)).unwrap().z - exact).norm())
                .collect();
            assert!(errs[2] <= errs[1] && errs[1] <= errs[0], "{} m = {m}: {errs:?}", kind.name());
        }
    }
}

#[test]
fn positive_zero_count_matches_sign_changes() {
    for u in [5.5, 9.1, 12.4, 20.2] {
        assert_eq!(zeros::count_positive(u), sign_changes(-u / 2.0, 2.4 * u.sqrt(), 1.0), "u = {u}");
    }
}

#[test]
fn non_positive_count_matches_sign_changes() {
    for u in [12.4, 20.2, 40.6] {
        let a = -u / 2.0;
        let count = zeros::count_nonpositive(a, &opts(3)).unwrap();
        let oracle = sign_changes(a, 2.4 * u.sqrt(), -1.0);
        assert!(count.abs_diff(oracle) <= 1, "u = {u}: {count} vs {oracle}");
    }
    let m_minus = zeros::count_nonpositive(-100.0, &opts(3)).unwrap();
    assert!(m_minus.abs_diff(zeros::count_positive(200.0)) <= 1);
}

#[test]
fn residual_identity_holds_for_assembled_zeros() {
    let a: f64 = -6.2;
    let scale = 2.0 * a.abs().sqrt();
    for m in 5..=20 {
        let z = zeros::zeros_aneg_complex(a, m, &opts(3)).unwrap().z;
        let r = pcf_eval::connection_residual(a, -z / scale).unwrap();
        assert!(r <= 1e-6, "m = {m}: {r:e}");
    }
}

#[test]
fn conjugate_zero_is_as_good() {
    for (kind, a) in [(FamilyKind::AposComplex, 8.3), (FamilyKind::AnegComplex, -6.2)] {
        for m in [1, 4, 30] {
            let z = refined(kind, a, m);
            let at = pcf_eval::eval_u(a, z).unwrap();
            let conj = pcf_eval::eval_u(a, z.conj()).unwrap();
            assert!(conj.value.norm() <= 10.0 * at.value.norm() + f64::MIN_POSITIVE);
        }
    }
}

#[test]
fn sweep_reproduces_expansion_ladder() {
    let a = 8.3;
    let zs = refine::sweep(a, refined(FamilyKind::AposComplex, a, 1), 20).unwrap();
    for (m, z) in zs.iter().enumerate() {
        let want = refined(FamilyKind::AposComplex, a, m as i64 + 1);
        assert!((z.value - want).norm() <= 1e-12 * want.norm(), "m = {}", m + 1);
    }
    // consecutive displacements keep their direction
    for w in zs.windows(3) {
        let d1 = w[1].value - w[0].value;
        let d2 = w[2].value - w[1].value;
        assert!((d1 * d2.conj()).re > 0.0);
    }
}

#[test]
fn displacement_predicts_spacing() {
    let a: f64 = 8.3;
    let z5 = refined(FamilyKind::AposComplex, a, 5);
    let z6 = refined(FamilyKind::AposComplex, a, 6);
    let q = (-z5 * z5 / 4.0 - a).sqrt();
    let predicted = PI / q.norm();
    let actual = (z6 - z5).norm();
    assert!((predicted / actual - 1.0).abs() < 0.3, "{predicted} vs {actual}");
}

#[test]
fn iteration_converges_quartically() {
    let a = -6.2;
    let exact = refined(FamilyKind::AnegComplex, a, 3);
    let mut z = zeros::zeros_aneg_complex(a, 3, &opts(1)).unwrap().z;
    let mut errs = vec![(z - exact).norm()];
    for _ in 0..3 {
        z += refine::t_step(a, z).unwrap();
        errs.push((z - exact).norm());
    }
    assert!(errs[1] < 1e-6, "{errs:?}");
    // e1 <= C e0^4 with a moderate constant
    assert!(errs[1] <= 1e3 * errs[0].powi(4), "{errs:?}");
}

#[test]
fn hermite_case_rejects_non_positive_family() {
    let r = zeros::zeros_aneg_nonpositive(-30.5, 1, &opts(3));
    assert!(matches!(r, Err(Error::PolynomialCase(_))));
    let r = zeros::zeros_aneg_positive(-30.5, 16, &opts(3));
    assert!(matches!(r, Err(Error::Index { hi: 15, .. })));
}

use std::f64::consts::PI;

use num_complex::Complex64;
use pcfz_core::zeros::{self, ExpansionOptions};
use pcfz_core::{genairy, mapping, pcf_eval, refine};
use proptest::prelude::*;

fn opts(terms: usize) -> ExpansionOptions {
    ExpansionOptions {
        terms,
        refine_airy: true,
    }
}

/// Away from the Hermite cases, where the complex zeros disappear.
fn far_from_odd(u: f64) -> bool {
    let r = (u - 1.0).rem_euclid(2.0);
    r.min(2.0 - r) > 0.05
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn zeta_inverse_round_trips(r in 0.01f64..60.0, theta in -3.1f64..3.1) {
        let target = Complex64::from_polar(r, theta);
        let z = mapping::invert_zeta(target).unwrap();
        let back = mapping::zeta(z).unwrap();
        prop_assert!((back - target).norm() <= 1e-12 * (1.0 + r), "{target} -> {z} -> {back}");
    }

    #[test]
    fn evaluation_commutes_with_conjugation(a in -20.0f64..20.0, x in -12.0f64..12.0, y in 0.0f64..12.0) {
        let z = Complex64::new(x, y);
        let v = pcf_eval::eval_u(a, z).unwrap();
        let w = pcf_eval::eval_u(a, z.conj()).unwrap();
        prop_assert_eq!(w.value, v.value.conj());
        prop_assert_eq!(w.derivative, v.derivative.conj());
        prop_assert_eq!(w.log_scale, v.log_scale);
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn methods_agree_within_their_estimates(a in -15.0f64..15.0, r in 0.5f64..14.0, theta in 0.0f64..PI) {
        let z = Complex64::from_polar(r, theta);
        let p = pcf_eval::eval_u_precise(a, z).unwrap();
        let q = pcf_eval::eval_u(a, z).unwrap();
        prop_assume!(p.est_accuracy < 1e-8 && q.est_accuracy < 1e-8);
        let k = 1.0 + (z * z / 4.0 + a).norm().sqrt();
        let shift = (q.log_scale - p.log_scale).exp();
        let diff = (q.value * shift - p.value).norm() / (p.value.norm() + p.derivative.norm() / k);
        prop_assert!(diff <= 10.0 * (p.est_accuracy + q.est_accuracy), "{diff:e}");
    }

    #[test]
    fn quadrature_agrees_where_it_converges(a in -0.4f64..10.0, x in 0.2f64..6.0, y in 0.0f64..6.0) {
        let z = Complex64::new(x, y);
        if let Ok(qv) = pcf_eval::eval_u_quadrature(a, z) {
            let v = pcf_eval::eval_u(a, z).unwrap();
            let (u1, d1) = qv.unscaled().unwrap();
            let (u2, d2) = v.unscaled().unwrap();
            let k = 1.0 + (z * z / 4.0 + a).norm().sqrt();
            let scale = u2.norm() + d2.norm() / k;
            let diff = (u1 - u2).norm() + (d1 - d2).norm() / k;
            prop_assert!(diff <= 10.0 * (qv.est_accuracy + v.est_accuracy) * scale + 1e-300, "{diff:e} vs {scale:e}");
        }
    }

    #[test]
    fn refined_apos_zeros_wind_once(a in 2.0f64..40.0, m in 1u32..40) {
        let seed = zeros::zeros_apos(a, m, &opts(3)).unwrap();
        let r = refine::t_iterate(a, seed.z).unwrap();
        prop_assert!(r.value.re < 0.0 && r.value.im > 0.0);
        prop_assert!(refine::certify(a, r.value).unwrap());
        let again = refine::t_iterate(a, r.value).unwrap();
        prop_assert!(again.iterations <= 1);
    }

    #[test]
    fn refined_aneg_complex_zeros_wind_once(a in -30.0f64..-1.0, m in 1u32..40) {
        prop_assume!(far_from_odd(-2.0 * a));
        let seed = zeros::zeros_aneg_complex(a, m, &opts(3)).unwrap();
        let r = refine::t_iterate(a, seed.z).unwrap();
        prop_assert!(r.value.re < 0.0 && r.value.im > 0.0);
        prop_assert!(refine::certify(a, r.value).unwrap());
    }

    #[test]
    fn positive_zeros_decrease_and_stay_inside(u in 3.2f64..80.0) {
        let a = -u / 2.0;
        let mut prev = (2.0 * u).sqrt();
        for m in 1..=zeros::count_positive(u) as u32 {
            let z = zeros::zeros_aneg_positive(a, m, &opts(3)).unwrap();
            prop_assert!(z.z.im == 0.0 && z.z.re > 0.0 && z.z.re < prev);
            prev = z.z.re;
        }
    }

    #[test]
    fn airy_combination_zeros_satisfy_identity(u in 2.0f64..40.0, m in 1u32..20) {
        prop_assume!(far_from_odd(u));
        let z = genairy::complex_zeros(u, m, true).unwrap();
        prop_assert!(z.value.re > 0.0 && z.value.im > 0.0);
        prop_assert!(genairy::identity_residual(u, z.value).unwrap() <= 1e-10);
    }
}

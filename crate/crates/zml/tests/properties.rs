//! Randomized invariants over the public API.

use num_complex::Complex64;
use proptest::prelude::*;
use zml::value::ComplexValue;
use zml::{bounds, contour, quad, zeta};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Closed-form check: the adaptive driver integrates cubics exactly.
    #[test]
    fn quadrature_exact_on_cubics(
        c0 in -3.0..3.0f64,
        c1 in -3.0..3.0f64,
        c2 in -3.0..3.0f64,
        c3 in -3.0..3.0f64,
        a in -5.0..5.0f64,
        len in 0.1..10.0f64,
    ) {
        let b = a + len;
        let r = quad::integrate(
            |x: f64| Ok(c0 + x * (c1 + x * (c2 + x * c3))),
            a,
            b,
            1e-10,
            100_000,
        )
        .unwrap();
        let anti = |x: f64| x * (c0 + x * (c1 / 2.0 + x * (c2 / 3.0 + x * c3 / 4.0)));
        let scale = 1.0 + anti(b).abs() + anti(a).abs();
        prop_assert!((r.value - (anti(b) - anti(a))).abs() < 1e-9 * scale);
    }

    /// zeta(conj s) must equal conj(zeta(s)) exactly, by construction.
    #[test]
    fn zeta_conjugation_symmetry(sigma in 0.3..2.0f64, t in 2.0..500.0f64) {
        let upper = zeta::eval_zeta(ComplexValue::exact(sigma, t), 1e-9).unwrap();
        let lower = zeta::eval_zeta(ComplexValue::exact(sigma, -t), 1e-9).unwrap();
        prop_assert_eq!(upper.re, lower.re);
        prop_assert_eq!(upper.im, -lower.im);
    }

    /// |chi(1/2 + it)| = 1 on the critical line.
    #[test]
    fn chi_unimodular_on_critical_line(t in 2.0..1000.0f64) {
        let chi = zeta::chi_factor(ComplexValue::exact(0.5, t)).unwrap();
        prop_assert!((chi.norm() - 1.0).abs() < 1e-9);
    }

    /// The equalization identity behind the optimal X, in log space.
    #[test]
    fn x_choice_equalizes(
        r in 0u32..20,
        beta in (5.0 / 6.0)..0.999f64,
        log_gamma in 2.0..60.0f64,
        b in 0.1..10.0f64,
    ) {
        let gamma = log_gamma.exp();
        let x = contour::x_choice(r, beta, gamma, b).unwrap();
        let lhs = -(r as f64) * 3.0f64.ln() + beta * x.ln();
        let rhs = -3.0 * (1.0 - beta) * x.ln() + 3.0 * b * (1.0 - beta).powf(1.5) * gamma.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    /// Every bound report's valid flag is the conjunction of its conditions.
    #[test]
    fn bound_reports_valid_is_conjunction(
        beta in (5.0 / 6.0)..0.999f64,
        gamma in 20.0..1.0e8f64,
        delta in 0.01..0.12f64,
    ) {
        for report in [
            bounds::theorem1_bound(gamma, delta, 1.0, 1.0, 0.0, 0.0).unwrap(),
            bounds::theorem2_bound(gamma, delta, 1.0, 0.0).unwrap(),
            bounds::theorem4_bound(beta, gamma, 0.01, 0.0).unwrap(),
            bounds::corollary1_bound(beta, gamma).unwrap(),
            bounds::trudgian_s_bound(gamma).unwrap(),
        ] {
            prop_assert_eq!(report.valid, report.conditions.iter().all(|c| c.1));
        }
    }

    /// Z(t) and |zeta(1/2 + it)| agree within stated errors.
    #[test]
    fn hardy_z_modulus_consistency(t in 10.0..2000.0f64) {
        let z = zeta::hardy_z(t, 1e-8).unwrap();
        let (zeta_val, err) = {
            let v = zeta::eval_zeta(ComplexValue::exact(0.5, t), 1e-8).unwrap();
            (Complex64::new(v.re, v.im).norm(), v.abs_err)
        };
        prop_assert!((z.value.abs() - zeta_val).abs() <= z.abs_err + err + 1e-12);
    }
}

//! Evaluation of zeta(s), the Hardy function Z(t), the Riemann-Siegel
//! theta function and the functional-equation factor chi(s), each with a
//! controlled absolute-error estimate.
//!
//! Two independent evaluation routes are kept side by side: Euler-Maclaurin
//! continuation of the Dirichlet series (any sigma in the accepted strip)
//! and the Riemann-Siegel main sum with four correction terms (critical
//! line, large t). Their agreement is a standing cross-check.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::{Result, ZmlError};
use crate::gamma::log_gamma_c;
use crate::value::{ComplexValue, EvalDomain, RealValue};

pub const PI: f64 = std::f64::consts::PI;
const TWO_PI: f64 = 2.0 * PI;

// ---------------------------------------------------------------------------
// Euler-Maclaurin
// ---------------------------------------------------------------------------

const EM_BERNOULLI_TERMS_MAX: usize = 16;

/// B_{2k} / (2k)! for k = 1..=16. The Bernoulli numbers come from the
/// defining recurrence sum_{j<=n} C(n+1, j) B_j = [n = 0], which is exact
/// apart from f64 rounding (~1e-14 relative at k = 16).
fn bernoulli_over_factorial() -> &'static [f64; EM_BERNOULLI_TERMS_MAX + 1] {
    static TABLE: OnceLock<[f64; EM_BERNOULLI_TERMS_MAX + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        const NMAX: usize = 2 * EM_BERNOULLI_TERMS_MAX;
        let mut bern = [0.0f64; NMAX + 1];
        bern[0] = 1.0;
        for n in 1..=NMAX {
            let mut acc = 0.0;
            let mut binom = 1.0; // C(n+1, j)
            for (j, &bj) in bern.iter().enumerate().take(n) {
                acc += binom * bj;
                binom = binom * (n + 1 - j) as f64 / (j + 1) as f64;
            }
            bern[n] = -acc / binom; // binom is now C(n+1, n) = n+1
        }
        let mut t = [0.0; EM_BERNOULLI_TERMS_MAX + 1];
        let mut factorial = 1.0f64;
        for (k, slot) in t.iter_mut().enumerate().skip(1) {
            factorial *= (2 * k - 1) as f64 * (2 * k) as f64;
            *slot = bern[2 * k] / factorial;
        }
        t
    })
}

/// One Euler-Maclaurin pass with `n_terms` series terms and `m` Bernoulli
/// correction terms. Returns (value, magnitude of the last correction term).
fn zeta_em_pass(s: Complex64, n_terms: usize, m: usize) -> (Complex64, f64) {
    let b = bernoulli_over_factorial();
    let nf = n_terms as f64;

    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..n_terms {
        sum += (-s * (n as f64).ln()).exp();
    }

    let n_pow_minus_s = (-s * nf.ln()).exp(); // N^{-s}
    sum += n_pow_minus_s * nf / (s - 1.0); // N^{1-s}/(s-1)
    sum += n_pow_minus_s * 0.5;

    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    let mut poch = s; // (s)_{2k-1} for k = 1
    let mut n_pow = n_pow_minus_s / nf; // N^{-s-1} = N^{1-s-2k} for k = 1
    let inv_n2 = 1.0 / (nf * nf);
    let mut last = 0.0;
    for k in 1..=m.min(EM_BERNOULLI_TERMS_MAX) {
        let term = b[k] * poch * n_pow;
        sum += term;
        last = term.norm();
        let j = 2 * k - 1;
        poch *= (s + j as f64) * (s + (j + 1) as f64);
        n_pow *= inv_n2;
    }
    (sum, last)
}

/// zeta(s) by Euler-Maclaurin continuation. Valid for sigma > 0, s != 1;
/// truncation depth doubles until two successive passes agree to tol/4.
pub fn zeta_em(s: Complex64, tol: f64) -> (Complex64, f64) {
    let t = s.im.abs();
    let mut n = (s.norm().ceil() as usize)
        .max((t / TWO_PI).ceil() as usize + 10)
        .max(16);
    let mut m = 8usize;
    let (mut prev, _) = zeta_em_pass(s, n, m);
    for _ in 0..8 {
        n *= 2;
        m = (m * 2).min(EM_BERNOULLI_TERMS_MAX);
        let (cur, last_term) = zeta_em_pass(s, n, m);
        let diff = (cur - prev).norm();
        if diff < tol / 4.0 {
            let round = 1e-16 * (n as f64).sqrt() * cur.norm().max(1.0);
            return (cur, (diff + last_term).max(round));
        }
        prev = cur;
    }
    // did not stabilise; report the value with an honest large error
    (prev, tol.max(1e-6))
}

/// zeta(s) with pole and domain checks; agrees with the Dirichlet series
/// for sigma >= 2 and continues it for 0 < sigma <= 3, s != 1.
pub fn eval_zeta(s: ComplexValue, tol: f64) -> Result<ComplexValue> {
    let sc = s.as_complex();
    let dist = (sc - 1.0).norm();
    if dist < 10.0 * tol {
        return Err(ZmlError::PoleAt1 { distance: dist });
    }
    let dom = EvalDomain::ACCEPTED;
    if sc.re <= dom.sigma_min || sc.re > dom.sigma_max || sc.im.abs() > dom.t_max {
        return Err(ZmlError::DomainExceeded {
            what: format!("s = {} + {}i for eval_zeta", sc.re, sc.im),
        });
    }
    // evaluate in the upper half plane and conjugate, so that
    // zeta(conj s) == conj(zeta(s)) holds bit-compatibly
    let flip = sc.im < 0.0;
    let arg = if flip { sc.conj() } else { sc };
    let (v, err) = zeta_em(arg, tol);
    let v = if flip { v.conj() } else { v };
    Ok(ComplexValue::from_complex(v, err + s.abs_err * 10.0))
}

// ---------------------------------------------------------------------------
// Riemann-Siegel theta
// ---------------------------------------------------------------------------

/// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi.
///
/// Asymptotic expansion for t >= 10 (truncation below 1e-11 there);
/// the exact log-gamma route below.
pub fn riemann_siegel_theta(t: f64) -> Result<RealValue> {
    if t < 2.0 {
        return Err(ZmlError::DomainExceeded {
            what: format!("t = {t} < 2 for riemann_siegel_theta"),
        });
    }
    if t < 10.0 {
        return Ok(theta_via_log_gamma(t));
    }
    let half = t / 2.0;
    let mut v = half * (half / PI).ln() - half - PI / 8.0;
    let t2 = t * t;
    // 1/(48t) + 7/(5760 t^3) + 31/(80640 t^5) + 127/(430080 t^7)
    v += (1.0 / 48.0
        + (7.0 / 5760.0 + (31.0 / 80640.0 + 127.0 / 430080.0 / t2) / t2) / t2)
        / t;
    let trunc = 512.0 / 1216512.0 / (t2 * t2 * t2 * t2 * t);
    let round = 4.0 * f64::EPSILON * v.abs();
    Ok(RealValue::new(v, trunc + round))
}

/// Oracle route: Im log Gamma(1/4 + it/2) - (t/2) log pi.
pub fn theta_via_log_gamma(t: f64) -> RealValue {
    let lg = log_gamma_c(Complex64::new(0.25, t / 2.0)).expect("no pole off the real axis");
    let v = lg.im - t / 2.0 * PI.ln();
    RealValue::new(v, 1e-13 * lg.norm().max(1.0))
}

// ---------------------------------------------------------------------------
// chi(s)
// ---------------------------------------------------------------------------

/// chi(s) = Gamma((1-s)/2) / Gamma(s/2) * pi^(s - 1/2), so that
/// zeta(s) = chi(s) zeta(1-s).
pub fn chi_factor(s: ComplexValue) -> Result<ComplexValue> {
    let sc = s.as_complex();
    let a = (1.0 - sc) / 2.0;
    let b = sc / 2.0;
    let log_chi = log_gamma_c(a)? - log_gamma_c(b)? + (sc - 0.5) * PI.ln();
    let v = log_chi.exp();
    let err = 1e-14 * log_chi.norm().max(1.0) * v.norm() + s.abs_err * (1.0 + sc.norm().ln().abs());
    Ok(ComplexValue::from_complex(v, err))
}

// ---------------------------------------------------------------------------
// Hardy Z
// ---------------------------------------------------------------------------

mod rs_coeffs;

fn poly_even(c: &[f64], z: f64) -> f64 {
    let z2 = z * z;
    c.iter().rev().fold(0.0, |acc, &ck| acc * z2 + ck)
}

fn poly_odd(c: &[f64], z: f64) -> f64 {
    z * poly_even(c, z)
}

/// Truncation-plus-rounding error model of the Riemann-Siegel route with
/// four correction terms.
pub fn riemann_siegel_err(t: f64) -> f64 {
    0.013 * t.powf(-2.75) + 2e-15 * t
}

/// Z(t) by the Riemann-Siegel formula: main sum plus corrections C0-C4.
pub fn hardy_z_riemann_siegel(t: f64) -> Result<RealValue> {
    if t < 2.0 * TWO_PI {
        return Err(ZmlError::DomainExceeded {
            what: format!("t = {t} too small for the Riemann-Siegel main sum"),
        });
    }
    let theta = riemann_siegel_theta(t)?;
    let a = (t / TWO_PI).sqrt();
    let n = a.floor() as usize;
    let p = a - n as f64;

    let mut main = 0.0;
    for k in 1..=n {
        let kf = k as f64;
        main += (theta.value - t * kf.ln()).cos() / kf.sqrt();
    }

    let z = 2.0 * p - 1.0;
    let inv = 1.0 / a;
    let corr = poly_even(&rs_coeffs::C0, z)
        + inv
            * (poly_odd(&rs_coeffs::C1, z)
                + inv
                    * (poly_even(&rs_coeffs::C2, z)
                        + inv * (poly_odd(&rs_coeffs::C3, z) + inv * poly_even(&rs_coeffs::C4, z))));
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let v = 2.0 * main + sign * corr / a.sqrt();
    Ok(RealValue::new(v, riemann_siegel_err(t)))
}

/// Z(t) through Euler-Maclaurin: e^{i theta(t)} zeta(1/2 + it), whose
/// imaginary part must vanish; its residue is folded into the error.
pub fn hardy_z_euler_maclaurin(t: f64, tol: f64) -> Result<RealValue> {
    let theta = riemann_siegel_theta(t)?;
    let (zeta, zerr) = zeta_em(Complex64::new(0.5, t), tol);
    let rot = Complex64::new(0.0, theta.value).exp() * zeta;
    let err = zerr + theta.abs_err * zeta.norm() + rot.im.abs();
    Ok(RealValue::new(rot.re, err))
}

/// The Hardy function Z(t), real-valued, with |Z(t)| = |zeta(1/2+it)|.
///
/// Dispatches to Riemann-Siegel once its error model meets the requested
/// tolerance, and to the Euler-Maclaurin route otherwise.
pub fn hardy_z(t: f64, tol: f64) -> Result<RealValue> {
    if t < 2.0 {
        return Err(ZmlError::DomainExceeded {
            what: format!("t = {t} < 2 for hardy_z"),
        });
    }
    if t > EvalDomain::ACCEPTED.t_max {
        return Err(ZmlError::DomainExceeded {
            what: format!("t = {t} beyond guaranteed height"),
        });
    }
    if t >= 30.0 && riemann_siegel_err(t) <= 0.5 * tol {
        hardy_z_riemann_siegel(t)
    } else {
        hardy_z_euler_maclaurin(t, tol)
    }
}

/// |zeta(sigma + it)|; uses |Z(t)| on the critical line where the
/// Riemann-Siegel route is much cheaper.
pub fn zeta_modulus(sigma: f64, t: f64, tol: f64) -> Result<RealValue> {
    if sigma == 0.5 && t >= 2.0 {
        let z = hardy_z(t, tol)?;
        Ok(RealValue::new(z.value.abs(), z.abs_err))
    } else {
        let v = eval_zeta(ComplexValue::exact(sigma, t), tol)?;
        Ok(RealValue::new(v.norm(), v.abs_err))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let v = eval_zeta(ComplexValue::exact(2.0, 0.0), TOL).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn zeta_at_half() {
        // Euler-Maclaurin with truncation doubled until stable; 30-digit
        // reference value
        let v = eval_zeta(ComplexValue::exact(0.5, 0.0), TOL).unwrap();
        assert!((v.re - -1.460_354_508_809_586_8).abs() < 1e-12, "{}", v.re);
    }

    #[test]
    fn zeta_at_first_zero_is_small() {
        let v = eval_zeta(ComplexValue::exact(0.5, 14.134_725_141_734_694), 1e-10).unwrap();
        assert!(v.norm() < 1e-8, "|zeta(rho_1)| = {}", v.norm());
    }

    #[test]
    fn zeta_reference_points() {
        // 30-digit references
        let v = eval_zeta(ComplexValue::exact(0.5, 20.0), TOL).unwrap();
        assert!((v.re - 0.429_913_860_437_843_37).abs() < 1e-11);
        assert!((v.im - -1.064_291_443_080_589_1).abs() < 1e-11);
        let v = eval_zeta(ComplexValue::exact(2.0, 5.0), TOL).unwrap();
        assert!((v.re - 0.850_962_943_624_263_0).abs() < 1e-12);
        assert!((v.im - 0.098_996_946_134_831_35).abs() < 1e-12);
        let v = eval_zeta(ComplexValue::exact(0.25, 30.0), TOL).unwrap();
        assert!((v.re - -0.586_482_788_839_217_9).abs() < 1e-10);
        assert!((v.im - -0.611_149_631_076_442_8).abs() < 1e-10);
    }

    #[test]
    fn pole_rejected() {
        assert!(matches!(
            eval_zeta(ComplexValue::exact(1.0, 0.0), 1e-8),
            Err(ZmlError::PoleAt1 { .. })
        ));
        assert!(matches!(
            eval_zeta(ComplexValue::exact(-0.5, 3.0), 1e-8),
            Err(ZmlError::DomainExceeded { .. })
        ));
    }

    #[test]
    fn conjugation_symmetry() {
        let s = ComplexValue::exact(0.7, 33.3);
        let a = eval_zeta(s, TOL).unwrap();
        let b = eval_zeta(s.conj(), TOL).unwrap();
        assert_eq!(a.re, b.re);
        assert_eq!(a.im, -b.im);
    }

    #[test]
    fn theta_matches_log_gamma_oracle() {
        for (t, tol) in [(100.0, 1e-9), (10.0, 1e-8), (1000.0, 1e-8)] {
            let asym = riemann_siegel_theta(t).unwrap();
            let oracle = theta_via_log_gamma(t);
            assert!(
                (asym.value - oracle.value).abs() < tol,
                "theta({t}): {} vs {}",
                asym.value,
                oracle.value
            );
        }
    }

    #[test]
    fn theta_reference_and_monotone() {
        let v = riemann_siegel_theta(100.0).unwrap();
        assert!((v.value - 87.972_165_231_787_22).abs() < 1e-9);
        assert!(
            riemann_siegel_theta(1000.0).unwrap().value > riemann_siegel_theta(100.0).unwrap().value
        );
    }

    #[test]
    fn chi_at_center_is_one() {
        let v = chi_factor(ComplexValue::exact(0.5, 0.0)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-13 && v.im.abs() < 1e-13);
    }

    #[test]
    fn chi_modulus_one_on_critical_line() {
        for t in [5.0, 50.0, 500.0] {
            let v = chi_factor(ComplexValue::exact(0.5, t)).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-10, "|chi(1/2+{t}i)| = {}", v.norm());
        }
    }

    #[test]
    fn chi_classical_values() {
        // chi(2) * zeta(-1) = zeta(2), with zeta(-1) = -1/12
        let chi2 = chi_factor(ComplexValue::exact(2.0, 0.0)).unwrap();
        let lhs = chi2.as_complex() * Complex64::new(-1.0 / 12.0, 0.0);
        assert!((lhs.re - PI * PI / 6.0).abs() < 1e-10, "{lhs}");
        assert!(lhs.im.abs() < 1e-10);
    }

    #[test]
    fn hardy_z_vanishes_at_first_zero() {
        let z = hardy_z(14.134_725_141_734_694, 1e-10).unwrap();
        assert!(z.value.abs() < 1e-9, "Z(gamma_1) = {}", z.value);
    }

    #[test]
    fn hardy_z_reference_points() {
        // 30-digit mpmath-style references for Z(t)
        for (t, want, tol) in [
            (20.0, 1.147_842_412_185_197_3, 1e-9),
            (100.0, 2.692_697_056_664_463_5, 1e-9),
            (1000.0, 0.997_794_637_521_586_6, 1e-9),
            (5000.5, 0.585_425_319_246_439_0, 1e-9),
            (100_000.25, 7.696_014_886_753_404, 1e-8),
            (999_999.5, 0.998_165_929_613_563_8, 1e-6),
        ] {
            let z = hardy_z(t, 1e-9).unwrap();
            assert!((z.value - want).abs() < tol, "Z({t}) = {} want {want}", z.value);
        }
    }

    #[test]
    fn rs_and_em_routes_agree() {
        let mut t = 50.0;
        while t <= 1e5 {
            let rs = hardy_z_riemann_siegel(t).unwrap();
            let em = hardy_z_euler_maclaurin(t, 1e-9).unwrap();
            let budget = 2.0 * (rs.abs_err + em.abs_err).max(1e-9);
            assert!(
                (rs.value - em.value).abs() <= budget,
                "t = {t}: rs {} em {} budget {budget:e}",
                rs.value,
                em.value
            );
            t *= 3.7;
        }
    }

    #[test]
    fn hardy_z_modulus_matches_zeta() {
        for t in [20.0, 1000.0] {
            let z = hardy_z(t, 1e-9).unwrap();
            let zeta = eval_zeta(ComplexValue::exact(0.5, t), 1e-9).unwrap();
            assert!((z.value.abs() - zeta.norm()).abs() < 2e-9);
        }
    }

    #[test]
    fn rs_c0_table_matches_psi_formula() {
        // C0(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
        for i in 0..40 {
            let p = 0.012 + i as f64 * 0.024;
            if (p - 0.25).abs() < 0.02 || (p - 0.75).abs() < 0.02 {
                continue; // removable singularity of the quotient form
            }
            let z = 2.0 * p - 1.0;
            let denom = (TWO_PI * p).cos();
            let psi = (TWO_PI * (p * p - p - 1.0 / 16.0)).cos() / denom;
            // the quotient form loses ~1e-16/|denom| to rounding
            assert!(
                (poly_even(&rs_coeffs::C0, z) - psi).abs() < 1e-15 / denom.abs() + 1e-15,
                "p = {p}"
            );
        }
    }

    #[test]
    fn functional_equation_residual() {
        // |zeta(s) - chi(s) zeta(1-s)| small on a fixed grid in the strip
        for &(sigma, t) in &[(0.3, 7.0), (0.5, 25.0), (0.8, 111.0), (0.55, 903.0)] {
            let s = ComplexValue::exact(sigma, t);
            let lhs = eval_zeta(s, TOL).unwrap();
            let chi = chi_factor(s).unwrap();
            let rhs_zeta = eval_zeta(ComplexValue::exact(1.0 - sigma, -t), TOL).unwrap();
            let rhs = chi.as_complex() * rhs_zeta.as_complex();
            let budget = 10.0 * (lhs.abs_err + chi.abs_err + rhs_zeta.abs_err).max(1e-12);
            assert!(
                (lhs.as_complex() - rhs).norm() <= budget,
                "functional equation at sigma={sigma}, t={t}: {:e} > {budget:e}",
                (lhs.as_complex() - rhs).norm()
            );
        }
    }
}

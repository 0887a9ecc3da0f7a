//! Rectangle-contour verification of the residue identities tying a zeta
//! value at a zero to a boundary integral whose integrand carries the
//! multiplicity through the factor s^{-r}, plus the optimal-X helper and
//! the gamma-decay envelope check.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, ZmlError};
use crate::gamma::gamma_c;
use crate::quad::gauss_legendre;
use crate::value::ComplexValue;
use crate::zeta::{zeta_em, PI};

/// Height cap for the rectangle: the gamma factor decays like e^{-|Im w|},
/// so truncating the nominal log^2 gamma height at 40 costs < 1e-15.
const HEIGHT_CAP: f64 = 40.0;

/// Zeta evaluations inside contour integrands run at this tolerance;
/// it sets the accuracy floor of a verification.
const EVAL_TOL: f64 = 1e-11;

/// Geometry and resolution of one contour verification.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ContourSpec {
    /// zero rho = beta + i gamma
    pub beta: f64,
    pub gamma: f64,
    /// multiplicity exponent in s^{-r}
    pub r: u32,
    /// shift parameter of the first identity
    pub alpha: f64,
    /// weight base of the second identity
    pub x: f64,
    pub nodes_per_side: usize,
}

impl ContourSpec {
    pub fn at_zero(beta: f64, gamma: f64) -> Self {
        ContourSpec {
            beta,
            gamma,
            r: 1,
            alpha: 0.5,
            x: 1.0,
            nodes_per_side: 2000,
        }
    }
}

/// Two-sided comparison of a residue identity.
#[derive(Debug, Clone, Serialize)]
pub struct ContourReport {
    pub identity: String,
    pub rho: ComplexValue,
    pub r: u32,
    #[serde(rename = "alpha_or_X")]
    pub alpha_or_x: f64,
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub abs_err: f64,
    pub rel_err: f64,
    pub nodes: usize,
    pub truncation_cap: f64,
}

/// Composite fixed-resolution Gauss integral of a complex integrand over
/// a real parameter range; panel count is chosen to meet `nodes` total.
fn composite<F: Fn(f64) -> Result<Complex64>>(
    f: F,
    a: f64,
    b: f64,
    nodes: usize,
) -> Result<(Complex64, usize)> {
    let (xs, ws) = gauss_legendre(15);
    let panels = (nodes / 15).max(1);
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut panel = Complex64::new(0.0, 0.0);
        for (&x, &w) in xs.iter().zip(&ws) {
            panel += f(mid + 0.5 * h * x)? * w;
        }
        acc += panel * (0.5 * h);
    }
    Ok((acc, panels * 15))
}

/// Counterclockwise boundary integral of `f` over the rectangle
/// [re_lo, re_hi] x [-h, h], summed in fixed side order
/// (bottom, right, top, left) for determinism.
fn rectangle_integral<F: Fn(Complex64) -> Result<Complex64> + Sync>(
    f: F,
    re_lo: f64,
    re_hi: f64,
    h: f64,
    nodes_per_side: usize,
) -> Result<(Complex64, usize)> {
    let i = Complex64::new(0.0, 1.0);
    let (bottom, n1) = composite(|x| f(Complex64::new(x, -h)), re_lo, re_hi, nodes_per_side)?;
    let (right, n2) = composite(|y| f(Complex64::new(re_hi, y)), -h, h, nodes_per_side)?;
    let (top, n3) = composite(|x| f(Complex64::new(x, h)), re_lo, re_hi, nodes_per_side)?;
    let (left, n4) = composite(|y| f(Complex64::new(re_lo, y)), -h, h, nodes_per_side)?;
    Ok((bottom + i * right - top - i * left, n1 + n2 + n3 + n4))
}

fn check_zero_params(beta: f64, gamma: f64) -> Result<()> {
    if !(0.0 < beta && beta < 1.0) {
        return Err(ZmlError::DomainViolation(format!(
            "zero must satisfy 0 < beta < 1, got {beta}"
        )));
    }
    if !(14.0..=1.0e6).contains(&gamma) {
        return Err(ZmlError::DomainExceeded {
            what: format!("contour zero ordinate {gamma}"),
        });
    }
    Ok(())
}

fn finish_report(
    identity: &str,
    spec: &ContourSpec,
    alpha_or_x: f64,
    lhs: Complex64,
    rhs: Complex64,
    nodes: usize,
    cap: f64,
) -> ContourReport {
    let abs_err = (lhs - rhs).norm();
    ContourReport {
        identity: identity.into(),
        rho: ComplexValue::exact(spec.beta, spec.gamma),
        r: spec.r,
        alpha_or_x,
        lhs: ComplexValue::from_complex(lhs, EVAL_TOL),
        rhs: ComplexValue::from_complex(rhs, EVAL_TOL),
        abs_err,
        rel_err: abs_err / lhs.norm().max(1e-300),
        nodes,
        truncation_cap: cap,
    }
}

/// First residue identity: zeta(rho + i alpha)/(i alpha)^r against the
/// boundary integral of Gamma(s - i alpha) zeta(s + rho) s^{-r} over the
/// rectangle [1/4 - beta, 2] x [-h, h], h = min(log^2 gamma, cap).
///
/// Only the gamma pole at s = i alpha lies inside; the zeta pole at
/// s = 1 - rho sits below the rectangle since log^2 gamma < gamma.
pub fn verify_identity_2_1(spec: &ContourSpec) -> Result<ContourReport> {
    check_zero_params(spec.beta, spec.gamma)?;
    if !(0.0 < spec.alpha && spec.alpha <= 1.0) {
        return Err(ZmlError::DomainViolation(format!(
            "requires 0 < alpha <= 1, got {}",
            spec.alpha
        )));
    }
    if spec.r == 0 {
        return Err(ZmlError::DomainViolation("requires r >= 1".into()));
    }
    let re_lo = 0.25 - spec.beta;
    let re_hi = 2.0;
    let h = spec.gamma.ln().powi(2).min(HEIGHT_CAP);
    // distance from the enclosed pole i alpha to the boundary
    let dist = (-re_lo).min(re_hi).min(h - spec.alpha);
    if dist < 1e-3 {
        return Err(ZmlError::PoleTooClose {
            alpha: spec.alpha,
            dist,
        });
    }
    debug_assert!(h < spec.gamma, "zeta pole must stay below the rectangle");

    let rho = Complex64::new(spec.beta, spec.gamma);
    let ia = Complex64::new(0.0, spec.alpha);
    let lhs = zeta_em(rho + ia, EVAL_TOL).0 / ia.powi(spec.r as i32);

    let integrand = |s: Complex64| -> Result<Complex64> {
        Ok(gamma_c(s - ia)? * zeta_em(s + rho, EVAL_TOL).0 / s.powi(spec.r as i32))
    };
    let (integral, nodes) = rectangle_integral(integrand, re_lo, re_hi, h, spec.nodes_per_side)?;
    let rhs = integral / Complex64::new(0.0, 2.0 * PI);
    Ok(finish_report("2.1", spec, spec.alpha, lhs, rhs, nodes, h))
}

/// Second residue identity: zeta(1 - beta + rho)/(1 - beta)^r against the
/// boundary integral of X^{s-1+beta} Gamma(s-1+beta) zeta(s+rho) s^{-r}.
///
/// The left edge sits at -2(1-beta) when beta > 2/3 (then -beta is outside
/// automatically) and is pulled in to -beta/2 otherwise, so that in both
/// cases the only enclosed gamma pole is s = 1 - beta.
pub fn verify_identity_5_4(spec: &ContourSpec) -> Result<ContourReport> {
    check_zero_params(spec.beta, spec.gamma)?;
    if !(spec.x > 0.0) {
        return Err(ZmlError::DomainViolation(format!(
            "requires X > 0, got {}",
            spec.x
        )));
    }
    if spec.r == 0 {
        return Err(ZmlError::DomainViolation("requires r >= 1".into()));
    }
    let re_lo = if spec.beta > 2.0 / 3.0 {
        -2.0 * (1.0 - spec.beta)
    } else {
        -spec.beta / 2.0
    };
    let re_hi = 1.0;
    let h = (2.0 * spec.gamma.ln().powi(2)).min(HEIGHT_CAP);
    if h >= spec.gamma {
        return Err(ZmlError::DomainViolation(format!(
            "rectangle height {h} would enclose the zeta pole at Im = -{}",
            spec.gamma
        )));
    }
    let pole = 1.0 - spec.beta; // enclosed gamma pole, on the real axis
    let dist = (pole - re_lo).min(re_hi - pole).min(h);
    if dist < 1e-3 {
        return Err(ZmlError::PoleTooClose {
            alpha: pole,
            dist,
        });
    }

    let rho = Complex64::new(spec.beta, spec.gamma);
    let lhs_point = Complex64::new(1.0 - spec.beta, 0.0) + rho; // = 1 + i gamma at beta = 1/2
    let lhs = zeta_em(lhs_point, EVAL_TOL).0 / (1.0 - spec.beta).powi(spec.r as i32);

    let ln_x = spec.x.ln();
    let integrand = |s: Complex64| -> Result<Complex64> {
        let w = s - 1.0 + spec.beta;
        Ok((w * ln_x).exp() * gamma_c(w)? * zeta_em(s + rho, EVAL_TOL).0 / s.powi(spec.r as i32))
    };
    let (integral, nodes) = rectangle_integral(integrand, re_lo, re_hi, h, spec.nodes_per_side)?;
    let rhs = integral / Complex64::new(0.0, 2.0 * PI);
    Ok(finish_report("5.4", spec, spec.x, lhs, rhs, nodes, h))
}

/// The X equalizing the two terms in the multiplicity optimization:
/// X = 3^{r/(3-2 beta)} gamma^{3 B (1-beta)^{3/2}/(3-2 beta)}, i.e.
/// 3^{-r} X^beta = X^{-3(1-beta)} gamma^{3 B (1-beta)^{3/2}}.
pub fn x_choice(r: u32, beta: f64, gamma: f64, b: f64) -> Result<f64> {
    if !(5.0 / 6.0..1.0).contains(&beta) {
        return Err(ZmlError::DomainViolation(format!(
            "requires 5/6 <= beta < 1, got {beta}"
        )));
    }
    if b <= 0.0 || gamma <= 1.0 {
        return Err(ZmlError::DomainViolation(
            "requires B > 0 and gamma > 1".into(),
        ));
    }
    let ln_x =
        (r as f64 * 3.0f64.ln() + 3.0 * b * (1.0 - beta).powf(1.5) * gamma.ln()) / (3.0 - 2.0 * beta);
    Ok(ln_x.exp())
}

/// Empirical check of the decay envelope |zeta(rho + i alpha)| against
/// alpha^r gamma (beta - 1/4)^{-r}.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DecayReport {
    pub alpha: f64,
    pub zeta_modulus: f64,
    pub envelope: f64,
    pub ratio: f64,
}

pub fn gamma_decay_check(alpha: f64, gamma: f64, r: u32, beta: f64) -> Result<DecayReport> {
    check_zero_params(beta, gamma)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(ZmlError::DomainViolation(format!(
            "requires 0 < alpha <= 1, got {alpha}"
        )));
    }
    if beta <= 0.25 {
        return Err(ZmlError::DomainViolation(
            "envelope needs beta > 1/4".into(),
        ));
    }
    let z = zeta_em(Complex64::new(beta, gamma + alpha), EVAL_TOL).0.norm();
    let envelope = alpha.powi(r as i32) * gamma * (beta - 0.25).powi(-(r as i32));
    Ok(DecayReport {
        alpha,
        zeta_modulus: z,
        envelope,
        ratio: z / envelope,
    })
}

//! Very-short-interval moment integrals, the window maximum F(T, Delta),
//! and the empirical harnesses for the Karatsuba conjectures and the
//! Jensen / Hoelder inequality chain.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, ZmlError};
use crate::quad::{self, DEFAULT_NODE_CAP};
use crate::zeros;
use crate::zeta::zeta_modulus;

/// Parameters of one short-interval moment integral
/// int_delta^{2 delta} |zeta(sigma + i(center + a))|^k da.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentSpec {
    pub sigma: f64,
    pub center: f64,
    pub delta: f64,
    pub k: f64,
    pub tol: f64,
}

impl MomentSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.5..=1.0).contains(&self.sigma) {
            return Err(ZmlError::DomainViolation(format!(
                "sigma must lie in [1/2, 1], got {}",
                self.sigma
            )));
        }
        if !(self.delta > 0.0 && self.delta <= 0.5) {
            return Err(ZmlError::DomainViolation(format!(
                "delta must lie in (0, 1/2], got {}",
                self.delta
            )));
        }
        if self.k < 0.0 {
            return Err(ZmlError::DomainViolation(format!(
                "moment exponent k must be >= 0, got {}",
                self.k
            )));
        }
        if !(self.tol > 0.0) {
            return Err(ZmlError::DomainViolation("tol must be positive".into()));
        }
        if self.center + 2.0 * self.delta > 1.0e6 {
            return Err(ZmlError::DomainExceeded {
                what: format!("moment window top {} beyond guaranteed height", self.center),
            });
        }
        Ok(())
    }
}

/// Value and error of a moment integral.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentResult {
    pub value: f64,
    pub err: f64,
    pub nodes: usize,
}

/// One row of a Karatsuba conjecture scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub t: f64,
    pub delta_used: f64,
    pub f_value: f64,
    pub threshold: f64,
    pub satisfied: bool,
    /// Karatsuba's unconditional floor e^{A' log Delta log T}.
    pub unconditional_floor: f64,
}

/// Shared report shape for the inequality checks; serialized with the
/// stable field names lhs, rhs, satisfied, empirical_C.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    #[serde(rename = "empirical_C")]
    pub empirical_c: Option<f64>,
}

/// Adaptive quadrature of |zeta(sigma + i(center + a))|^k over [delta, 2 delta].
pub fn moment_integral(spec: &MomentSpec) -> Result<MomentResult> {
    spec.validate()?;
    if spec.k == 0.0 {
        // integrand is identically 1
        return Ok(MomentResult {
            value: spec.delta,
            err: 0.0,
            nodes: 0,
        });
    }
    let eval_tol = (spec.tol / 10.0).clamp(1e-12, 1e-6);
    let r = quad::integrate(
        |a| Ok(zeta_modulus(spec.sigma, spec.center + a, eval_tol)?.value.powf(spec.k)),
        spec.delta,
        2.0 * spec.delta,
        spec.tol,
        DEFAULT_NODE_CAP,
    )?;
    Ok(MomentResult {
        value: r.value,
        err: r.err,
        nodes: r.nodes,
    })
}

/// F(T, Delta) = max over [T, T + Delta] of |zeta(1/2 + it)|: dense grid
/// (>= 64 nodes) plus three rounds of golden-section refinement around the
/// best node. The result is a certified lower bound for the true maximum.
pub fn f_max(t: f64, delta: f64, tol: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(ZmlError::DomainViolation(format!(
            "F(T, Delta) requires 0 < Delta <= 1, got {delta}"
        )));
    }
    if t < 2.0 || t + delta > 1.0e6 + 1.0 {
        return Err(ZmlError::DomainExceeded {
            what: format!("F window [{t}, {}]", t + delta),
        });
    }
    let eval_tol = tol.clamp(1e-12, 1e-6);
    let modulus = |x: f64| -> Result<f64> { Ok(zeta_modulus(0.5, x, eval_tol)?.value) };

    let n = 64usize;
    let h = delta / n as f64;
    let mut best_x = t;
    let mut best = modulus(t)?;
    for i in 1..=n {
        let x = t + i as f64 * h;
        let v = modulus(x)?;
        if v > best {
            best = v;
            best_x = x;
        }
    }

    // golden-section refinement inside [best_x - h, best_x + h]
    let inv_phi = 0.618_033_988_749_894_9;
    let mut a = (best_x - h).max(t);
    let mut b = (best_x + h).min(t + delta);
    for _ in 0..3 {
        let x1 = b - inv_phi * (b - a);
        let x2 = a + inv_phi * (b - a);
        let f1 = modulus(x1)?;
        let f2 = modulus(x2)?;
        best = best.max(f1).max(f2);
        if f1 < f2 {
            a = x1;
        } else {
            b = x2;
        }
    }
    Ok(best)
}

/// How Delta depends on T in a Karatsuba scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaRule {
    /// Fixed Delta.
    Const(f64),
    /// Delta = 1 / log log T (Conjecture 2 shape).
    InvLogLog,
    /// Delta = 1 / log T (Conjecture 3 shape).
    InvLog,
}

impl DeltaRule {
    pub fn delta(&self, t: f64) -> f64 {
        match self {
            DeltaRule::Const(d) => *d,
            DeltaRule::InvLogLog => 1.0 / t.ln().ln(),
            DeltaRule::InvLog => 1.0 / t.ln(),
        }
        .clamp(1e-6, 1.0)
    }
}

/// Scans F(T, Delta(T)) against the conjectured threshold T^{-A}; also
/// reports Karatsuba's unconditional floor e^{A' log Delta log T} for the
/// supplied A'.
pub fn karatsuba_scan(
    t_grid: &[f64],
    rule: DeltaRule,
    a: f64,
    a_prime: f64,
    tol: f64,
) -> Result<Vec<ScanRow>> {
    let rows: Vec<Result<ScanRow>> = t_grid
        .par_iter()
        .map(|&t| {
            let delta = rule.delta(t);
            let f_value = f_max(t, delta, tol)?;
            let threshold = t.powf(-a);
            Ok(ScanRow {
                t,
                delta_used: delta,
                f_value,
                threshold,
                satisfied: f_value >= threshold,
                unconditional_floor: (a_prime * delta.ln() * t.ln()).exp(),
            })
        })
        .collect();
    rows.into_iter().collect()
}

/// CSV serialization of a scan: "T,delta,F,threshold,satisfied".
pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("T,delta,F,threshold,satisfied\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.t, r.delta_used, r.f_value, r.threshold, r.satisfied
        ));
    }
    out
}

fn window_check_domain(t: f64, delta: f64, sigma: f64) -> Result<()> {
    if !(0.5..=1.0).contains(&sigma) {
        return Err(ZmlError::DomainViolation(format!(
            "sigma must lie in [1/2, 1], got {sigma}"
        )));
    }
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(ZmlError::DomainViolation(format!(
            "delta must lie in (0, 1/2], got {delta}"
        )));
    }
    if t < 14.0 || t + delta > 1.0e6 {
        return Err(ZmlError::DomainExceeded {
            what: format!("window center T = {t}"),
        });
    }
    Ok(())
}

fn integral_of_modulus_power(
    t_lo: f64,
    t_hi: f64,
    sigma: f64,
    k: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let eval_tol = (tol / 10.0).clamp(1e-12, 1e-6);
    let r = quad::integrate(
        |x| Ok(zeta_modulus(sigma, x, eval_tol)?.value.powf(k)),
        t_lo,
        t_hi,
        tol,
        DEFAULT_NODE_CAP,
    )?;
    Ok((r.value, r.err))
}

/// Half-width of the neighborhood excised around each critical-line zero
/// when integrating log |zeta|.
const LOG_EXCISION_H: f64 = 1e-5;

/// Integral of log |zeta(sigma + it)| over [t_lo, t_hi].
///
/// On the critical line the integrand has integrable logarithmic
/// singularities at the zero ordinates; each is excised on
/// (gamma - h, gamma + h) and replaced by the local analytic contribution
/// 2(h log h - h) of int log|t - gamma|, mirroring the closed-form
/// evaluation int_{-d}^{d} log|u| du = 2(d log d - d).
pub fn log_modulus_integral(t_lo: f64, t_hi: f64, sigma: f64, tol: f64) -> Result<(f64, f64)> {
    let eval_tol = (tol / 10.0).clamp(1e-12, 1e-7);
    let mut cut_points: Vec<f64> = vec![t_lo];
    let mut analytic = 0.0;
    if sigma == 0.5 {
        let table = zeros::find_zeros((t_lo - 0.5).max(2.0), t_hi + 0.5, 1e-9)?;
        for rec in &table.records {
            let g = rec.ordinate;
            if g - LOG_EXCISION_H > t_lo && g + LOG_EXCISION_H < t_hi {
                cut_points.push(g - LOG_EXCISION_H);
                cut_points.push(g + LOG_EXCISION_H);
                analytic += 2.0 * (LOG_EXCISION_H * LOG_EXCISION_H.ln() - LOG_EXCISION_H);
            }
        }
    }
    cut_points.push(t_hi);

    let mut total = analytic;
    let mut err = 0.0;
    for pair in cut_points.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if b <= a {
            continue;
        }
        let r = quad::integrate(
            |x| {
                let m = zeta_modulus(sigma, x, eval_tol)?.value;
                Ok(m.max(1e-300).ln())
            },
            a,
            b,
            tol,
            DEFAULT_NODE_CAP,
        )?;
        total += r.value;
        err += r.err;
    }
    Ok((total, err))
}

/// Theorem-style lower bound check:
/// int_{T-delta}^{T+delta} |zeta(sigma+it)|^k dt >= 2 delta T^{-C k log(e/delta)}.
///
/// Also reports the minimal empirical C that would make the two sides
/// equal at this (T, delta, k, sigma).
pub fn theorem3_check(t: f64, delta: f64, k: f64, sigma: f64, c: f64) -> Result<CheckReport> {
    window_check_domain(t, delta, sigma)?;
    if k <= 0.0 {
        return Err(ZmlError::DomainViolation("k must be positive".into()));
    }
    let (lhs, _) = integral_of_modulus_power(t - delta, t + delta, sigma, k, 1e-8)?;
    let exponent = c * k * (std::f64::consts::E / delta).ln();
    let rhs = 2.0 * delta * t.powf(-exponent);
    // lhs = 2 delta T^{-C* k log(e/delta)}  =>  C* from the log ratio
    let empirical_c = (2.0 * delta / lhs).ln() / (k * (std::f64::consts::E / delta).ln() * t.ln());
    Ok(CheckReport {
        name: "theorem3".into(),
        lhs,
        rhs,
        satisfied: lhs >= rhs,
        empirical_c: Some(empirical_c),
    })
}

/// Jensen / arithmetic-geometric checks:
/// log of the mean of f dominates the mean of log f for f = |zeta|^k, and
/// the window maximum dominates exp of the mean of log |zeta| on the
/// critical line (the F lower bound with T0 = T + Delta/2, delta = Delta/2).
pub fn jensen_checks(t: f64, delta: f64, k: f64, sigma: f64) -> Result<Vec<CheckReport>> {
    window_check_domain(t, delta, sigma)?;
    let mut reports = Vec::new();

    if k == 0.0 {
        // equality for constants
        reports.push(CheckReport {
            name: "jensen".into(),
            lhs: 0.0,
            rhs: 0.0,
            satisfied: true,
            empirical_c: None,
        });
    } else {
        let (mean_f, qerr) = integral_of_modulus_power(t - delta, t + delta, sigma, k, 1e-9)?;
        let lhs = (mean_f / (2.0 * delta)).ln();
        let (log_int, lerr) = log_modulus_integral(t - delta, t + delta, sigma, 1e-8)?;
        let rhs = k * log_int / (2.0 * delta);
        let budget = qerr / mean_f.max(1e-300) + k * lerr / (2.0 * delta) + 1e-6;
        reports.push(CheckReport {
            name: "jensen".into(),
            lhs,
            rhs,
            satisfied: lhs >= rhs - budget,
            empirical_c: None,
        });
    }

    // F(T0 - delta, 2 delta) >= exp of the mean of log |zeta(1/2 + it)|
    let (log_int, lerr) = log_modulus_integral(t - delta, t + delta, 0.5, 1e-8)?;
    let f = f_max(t - delta, 2.0 * delta, 1e-9)?;
    let rhs = (log_int / (2.0 * delta)).exp();
    let budget = rhs * lerr / (2.0 * delta) + 1e-8;
    reports.push(CheckReport {
        name: "window_max_lower_bound".into(),
        lhs: f,
        rhs,
        satisfied: f >= rhs - budget,
        empirical_c: None,
    });

    Ok(reports)
}

/// Hoelder's inequality on the window:
/// int |zeta| <= (int |zeta|^k)^{1/k} (2 delta)^{1 - 1/k}, k >= 1.
pub fn holder_check(t: f64, delta: f64, k: f64, sigma: f64) -> Result<CheckReport> {
    window_check_domain(t, delta, sigma)?;
    if k < 1.0 {
        return Err(ZmlError::DomainViolation(format!(
            "Hoelder check requires k >= 1, got {k}"
        )));
    }
    let (int_1, e1) = integral_of_modulus_power(t - delta, t + delta, sigma, 1.0, 1e-9)?;
    let (int_k, ek) = integral_of_modulus_power(t - delta, t + delta, sigma, k, 1e-9)?;
    let rhs = int_k.powf(1.0 / k) * (2.0 * delta).powf(1.0 - 1.0 / k);
    let budget = e1 + rhs * ek / int_k.max(1e-300) + 1e-9;
    Ok(CheckReport {
        name: "holder".into(),
        lhs: int_1,
        rhs,
        satisfied: int_1 <= rhs + budget,
        empirical_c: None,
    })
}

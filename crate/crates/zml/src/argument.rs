//! S(T) by continuous argument variation along the path 2 -> 2 + iT ->
//! 1/2 + iT, and N(T) through the Riemann-von Mangoldt formula, reconciled
//! against the direct sign-change census.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, ZmlError};
use crate::value::ComplexValue;
use crate::zeta::{hardy_z, zeta_em, PI};
use crate::zeros;

const TWO_PI: f64 = 2.0 * PI;

/// One node of an argument trace: the point s and the argument of zeta
/// accumulated from the start of the path.
#[derive(Debug, Clone, Serialize)]
pub struct TraceNode {
    pub s: ComplexValue,
    pub accumulated_arg: f64,
}

/// The continuous-variation record behind one S(T) value.
#[derive(Debug, Clone, Serialize)]
pub struct ArgTrace {
    pub nodes: Vec<TraceNode>,
    pub s_value: f64,
    pub step_count: usize,
}

/// N(T) from the smooth term plus S(T), against the direct census.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub t: f64,
    pub n_formula: f64,
    pub n_count: usize,
    pub s_value: f64,
    pub smooth_term: f64,
}

/// The smooth part of the Riemann-von Mangoldt formula:
/// (T/2pi) log(T/2pi) - T/2pi + 7/8.
pub fn smooth_term(t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(ZmlError::DomainViolation(format!(
            "smooth_term requires T > 0, got {t}"
        )));
    }
    let x = t / TWO_PI;
    Ok(x * x.ln() - x + 7.0 / 8.0)
}

/// Detects whether T sits (numerically) on a zero ordinate via the sign
/// pattern of Z around it.
fn on_zero_ordinate(t: f64) -> Result<bool> {
    let z = hardy_z(t, 1e-6)?;
    if z.value.abs() > z.abs_err.max(1e-7) * 10.0 {
        return Ok(false);
    }
    let lo = hardy_z(t - 1e-6, 1e-7)?;
    let hi = hardy_z(t + 1e-6, 1e-7)?;
    Ok(lo.value.signum() != hi.value.signum())
}

/// S(T) = (1/pi) arg zeta(1/2 + iT) by continuous variation along the
/// segments joining 2, 2 + iT, 1/2 + iT, starting from 0 at s = 2.
///
/// On the vertical segment Re zeta(2 + it) >= 2 - (zeta(2) - 1) > 0, so
/// the argument never leaves (-pi/2, pi/2) and the accumulated value at
/// 2 + iT is the principal argument; the segment needs no stepping. The
/// horizontal segment is stepped adaptively, halving the step until each
/// phase increment is below pi/4.
pub fn s_of_t(t: f64, step_tol: f64) -> Result<ArgTrace> {
    s_of_t_impl(t, step_tol, true)
}

fn s_of_t_impl(t: f64, step_tol: f64, detect_collision: bool) -> Result<ArgTrace> {
    if t < 2.0 {
        return Err(ZmlError::DomainExceeded {
            what: format!("s_of_t requires T >= 2, got {t}"),
        });
    }
    if detect_collision && on_zero_ordinate(t)? {
        return Err(ZmlError::OnZeroOrdinate { t, dist: 0.0 });
    }
    let eval_tol = step_tol.clamp(1e-12, 1e-4);

    let mut nodes = vec![TraceNode {
        s: ComplexValue::exact(2.0, 0.0),
        accumulated_arg: 0.0,
    }];

    let (top_right, _) = zeta_em(Complex64::new(2.0, t), eval_tol);
    let mut acc = top_right.arg(); // principal; |.| < pi/2 since Re > 0
    nodes.push(TraceNode {
        s: ComplexValue::exact(2.0, t),
        accumulated_arg: acc,
    });

    let mut sigma = 2.0;
    let mut prev = top_right;
    let mut step = 0.05f64;
    let mut step_count = 0usize;
    while sigma > 0.5 {
        let mut h = step.min(sigma - 0.5);
        loop {
            let (next, _) = zeta_em(Complex64::new(sigma - h, t), eval_tol);
            let dphi = (next / prev).arg();
            if dphi.abs() < PI / 4.0 || h <= 1e-6 {
                sigma -= h;
                acc += dphi;
                prev = next;
                step_count += 1;
                nodes.push(TraceNode {
                    s: ComplexValue::exact(sigma, t),
                    accumulated_arg: acc,
                });
                // relax the step again after a forced refinement
                step = (h * 2.0).min(0.05);
                break;
            }
            h /= 2.0;
        }
    }

    Ok(ArgTrace {
        nodes,
        s_value: acc / PI,
        step_count,
    })
}

/// S(T) honoring the S(T) = S(T+0) convention: if T collides with a zero
/// ordinate the trace is taken at T + 1e-9 (with collision detection off,
/// since the perturbation stays inside the detector's window).
pub fn s_of_t_perturbed(t: f64, step_tol: f64) -> Result<ArgTrace> {
    match s_of_t(t, step_tol) {
        Err(ZmlError::OnZeroOrdinate { .. }) => s_of_t_impl(t + 1e-9, step_tol, false),
        other => other,
    }
}

/// N(T): formula count smooth_term(T) + S(T) next to the sign-change
/// census of Z on (0, T].
pub fn n_of_t(t: f64) -> Result<CountReport> {
    if t < 2.0 {
        return Err(ZmlError::DomainExceeded {
            what: format!("n_of_t requires T >= 2, got {t}"),
        });
    }
    let smooth = smooth_term(t)?;
    let trace = s_of_t_perturbed(t, 1e-8)?;
    let n_count = zeros::census_sign_changes(2.0, t, 1e-6)?;
    Ok(CountReport {
        t,
        n_formula: smooth + trace.s_value,
        n_count,
        s_value: trace.s_value,
        smooth_term: smooth,
    })
}

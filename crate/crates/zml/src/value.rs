use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number with an attached absolute-error estimate.
///
/// This is the currency of every evaluation in the lab. The error is a
/// first-order estimate propagated from component errors, not a certified
/// interval bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
    /// Estimated absolute error of the (re, im) pair. Finite, >= 0.
    pub abs_err: f64,
}

impl ComplexValue {
    pub fn new(re: f64, im: f64, abs_err: f64) -> Self {
        debug_assert!(abs_err.is_finite() && abs_err >= 0.0);
        ComplexValue { re, im, abs_err }
    }

    /// An exact input value (zero attached error).
    pub fn exact(re: f64, im: f64) -> Self {
        ComplexValue {
            re,
            im,
            abs_err: 0.0,
        }
    }

    pub fn from_complex(z: Complex64, abs_err: f64) -> Self {
        ComplexValue {
            re: z.re,
            im: z.im,
            abs_err,
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm(&self) -> f64 {
        self.as_complex().norm()
    }

    pub fn conj(&self) -> Self {
        ComplexValue {
            re: self.re,
            im: -self.im,
            abs_err: self.abs_err,
        }
    }
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue::exact(z.re, z.im)
    }
}

/// A real value with an attached absolute-error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealValue {
    pub value: f64,
    pub abs_err: f64,
}

impl RealValue {
    pub fn new(value: f64, abs_err: f64) -> Self {
        RealValue { value, abs_err }
    }
}

/// The published domain on which evaluations carry a guaranteed tolerance.
///
/// Outside this box operations return `DomainExceeded` rather than a value
/// with an unreliable error estimate.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EvalDomain {
    pub t_min: f64,
    pub t_max: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub guaranteed_tol: f64,
}

impl EvalDomain {
    /// The published guaranteed domain: 2 <= |t| <= 10^6, 0 < sigma <= 2,
    /// tolerance down to 1e-9 in hardware floats.
    pub const PUBLISHED: EvalDomain = EvalDomain {
        t_min: 2.0,
        t_max: 1.0e6,
        sigma_min: 0.0,
        sigma_max: 2.0,
        guaranteed_tol: 1e-9,
    };

    /// Widest box any operation accepts; sigma up to 3 so that the
    /// Dirichlet-series cross-checks have room.
    pub const ACCEPTED: EvalDomain = EvalDomain {
        t_min: 0.0,
        t_max: 1.0e6 + 100.0,
        sigma_min: 0.0,
        sigma_max: 3.0,
        guaranteed_tol: 1e-9,
    };

    pub fn contains(&self, sigma: f64, t: f64) -> bool {
        let at = t.abs();
        sigma > self.sigma_min && sigma <= self.sigma_max && at >= self.t_min && at <= self.t_max
    }
}

/// Default tolerance used when the caller does not pass one.
pub const DEFAULT_TOL: f64 = 1e-8;

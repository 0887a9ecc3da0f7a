use thiserror::Error;

/// Errors shared across all modules of the lab.
#[derive(Debug, Error)]
pub enum ZmlError {
    #[error("zeta has a pole at s = 1 (|s - 1| = {distance:e} < 10*tol)")]
    PoleAt1 { distance: f64 },

    #[error("point outside the guaranteed evaluation domain: {what}")]
    DomainExceeded { what: String },

    #[error("gamma function pole at or near w = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("T = {t} is within {dist:e} of a zero ordinate; evaluate at T + 1e-9 instead")]
    OnZeroOrdinate { t: f64, dist: f64 },

    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },

    #[error("ordinates not strictly increasing at line {line}")]
    NonMonotonic { line: usize },

    #[error("T = {t} exceeds table height_covered = {height}")]
    HeightExceeded { t: f64, height: f64 },

    #[error("zero count {census} disagrees with formula count {formula:.3} on [{lo}, {hi}] even after grid refinement")]
    MissedZeroSuspected {
        lo: f64,
        hi: f64,
        census: usize,
        formula: f64,
    },

    #[error("adaptive quadrature did not reach tolerance {tol:e} within {nodes} nodes")]
    QuadratureNoConvergence { tol: f64, nodes: usize },

    #[error("pole at i*alpha = {alpha}i lies within {dist:e} of the contour boundary")]
    PoleTooClose { alpha: f64, dist: f64 },

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("a zero ordinate lies within 1e-9 of a quadrature node at t = {t}")]
    ZeroOnPath { t: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl ZmlError {
    /// Process exit code per the CLI contract: 1 for domain errors,
    /// 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ZmlError::QuadratureNoConvergence { .. } | ZmlError::MissedZeroSuspected { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, ZmlError>;

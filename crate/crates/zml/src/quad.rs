//! Adaptive Gauss-Legendre quadrature over real intervals, for real- and
//! complex-valued integrands.
//!
//! Panels use a 15-node rule; a panel is accepted when bisecting it moves
//! the result by less than its share of the tolerance budget. Nodes and
//! weights are generated by Newton iteration on the Legendre recurrence,
//! and summation order is fixed (depth-first, left panel first) so results
//! are deterministic.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::error::{Result, ZmlError};

pub const PANEL_NODES: usize = 15;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = -x; // ascending order
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_NODES))
}

/// Value types the adaptive driver can integrate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, f: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<V> {
    pub value: V,
    pub err: f64,
    pub nodes: usize,
}

fn panel<V: QuadValue, F: FnMut(f64) -> Result<V>>(f: &mut F, a: f64, b: f64) -> Result<V> {
    let (xs, ws) = panel_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = V::zero();
    for (&x, &w) in xs.iter().zip(ws) {
        acc = acc.add(f(mid + half * x)?.scale(w));
    }
    Ok(acc.scale(half))
}

struct Driver<'f, V, F: FnMut(f64) -> Result<V>> {
    f: &'f mut F,
    tol_per_unit: f64,
    node_cap: usize,
    nodes: usize,
    err: f64,
}

impl<V: QuadValue, F: FnMut(f64) -> Result<V>> Driver<'_, V, F> {
    fn recurse(&mut self, a: f64, b: f64, whole: V, depth: usize) -> Result<V> {
        if self.nodes >= self.node_cap {
            return Err(ZmlError::QuadratureNoConvergence {
                tol: self.tol_per_unit,
                nodes: self.nodes,
            });
        }
        let mid = 0.5 * (a + b);
        let left = panel(self.f, a, mid)?;
        let right = panel(self.f, mid, b)?;
        self.nodes += 2 * PANEL_NODES;
        let split = left.add(right);
        let disc = split.sub(whole).magnitude();
        if disc <= self.tol_per_unit * (b - a) || depth >= 48 {
            self.err += disc;
            return Ok(split);
        }
        let lv = self.recurse(a, mid, left, depth + 1)?;
        let rv = self.recurse(mid, b, right, depth + 1)?;
        Ok(lv.add(rv))
    }
}

/// Integrate `f` over [a, b] to absolute tolerance `tol`, giving up past
/// `node_cap` integrand evaluations.
pub fn integrate<V: QuadValue, F: FnMut(f64) -> Result<V>>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    node_cap: usize,
) -> Result<QuadResult<V>> {
    if !(b > a) {
        return Err(ZmlError::DomainViolation(format!(
            "empty integration interval [{a}, {b}]"
        )));
    }
    let whole = panel(&mut f, a, b)?;
    let mut driver = Driver {
        f: &mut f,
        tol_per_unit: tol / (b - a),
        node_cap,
        nodes: PANEL_NODES,
        err: 0.0,
    };
    let value = driver.recurse(a, b, whole, 0)?;
    Ok(QuadResult {
        value,
        err: driver.err,
        nodes: driver.nodes,
    })
}

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

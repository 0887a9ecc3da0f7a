//! zml — a numerical laboratory for the Riemann zeta function around the
//! critical strip: evaluation of zeta, Hardy Z and the theta phase;
//! argument and zero-counting machinery; critical-line zero tables and
//! multiplicity statistics; short-interval moment integrals and window
//! maxima; explicit bound evaluators; and rectangle-contour verification
//! of the residue identities that tie zero multiplicities to moments.
//!
//! Everything works in f64 with tracked absolute-error estimates; the
//! guaranteed evaluation domain is 2 <= |t| <= 1e6, 0 < sigma <= 2 at
//! tolerances down to 1e-9.

pub mod argument;
pub mod bounds;
pub mod cli;
pub mod contour;
pub mod error;
pub mod gamma;
pub mod quad;
pub mod report;
pub mod short_intervals;
pub mod value;
pub mod zeros;
pub mod zeta;

pub use error::{Result, ZmlError};
pub use value::{ComplexValue, EvalDomain, RealValue};

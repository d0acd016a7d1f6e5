//! Exact arithmetic for degree bounds on ampleness of cotangent bundles of
//! general complete intersections in projective space.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`] — truncated power series in the hyperplane class `H` with
//!   big-integer coefficients.
//! * [`symfunc`] — elementary symmetric polynomials of the shifted degrees
//!   and the ratio inequality they satisfy, with exhaustive checkers.
//! * [`segre`] — Segre and Chern series of `Ω_X(2)`, the `b` coefficients
//!   and the exact bigness margin.
//! * [`bounds`] — the closed-form degree bounds, the dimension-shift
//!   substitution, a sharpest-uniform-degree search and prior bounds for
//!   comparison.
//!
//! Nothing here uses floating point.

pub mod bounds;
pub mod error;
pub mod segre;
pub mod series;
pub mod symfunc;

pub use error::{Error, Result};
pub use segre::{BValues, BignessReport, CiSpec};
pub use series::TruncatedSeries;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

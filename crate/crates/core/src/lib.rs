//! Evaluation and verification of the Clausen sum ₃F₂(1,1,c; d,n+2; 1).
//!
//! The crate provides:
//!
//! * [`special_fns`]: complex gamma, reciprocal gamma, digamma, Pochhammer,
//!   generalized binomial, Riemann zeta and Bessel J kernels.
//! * [`hypergeom`]: direct ₂F₁ / ₃F₂ series engines with an algebraic tail
//!   model at unit argument. These are the brute-force oracles.
//! * [`closed_form`]: the closed form for ₃F₂(1,1,c; d,n+2; 1), the
//!   Miller–Paris two-sum formula and the auxiliary finite-sum identities.
//! * [`bessel_sums`]: the Schlömilch-type sum S(a,b) and its two
//!   convergent expansions, with every coefficient family they need.
//! * [`verify`]: seeded grid sweeps, verification records and report I/O
//!   backing the `hypsum` command-line tool.

pub mod bessel_sums;
pub mod closed_form;
mod dd;
mod error;
pub mod hypergeom;
pub mod special_fns;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;

pub use bessel_sums::{BesselSumParams, ExpansionResult};
pub use closed_form::{LimitMode, LimitPolicy, Theorem1Params};
pub use hypergeom::{EvalResult, SeriesConfig, TailMode};

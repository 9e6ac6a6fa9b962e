//! Scalar special-function kernels.
//!
//! All functions are pure; constant tables are `const`.

mod bessel;
mod combinatorics;
mod digamma;
mod gamma;
mod zeta;

pub use bessel::bessel_j;
pub use combinatorics::{gen_binomial, pochhammer, pochhammer_real};
pub use digamma::{digamma, digamma_real};
pub use gamma::{cgamma, gamma_ratio, is_nonpositive_integer, ln_gamma, ln_gamma_real, ln_gamma_shift, rgamma, POLE_TOL};
pub use zeta::{zeta, zeta_neg_odd_log, BERNOULLI_EVEN};

/// Mathematical constants at full double precision.
#[derive(Debug, Clone, Copy)]
pub struct MathConstants;

impl MathConstants {
    /// Euler–Mascheroni constant, equal to −ψ(1).
    pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    pub const LOG2: f64 = std::f64::consts::LN_2;
    pub const PI: f64 = std::f64::consts::PI;
}

/// sin(πx) with exact argument reduction for real x.
pub(crate) fn sinpi(x: f64) -> f64 {
    let n = x.round();
    let s = (std::f64::consts::PI * (x - n)).sin();
    if n.rem_euclid(2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// cos(πx) with exact argument reduction for real x.
pub(crate) fn cospi(x: f64) -> f64 {
    let n = x.round();
    let c = (std::f64::consts::PI * (x - n)).cos();
    if n.rem_euclid(2.0) == 0.0 {
        c
    } else {
        -c
    }
}

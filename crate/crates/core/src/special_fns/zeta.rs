use std::f64::consts::PI;

use super::gamma::ln_gamma_real;
use crate::{Error, Result};

/// Even Bernoulli numbers B₂, B₄, …, B₃₂.
pub const BERNOULLI_EVEN: [f64; 16] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43_867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
    8_553_103.0 / 6.0,
    -23_749_461_029.0 / 870.0,
    8_615_841_276_005.0 / 14_322.0,
    -7_709_321_041_217.0 / 510.0,
];

const BORWEIN_N: usize = 30;

/// Riemann zeta for real s.
///
/// s > 0: Borwein-accelerated alternating eta series. Negative odd integers
/// down to −31 come from the Bernoulli table, negative even integers are
/// trivial zeros, other negative arguments use the functional equation.
pub fn zeta(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    if !s.is_finite() {
        return Err(Error::Range(format!("zeta argument {s}")));
    }
    if s > 0.0 {
        return Ok(eta(s) / (1.0 - (1.0 - s).exp2()));
    }
    if s == 0.0 {
        return Ok(-0.5);
    }
    if s < -31.0 {
        return Err(Error::Range(format!("zeta({s}) is below the Bernoulli table")));
    }
    if s == s.round() {
        let k = (-s) as usize;
        if k % 2 == 0 {
            return Ok(0.0);
        }
        // ζ(1−2j) = −B_{2j}/(2j)
        let j = (k + 1) / 2;
        return Ok(-BERNOULLI_EVEN[j - 1] / (2 * j) as f64);
    }
    // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
    let t = 1.0 - s;
    let lg = ln_gamma_real(t)?;
    let mag = (s * 2f64.ln() + (s - 1.0) * PI.ln() + lg).exp();
    Ok(mag * (0.5 * PI * s).sin() * zeta(t)?)
}

/// Sign and natural log of |ζ(1−2k)| for any k ≥ 1, through the functional
/// equation ζ(1−2k) = (−1)^k 2 (2k−1)! ζ(2k) / (2π)^{2k}. Valid far below the
/// range where ζ itself overflows.
pub fn zeta_neg_odd_log(k: u32) -> Result<(f64, f64)> {
    if k == 0 {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    let two_k = 2.0 * k as f64;
    let ln_abs = 2f64.ln() + ln_gamma_real(two_k)? + zeta(two_k)?.ln() - two_k * (2.0 * PI).ln();
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok((sign, ln_abs))
}

// η(s) = Σ (−1)^{k} /(k+1)^s via Borwein's algorithm 2.
fn eta(s: f64) -> f64 {
    let n = BORWEIN_N;
    // d_k = n Σ_{i=0}^{k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut d = [0.0_f64; BORWEIN_N + 1];
    let mut term = 1.0 / n as f64; // i = 0: (n−1)!/n! = 1/n
    let mut acc = term;
    d[0] = n as f64 * acc;
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        term *= (fnn + fi - 1.0) * 4.0 * (fnn - fi + 1.0) / ((2.0 * fi - 1.0) * (2.0 * fi));
        acc += term;
        d[i] = fnn * acc;
    }
    let dn = d[n];
    let mut sum = 0.0;
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - dn) / ((k + 1) as f64).powf(s);
    }
    -sum / dn
}

use super::gamma::is_nonpositive_integer;
use crate::{Complex, Error, Result};

// B_{2k}/(2k) for k = 1..7
const ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// Digamma ψ(z) = Γ′(z)/Γ(z).
///
/// Upward recurrence to Re(z) > 8, then the Bernoulli asymptotic series
/// through B₁₄.
pub fn digamma(z: Complex) -> Result<Complex> {
    if let Some(m) = is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at -{m}")));
    }
    let mut z = z;
    let mut shift = Complex::new(0.0, 0.0);
    while z.re <= 8.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut pow = inv2;
    let mut series = Complex::new(0.0, 0.0);
    for c in ASYMPTOTIC {
        series += c * pow;
        pow *= inv2;
    }
    Ok(shift + z.ln() - 0.5 / z - series)
}

/// Real digamma.
pub fn digamma_real(x: f64) -> Result<f64> {
    digamma(Complex::new(x, 0.0)).map(|v| v.re)
}

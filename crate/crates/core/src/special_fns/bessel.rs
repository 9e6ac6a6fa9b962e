use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::gamma::ln_gamma_real;

const SERIES_LIMIT: f64 = 12.0;
const HANKEL_TERMS: usize = 8;
// Largest admissible magnitude of the last retained Hankel term.
const HANKEL_LAST_TERM: f64 = 2e-10;

/// Bessel function of the first kind J_ν(x) for real order ν ≥ 0 and x ≥ 0.
///
/// Ascending series for x ≤ 12, Hankel's asymptotic expansion (eight terms of
/// P and Q) beyond. If the order is too large for the asymptotic expansion
/// to have settled at this x, Miller's backward recurrence is used instead.
pub fn bessel_j(order: f64, x: f64) -> f64 {
    assert!(order >= 0.0 && x >= 0.0, "bessel_j needs order >= 0 and x >= 0");
    if x <= SERIES_LIMIT {
        return ascending(order, x);
    }
    hankel(order, x).unwrap_or_else(|| bessel_j_miller(order, x))
}

fn ascending(order: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0.0 { 1.0 } else { 0.0 };
    }
    let lead = order * (0.5 * x).ln() - ln_gamma_real(order + 1.0).expect("order >= 0");
    let mut term = lead.exp();
    let mut sum = term;
    let q = -0.25 * x * x;
    let mut k = 0.0;
    loop {
        term *= q / ((k + 1.0) * (order + k + 1.0));
        sum += term;
        k += 1.0;
        // terms grow until k(k+ν) exceeds x²/4
        if k * (k + order) > -q && term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        if k > 500.0 {
            break;
        }
    }
    sum
}

fn hankel(order: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * order * order;
    // a_k(ν)/x^k, alternating into P (even k) and Q (odd k)
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = 0.0_f64;
    for k in 0..2 * HANKEL_TERMS {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        last = term.abs();
        let odd = (2 * k + 1) as f64;
        term *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
    }
    if last > HANKEL_LAST_TERM {
        return None;
    }
    // χ = x − (ν/2 + 1/4)π, expanded to keep the phase exact for large x
    let phase = order * FRAC_PI_2 + FRAC_PI_4;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    Some((2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi))
}

/// Miller's backward recurrence normalized by
/// (x/2)^ν₀ = Σ_j (ν₀+2j) Γ(ν₀+j)/j! · J_{ν₀+2j}(x), ν₀ = frac(ν).
fn bessel_j_miller(order: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0.0 { 1.0 } else { 0.0 };
    }
    let base = order.floor();
    let frac = order - base;
    let target = base as usize;
    let start = (x.max(base) + 10.0 * x.cbrt() + 40.0).ceil() as usize;
    let start = start + start % 2;

    // normalization weights w_j for even indices 2j
    let half = start / 2;
    let mut weights = vec![0.0_f64; half + 1];
    if frac == 0.0 {
        weights[0] = 1.0;
        for w in weights.iter_mut().skip(1) {
            *w = 2.0;
        }
    } else {
        // g_j = Γ(ν₀+j)/j!
        let mut g = ln_gamma_real(frac).expect("frac > 0").exp();
        for (j, w) in weights.iter_mut().enumerate() {
            if j > 0 {
                g *= (frac + j as f64 - 1.0) / j as f64;
            }
            *w = (frac + 2.0 * j as f64) * g;
        }
    }

    let mut next = 0.0_f64; // f_{k+1}
    let mut cur = 1e-30_f64; // f_k
    let mut norm = 0.0_f64;
    let mut at_target = 0.0_f64;
    for k in (0..=start).rev() {
        if k == target {
            at_target = cur;
        }
        if k % 2 == 0 {
            norm += weights[k / 2] * cur;
        }
        if k == 0 {
            break;
        }
        let prev = 2.0 * (frac + k as f64) / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > 1e250 {
            next *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
            at_target *= 1e-250;
        }
    }
    at_target * (0.5 * x).powf(frac) / norm
}

//! The Schlömilch-type sum
//!
//! ```text
//! S(a,b) = Λ Σ_{m≥1} J_μ(am) J_ν(bm) / m^α,   Λ = 2^{μ+ν} / (a^μ b^ν)
//! ```
//!
//! in the logarithmic case ϑ = α − μ − ν = 2n+1, evaluated directly and
//! through its two convergent power-series expansions in (a/2)²: one for
//! a = b, one for a > b with χ = b²/a². The coefficient machinery also yields
//! an independent closed form for ₃F₂(1,1,1−μ; n+ν+2, n+2; 1).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::atomic::{AtomicBool, Ordering};

use crate::closed_form::{d_coeff, d_coeff_dd, theorem1, LimitPolicy, Theorem1Params};
use crate::dd::{psi_diff, CDd};
use crate::hypergeom::{sum_2f1, sum_3f2, EvalResult, SeriesConfig};
use crate::special_fns::{
    bessel_j, digamma, digamma_real, gen_binomial, ln_gamma_real, pochhammer_real, rgamma, zeta,
    zeta_neg_odd_log, MathConstants,
};
use crate::{Complex, Error, Result};

/// Cap on the number of m-terms in either expansion.
pub const MAX_EXPANSION_TERMS: usize = 200;
const CANCEL_CHECK_EVERY: usize = 10_000;
const BOUNDARY_FLAG: f64 = 1e-9;

/// Parameters of S(a,b) with α = μ + ν + 2n + 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselSumParams {
    pub mu: f64,
    pub nu: f64,
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl BesselSumParams {
    pub fn new(mu: f64, nu: f64, a: f64, b: f64, n: usize) -> Result<Self> {
        if !(mu >= 0.0 && nu >= 0.0 && mu.is_finite() && nu.is_finite()) {
            return Err(Error::Domain(format!("orders must be >= 0, got mu={mu}, nu={nu}")));
        }
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("arguments must be > 0, got a={a}, b={b}")));
        }
        Ok(Self { mu, nu, a, b, n })
    }

    /// Builds parameters from an explicit α, refusing any α for which
    /// α − μ − ν is not an odd positive integer.
    pub fn with_alpha(mu: f64, nu: f64, a: f64, b: f64, alpha: f64) -> Result<Self> {
        let theta = alpha - mu - nu;
        let n = (theta - 1.0) / 2.0;
        if !(n >= -1e-12 && (n - n.round()).abs() <= 1e-12) {
            return Err(Error::Domain(format!(
                "alpha - mu - nu = {theta} is not of the form 2n+1"
            )));
        }
        Self::new(mu, nu, a, b, n.round() as usize)
    }

    pub fn alpha(&self) -> f64 {
        self.mu + self.nu + self.theta()
    }

    /// ϑ = 2n + 1.
    pub fn theta(&self) -> f64 {
        (2 * self.n + 1) as f64
    }

    /// χ = b²/a².
    pub fn chi(&self) -> f64 {
        (self.b / self.a).powi(2)
    }

    /// Λ = 2^{μ+ν} / (a^μ b^ν).
    pub fn lambda(&self) -> f64 {
        ((self.mu + self.nu) * 2f64.ln() - self.mu * self.a.ln() - self.nu * self.b.ln()).exp()
    }

    /// True when a + b sits within 1e−9 of the 2π boundary of the
    /// unequal-argument expansion (or a of π for the equal one).
    pub fn near_boundary(&self) -> bool {
        (self.a + self.b - 2.0 * PI).abs() <= BOUNDARY_FLAG
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionResult {
    pub value: f64,
    pub terms_used: usize,
    pub truncation_est: f64,
}

/// Where the ₃F₂(1,1,1−μ; n+ν+2, n+2; χ) inside Δ_n(χ) comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hyp3f2Source {
    /// Direct series summation.
    Series,
    /// The closed form with c = 1−μ, d = n+ν+2 (χ = 1 only).
    Theorem1,
}

/// How Δ_n(χ) is obtained inside the unequal-argument expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaSource {
    Finite(Hyp3f2Source),
    /// The closed form for Δ_n(1) (χ = 1 only).
    ClosedAtUnity,
}

// --------------------------------------------------------------------------
// direct summation

/// S(a,b) summed directly over m ≤ `terms`.
///
/// When a frequency a ± b is a multiple of 2π the product J_μ(am)J_ν(bm)
/// keeps a non-oscillating m^{−1} component; its remainder beyond the last
/// term is added analytically. `truncation_est` is the spread of the
/// tail-corrected partial sums over the last half of the range.
pub fn s_direct(params: &BesselSumParams, terms: usize) -> Result<ExpansionResult> {
    s_direct_cancellable(params, terms, &AtomicBool::new(false))
}

/// [`s_direct`] that polls `cancel` every 10⁴ terms.
pub fn s_direct_cancellable(params: &BesselSumParams, terms: usize, cancel: &AtomicBool) -> Result<ExpansionResult> {
    if terms < 1000 {
        return Err(Error::InvalidConfig(format!("s_direct needs at least 1000 terms, got {terms}")));
    }
    let alpha = params.alpha();
    let smooth = smooth_amplitude(params);
    let tail = |m: usize| smooth * (m as f64 + 0.5).powf(-alpha) / alpha;

    let half = terms / 2;
    let (mut sum, mut comp) = (0.0_f64, 0.0_f64);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for m in 1..=terms {
        if m % CANCEL_CHECK_EVERY == 0 && cancel.load(Ordering::Relaxed) {
            return Err(Error::Cancelled(m));
        }
        let mf = m as f64;
        let term = bessel_j(params.mu, params.a * mf) * bessel_j(params.nu, params.b * mf) * mf.powf(-alpha);
        // Neumaier summation
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if m > half {
            let v = sum + comp + tail(m);
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let last = sum + comp + tail(terms);
    let lambda = params.lambda();
    Ok(ExpansionResult {
        value: lambda * last,
        terms_used: terms,
        truncation_est: lambda * (hi - last).max(last - lo),
    })
}

// Coefficient C of the non-oscillating part C/m of J_μ(am)J_ν(bm).
fn smooth_amplitude(params: &BesselSumParams) -> f64 {
    let phase_mu = params.mu * FRAC_PI_2 + FRAC_PI_4;
    let phase_nu = params.nu * FRAC_PI_2 + FRAC_PI_4;
    let scale = 1.0 / (PI * (params.a * params.b).sqrt());
    let is_aliased = |w: f64| {
        let r = w / (2.0 * PI);
        (r - r.round()).abs() <= 1e-12
    };
    let mut amp = 0.0;
    if is_aliased(params.a - params.b) {
        amp += scale * (phase_nu - phase_mu).cos();
    }
    if is_aliased(params.a + params.b) {
        amp += scale * (phase_mu + phase_nu).cos();
    }
    amp
}

// --------------------------------------------------------------------------
// coefficients

// (sign, ln|ζ(ϑ − 2m)|), m ≠ n
fn zeta_theta_log(params: &BesselSumParams, m: usize) -> Result<(f64, f64)> {
    let n = params.n;
    if m == n {
        return Err(Error::Range(format!("coefficient index m = n = {n} hits the zeta pole")));
    }
    if m < n {
        let s = (2 * (n - m) + 1) as f64;
        Ok((1.0, zeta(s)?.ln()))
    } else {
        zeta_neg_odd_log((m - n) as u32)
    }
}

fn parity(m: usize) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// (sign, ln|A_m|) with
/// A_m = (−)^m/m! · Γ(1+μ+ν+2m) ζ(ϑ−2m) / (Γ(1+μ+m) Γ(1+ν+m) Γ(1+μ+ν+m)).
pub fn a_coeff_log(params: &BesselSumParams, m: usize) -> Result<(f64, f64)> {
    let (mu, nu, mf) = (params.mu, params.nu, m as f64);
    let (zsign, zlog) = zeta_theta_log(params, m)?;
    let ln_abs = ln_gamma_real(1.0 + mu + nu + 2.0 * mf)? + zlog
        - ln_gamma_real(mf + 1.0)?
        - ln_gamma_real(1.0 + mu + mf)?
        - ln_gamma_real(1.0 + nu + mf)?
        - ln_gamma_real(1.0 + mu + nu + mf)?;
    Ok((parity(m) * zsign, ln_abs))
}

/// A_m, the equal-argument coefficient (m ≠ n).
pub fn a_coeff(params: &BesselSumParams, m: usize) -> Result<f64> {
    let (s, l) = a_coeff_log(params, m)?;
    Ok(s * l.exp())
}

/// F_m(μ,χ) = ₂F₁(−m, −m−μ; 1+ν; χ), a terminating sum of positive terms.
pub fn f_poly(params: &BesselSumParams, m: usize, chi: f64) -> Result<f64> {
    let c = |x: f64| Complex::new(x, 0.0);
    let mf = m as f64;
    let r = sum_2f1(c(-mf), c(-mf - params.mu), c(1.0 + params.nu), c(chi), &SeriesConfig::default())?;
    Ok(r.value.re)
}

/// (sign, ln|B_m|) with B_m = (−)^m ζ(ϑ−2m) F_m(μ,χ) / (m! Γ(1+μ+m)).
pub fn b_coeff_log(params: &BesselSumParams, m: usize, chi: f64) -> Result<(f64, f64)> {
    let (zsign, zlog) = zeta_theta_log(params, m)?;
    let mf = m as f64;
    let f = f_poly(params, m, chi)?;
    let ln_abs = zlog - ln_gamma_real(mf + 1.0)? - ln_gamma_real(1.0 + params.mu + mf)? + f.abs().ln();
    Ok((parity(m) * zsign * f.signum(), ln_abs))
}

/// B_m at the given χ (m ≠ n).
pub fn b_coeff(params: &BesselSumParams, m: usize, chi: f64) -> Result<f64> {
    let (s, l) = b_coeff_log(params, m, chi)?;
    Ok(s * l.exp())
}

fn psi(x: f64) -> Result<f64> {
    digamma_real(x)
}

/// Υ_n(a) = γ − log(a/2) − ψ(α) + ½{ψ(n+1) + ψ(n+1+μ) + ψ(n+1+ν) + ψ(n+1+μ+ν)}.
pub fn upsilon(params: &BesselSumParams) -> Result<f64> {
    let (mu, nu) = (params.mu, params.nu);
    let n1 = params.n as f64 + 1.0;
    let half = psi(n1)? + psi(n1 + mu)? + psi(n1 + nu)? + psi(n1 + mu + nu)?;
    Ok(MathConstants::EULER_GAMMA - (params.a / 2.0).ln() - psi(params.alpha())? + 0.5 * half)
}

/// Υ̂_n(a) = γ − log(a/2) + ½ψ(n+1+μ) + ½ψ(n+1).
pub fn upsilon_hat(params: &BesselSumParams) -> Result<f64> {
    let n1 = params.n as f64 + 1.0;
    Ok(MathConstants::EULER_GAMMA - (params.a / 2.0).ln() + 0.5 * psi(n1 + params.mu)? + 0.5 * psi(n1)?)
}

/// 𝒟_k(n,μ) = D_k(n) + k!{ψ(n+1+μ) − ψ(n+1+μ−k)}, the ψ difference taken as
/// the finite harmonic sum Σ_{j<k} 1/(n+1+μ−k+j).
pub fn cal_d_coeff(n: usize, k: usize, mu: f64) -> Result<f64> {
    let base = d_coeff(n, k)?;
    let start = n as f64 + 1.0 + mu - k as f64;
    let mut harmonic = 0.0;
    for j in 0..k {
        let x = start + j as f64;
        if x.abs() <= 1e-12 {
            return Err(Error::Range(format!("psi pole in D_k(n, mu) at n={n}, k={k}, mu={mu}")));
        }
        harmonic += 1.0 / x;
    }
    let fact = (1..=k).fold(1.0, |acc, j| acc * j as f64);
    Ok(base + fact * harmonic)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

// Σ_{k=1}^{n} C(n,k) C(n+μ,k) 𝒟_k(n,μ) χ^k / (1+ν)_k
fn delta_finite_part(mu: f64, nu: f64, n: usize, chi: f64) -> Result<f64> {
    let mut acc = 0.0;
    for k in 1..=n {
        let gb = gen_binomial(Complex::new(n as f64 + mu, 0.0), k).re;
        acc += binomial(n, k) * gb * cal_d_coeff(n, k, mu)? * chi.powi(k as i32) / pochhammer_real(1.0 + nu, k);
    }
    Ok(acc)
}

/// Δ_n(χ) = Σ_{k=1}^{n} C(n,k) C(n+μ,k) 𝒟_k(n,μ) χ^k/(1+ν)_k
///          + (μ)_{n+1} χ^{n+1} / ((1+ν)_{n+1}(n+1)) · ₃F₂(1,1,1−μ; n+ν+2, n+2; χ).
pub fn delta_n(params: &BesselSumParams, chi: f64, cfg: &SeriesConfig) -> Result<EvalResult> {
    delta_n_with(params, chi, cfg, Hyp3f2Source::Series)
}

/// [`delta_n`] with a choice of how the ₃F₂ at χ = 1 is obtained.
pub fn delta_n_with(params: &BesselSumParams, chi: f64, cfg: &SeriesConfig, source: Hyp3f2Source) -> Result<EvalResult> {
    if !(chi > 0.0 && chi <= 1.0) {
        return Err(Error::Domain(format!("chi must lie in (0, 1], got {chi}")));
    }
    let (mu, nu, n) = (params.mu, params.nu, params.n);
    let finite = delta_finite_part(mu, nu, n, chi)?;
    let pre = pochhammer_real(mu, n + 1) * chi.powi(n as i32 + 1) / (pochhammer_real(1.0 + nu, n + 1) * (n as f64 + 1.0));
    if pre == 0.0 {
        return Ok(EvalResult {
            value: Complex::new(finite, 0.0),
            err_est: 4.0 * f64::EPSILON * finite.abs(),
            terms_used: n,
            converged: true,
        });
    }
    let c = |x: f64| Complex::new(x, 0.0);
    let hyp = match source {
        Hyp3f2Source::Series => sum_3f2(
            [c(1.0), c(1.0), c(1.0 - mu)],
            [c(n as f64 + nu + 2.0), c(n as f64 + 2.0)],
            c(chi),
            cfg,
        )?,
        Hyp3f2Source::Theorem1 => {
            if chi != 1.0 {
                return Err(Error::Domain("the closed-form source needs chi = 1".into()));
            }
            let p = Theorem1Params::new(c(1.0 - mu), c(n as f64 + nu + 2.0), n);
            theorem1(&p, &LimitPolicy::default())?
        }
    };
    Ok(EvalResult {
        value: Complex::new(finite + pre * hyp.value.re, 0.0),
        err_est: pre.abs() * hyp.err_est + 4.0 * f64::EPSILON * finite.abs(),
        terms_used: n + hyp.terms_used,
        converged: hyp.converged,
    })
}

/// Δ_n(1) = Γ(α)Γ(1+ν) / (Γ(1+ν+n)Γ(1+μ+ν+n)) · {2ψ(α) − ψ(1+ν+n) − ψ(1+μ+ν+n)}.
pub fn delta_n_at_1_closed(params: &BesselSumParams) -> Result<f64> {
    let (mu, nu, nf) = (params.mu, params.nu, params.n as f64);
    let alpha = params.alpha();
    let ratio = (ln_gamma_real(alpha)? + ln_gamma_real(1.0 + nu)?
        - ln_gamma_real(1.0 + nu + nf)?
        - ln_gamma_real(1.0 + mu + nu + nf)?)
    .exp();
    Ok(ratio * (2.0 * psi(alpha)? - psi(1.0 + nu + nf)? - psi(1.0 + mu + nu + nf)?))
}

// Σ_{m≠n} sign_m exp(ln|c_m| + 2m ln(a/2)), stopping after three consecutive
// terms below rel_tol·|sum| or at MAX_EXPANSION_TERMS.
fn power_sum<F>(n: usize, a: f64, rel_tol: f64, mut coeff: F) -> Result<(f64, usize, f64)>
where
    F: FnMut(usize) -> Result<(f64, f64)>,
{
    let ln_half_a = (a / 2.0).ln();
    let mut sum = 0.0;
    let mut quiet = 0;
    let mut used = 0;
    let mut last = 0.0_f64;
    let mut before_last = 0.0_f64;
    for m in 0..MAX_EXPANSION_TERMS {
        if m == n {
            continue;
        }
        let (sign, ln_abs) = coeff(m)?;
        let term = sign * (ln_abs + 2.0 * m as f64 * ln_half_a).exp();
        sum += term;
        used += 1;
        before_last = last;
        last = term.abs();
        if last < rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok((sum, used, last));
            }
        } else {
            quiet = 0;
        }
    }
    // capped: geometric remainder estimate from the last ratio
    let r = if before_last > 0.0 { last / before_last } else { 1.0 };
    let est = if r < 1.0 {
        last * r / (1.0 - r)
    } else {
        last * MAX_EXPANSION_TERMS as f64
    };
    Ok((sum, used, est))
}

fn ln_gamma_sum(args: &[f64]) -> Result<f64> {
    args.iter().map(|&x| ln_gamma_real(x)).sum()
}

/// S(a,a) from the equal-argument expansion, 0 < a ≤ π:
///
/// ```text
/// Σ_{m≠n} A_m (a/2)^{2m} + (−)^n (a/2)^{2n} Γ(α) Υ_n(a) / (Γ(n+1+μ)Γ(n+1+ν)Γ(n+1+μ+ν) n!)
/// ```
pub fn expansion_equal(params: &BesselSumParams, cfg: &SeriesConfig) -> Result<ExpansionResult> {
    cfg.validate()?;
    let a = params.a;
    if (params.a - params.b).abs() > 1e-12 * a {
        return Err(Error::Domain(format!("equal-argument expansion needs a = b, got a={a}, b={}", params.b)));
    }
    if a > PI {
        return Err(Error::Domain(format!("equal-argument expansion needs 0 < a <= pi, got {a}")));
    }
    let (mu, nu, n) = (params.mu, params.nu, params.n);
    let (sum, used, est) = power_sum(n, a, cfg.rel_tol, |m| a_coeff_log(params, m))?;
    let n1 = n as f64 + 1.0;
    let ln_ratio = ln_gamma_real(params.alpha())? - ln_gamma_sum(&[n1 + mu, n1 + nu, n1 + mu + nu, n1])?;
    let special = parity(n) * (2.0 * n as f64 * (a / 2.0).ln() + ln_ratio).exp() * upsilon(params)?;
    Ok(ExpansionResult {
        value: sum + special,
        terms_used: used + 1,
        truncation_est: est,
    })
}

/// S(a,b) from the unequal-argument expansion, a > b, a + b ≤ 2π:
///
/// ```text
/// (1/Γ(1+ν)) Σ_{m≠n} B_m (a/2)^{2m}
///   + (−)^n (a/2)^{2n} / (Γ(1+ν)Γ(n+1+μ) n!) · {Υ̂_n(a) F_n(μ,χ) − ½Δ_n(χ)}
/// ```
pub fn expansion_unequal(params: &BesselSumParams, cfg: &SeriesConfig) -> Result<ExpansionResult> {
    expansion_unequal_with(params, cfg, DeltaSource::Finite(Hyp3f2Source::Series))
}

/// [`expansion_unequal`] with an explicit source for Δ_n(χ). a = b is accepted
/// here (χ = 1), which is how the two expansions are compared.
pub fn expansion_unequal_with(params: &BesselSumParams, cfg: &SeriesConfig, delta: DeltaSource) -> Result<ExpansionResult> {
    cfg.validate()?;
    let (a, b) = (params.a, params.b);
    if b > a {
        return Err(Error::Domain(format!("unequal-argument expansion needs a > b, got a={a}, b={b}")));
    }
    if a + b > 2.0 * PI {
        return Err(Error::Domain(format!("unequal-argument expansion needs a+b <= 2 pi, got {}", a + b)));
    }
    let chi = params.chi();
    let (mu, nu, n) = (params.mu, params.nu, params.n);
    let (sum, used, est) = power_sum(n, a, cfg.rel_tol, |m| b_coeff_log(params, m, chi))?;
    let inv_gamma_nu = (-ln_gamma_real(1.0 + nu)?).exp();

    let delta_value = match delta {
        DeltaSource::Finite(src) => delta_n_with(params, chi, cfg, src)?.value.re,
        DeltaSource::ClosedAtUnity => {
            if chi != 1.0 {
                return Err(Error::Domain("closed-form delta needs a = b".into()));
            }
            delta_n_at_1_closed(params)?
        }
    };
    let n1 = n as f64 + 1.0;
    let ln_pre = 2.0 * n as f64 * (a / 2.0).ln() - ln_gamma_sum(&[1.0 + nu, n1 + mu, n1])?;
    let brace = upsilon_hat(params)? * f_poly(params, n, chi)? - 0.5 * delta_value;
    let special = parity(n) * ln_pre.exp() * brace;
    Ok(ExpansionResult {
        value: inv_gamma_nu * sum + special,
        terms_used: used + 1,
        truncation_est: inv_gamma_nu * est,
    })
}

/// Closed form for ₃F₂(1,1,1−μ; n+ν+2, n+2; 1), μ > 0:
///
/// ```text
/// (n+1)(1+ν)_{n+1}/(μ)_{n+1} · { (1+μ+ν+n)_n/(1+ν)_n · {2ψ(α) − ψ(1+ν+n) − ψ(1+μ+ν+n)}
///                               − Σ_{k=1}^{n} C(n,k) C(n+μ,k) 𝒟_k(n,μ)/(1+ν)_k }
/// ```
pub fn eq24_3f2(params: &BesselSumParams) -> Result<f64> {
    let (mu, nu, n) = (params.mu, params.nu, params.n);
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("the mu-closed form needs mu > 0, got {mu}")));
    }
    // the brace cancels to O(μ) relative size, so it is formed in double-double
    let real = |x: f64| CDd::from(x);
    let nf = real(n as f64);
    let (mu_d, nu_d) = (real(mu), real(nu));
    let one_nu = CDd::ONE + nu_d;
    let alpha = mu_d + nu_d + real(params.theta());
    let ratio = (one_nu + mu_d + nf).pochhammer(n) / one_nu.pochhammer(n);
    let psis = psi_diff(one_nu + nf, alpha) + psi_diff(one_nu + mu_d + nf, alpha);
    let mut finite = CDd::ZERO;
    for k in 1..=n {
        let mut gb = CDd::ONE;
        for j in 0..k {
            gb = gb * (nf + mu_d - real(j as f64)) / real(j as f64 + 1.0);
        }
        let start = nf + CDd::ONE + mu_d - real(k as f64);
        let harmonic = (0..k).fold(CDd::ZERO, |acc, j| acc + CDd::ONE / (start + real(j as f64)));
        let fact = real((1..=k).fold(1.0, |acc, j| acc * j as f64));
        let cal_d = CDd::real(d_coeff_dd(n, k)) + fact * harmonic;
        finite = finite + real(binomial(n, k)) * gb * cal_d / one_nu.pochhammer(k);
    }
    let brace = ratio * psis - finite;
    Ok((real(n as f64 + 1.0) * one_nu.pochhammer(n + 1) / mu_d.pochhammer(n + 1) * brace).to_complex().re)
}

/// Both sides of
///
/// ```text
/// Σ_{k=1}^{n} C(n,k) C(n+1−c,k) k!{ψ(n+2−c) − ψ(n+2−c−k)} / Γ(d−n−1+k)
///   = (d−c)_n / Γ(d−1) · {ψ(d−c+n) − ψ(d−c)}
/// ```
pub fn psi_removal_sides(c: Complex, d: Complex, n: usize) -> Result<(Complex, Complex)> {
    let nf = n as f64;
    let mut lhs = Complex::new(0.0, 0.0);
    let top = digamma(nf + 2.0 - c)?;
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
        let diff = top - digamma(nf + 2.0 - c - k as f64)?;
        lhs += binomial(n, k) * gen_binomial(nf + 1.0 - c, k) * fact * diff * rgamma(d - nf - 1.0 + k as f64);
    }
    let mut poch = Complex::new(1.0, 0.0);
    for j in 0..n {
        poch *= d - c + j as f64;
    }
    let rhs = poch * rgamma(d - 1.0) * (digamma(d - c + nf)? - digamma(d - c)?);
    Ok((lhs, rhs))
}

/// [`psi_removal_sides`] under c = 1−μ, d = n+ν+2.
pub fn psi_removal_identity(params: &BesselSumParams) -> Result<(Complex, Complex)> {
    let c = Complex::new(1.0 - params.mu, 0.0);
    let d = Complex::new(params.n as f64 + params.nu + 2.0, 0.0);
    psi_removal_sides(c, d, params.n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(mu: f64, nu: f64, a: f64, b: f64, n: usize) -> BesselSumParams {
        BesselSumParams::new(mu, nu, a, b, n).unwrap()
    }

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn parameter_checks() {
        assert!(BesselSumParams::new(-0.1, 0.0, 1.0, 1.0, 0).is_err());
        assert!(BesselSumParams::new(0.0, 0.0, 0.0, 1.0, 0).is_err());
        let q = BesselSumParams::with_alpha(0.5, 0.5, 1.0, 1.0, 4.0).unwrap();
        assert_eq!(q.n, 1);
        assert!(BesselSumParams::with_alpha(0.5, 0.5, 1.0, 1.0, 3.5).is_err());
        assert!(BesselSumParams::with_alpha(0.5, 0.5, 1.0, 1.0, 3.0).is_err());
        let q = p(1.0, 2.0, 2.0, 1.0, 0);
        assert!((q.lambda() - 8.0 / 2.0).abs() < 1e-15);
        assert!((q.chi() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn a_coefficients() {
        // ϑ − 2m = −1 carries ζ(−1) = −1/12
        let q = p(0.0, 0.0, 1.0, 1.0, 1);
        let a2 = a_coeff(&q, 2).unwrap();
        let expected = (-1.0 / 12.0) * 24.0 / (2.0 * 2.0 * 2.0 * 2.0);
        assert!((a2 - expected).abs() < 1e-14, "{a2} vs {expected}");
        let q = p(0.0, 0.0, 1.0, 1.0, 2);
        assert!((a_coeff(&q, 0).unwrap() - zeta(5.0).unwrap()).abs() < 1e-14);
        assert!(matches!(a_coeff(&q, 2), Err(Error::Range(_))));
    }

    #[test]
    fn a_equals_b_over_gamma_at_unit_chi() {
        for &(mu, nu, n) in &[(0.5, 0.5, 1usize), (1.3, 0.2, 2), (0.0, 2.5, 0)] {
            let q = p(mu, nu, 1.0, 1.0, n);
            let g = ln_gamma_real(1.0 + nu).unwrap().exp();
            for m in (0..=2 * n + 3).filter(|&m| m != n) {
                let a = a_coeff(&q, m).unwrap();
                let b = b_coeff(&q, m, 1.0).unwrap() / g;
                assert!((a - b).abs() <= 1e-11 * a.abs(), "m={m}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn upsilon_values() {
        let q = p(0.0, 0.0, 2.0, 2.0, 0);
        assert!(upsilon(&q).unwrap().abs() < 1e-15);
        let q = p(1.0, 0.0, 2.0, 2.0, 0);
        assert!((upsilon_hat(&q).unwrap() - 0.5).abs() < 1e-15);
        let q1 = p(0.7, 0.3, 1.0, 1.0, 1);
        let q2 = p(0.7, 0.3, 2.0, 2.0, 1);
        assert!((upsilon(&q1).unwrap() - upsilon(&q2).unwrap() - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn cal_d_values() {
        for n in 1..6 {
            for k in 1..=n {
                let v = cal_d_coeff(n, k, 0.0).unwrap();
                assert!((v - 2.0 * d_coeff(n, k).unwrap()).abs() < 1e-12 * v);
            }
        }
        assert!((cal_d_coeff(1, 1, 1.0).unwrap() - 1.5).abs() < 1e-15);
        assert!((cal_d_coeff(2, 2, 0.5).unwrap() - (3.0 + 32.0 / 15.0)).abs() < 1e-14);
        assert!(cal_d_coeff(2, 3, 0.5).is_err());
    }

    #[test]
    fn delta_examples() {
        let q = p(1.0, 0.0, 1.0, 1.0, 0);
        assert!((delta_n(&q, 1.0, &cfg()).unwrap().value.re - 1.0).abs() < 1e-13);
        assert!((delta_n_at_1_closed(&q).unwrap() - 1.0).abs() < 1e-14);

        let q = p(0.0, 0.0, 1.0, 1.0, 1);
        assert!((delta_n(&q, 1.0, &cfg()).unwrap().value.re - 2.0).abs() < 1e-14);
        assert!((delta_n_at_1_closed(&q).unwrap() - 2.0).abs() < 1e-14);

        // n = 0: no finite part
        let (mu, nu) = (0.8, 1.4);
        let q = p(mu, nu, 1.0, 1.0, 0);
        let c = |x: f64| Complex::new(x, 0.0);
        let hyp = sum_3f2([c(1.0), c(1.0), c(1.0 - mu)], [c(nu + 2.0), c(2.0)], c(0.5), &cfg()).unwrap();
        let expected = mu * 0.5 / (1.0 + nu) * hyp.value.re;
        assert!((delta_n(&q, 0.5, &cfg()).unwrap().value.re - expected).abs() < 1e-14);
        assert!(delta_n(&q, 1.5, &cfg()).is_err());
    }

    #[test]
    fn delta_at_unity_three_ways() {
        for &(mu, nu, n) in &[(0.5, 0.5, 1usize), (1.7, 0.0, 3), (2.4, 1.1, 2)] {
            let q = p(mu, nu, 1.0, 1.0, n);
            let series = delta_n_with(&q, 1.0, &cfg(), Hyp3f2Source::Series).unwrap().value.re;
            let closed3 = delta_n_with(&q, 1.0, &cfg(), Hyp3f2Source::Theorem1).unwrap().value.re;
            let closed = delta_n_at_1_closed(&q).unwrap();
            assert!((series - closed).abs() <= 1e-9 * closed.abs(), "{series} vs {closed}");
            assert!((closed3 - closed).abs() <= 1e-9 * closed.abs(), "{closed3} vs {closed}");
        }
    }

    #[test]
    fn eq24_examples() {
        let c = |x: f64| Complex::new(x, 0.0);
        assert!((eq24_3f2(&p(1.0, 0.5, 1.0, 1.0, 2)).unwrap() - 1.0).abs() < 1e-13);
        let v = eq24_3f2(&p(0.5, 0.0, 1.0, 1.0, 0)).unwrap();
        assert!((v - (4.0 - 4.0 * MathConstants::LOG2)).abs() < 1e-14);
        let q = p(0.5, 0.5, 1.0, 1.0, 1);
        let v = eq24_3f2(&q).unwrap();
        let t = theorem1(&Theorem1Params::new(c(0.5), c(3.5), 1), &LimitPolicy::default()).unwrap().value.re;
        let s = sum_3f2([c(1.0), c(1.0), c(0.5)], [c(3.5), c(3.0)], c(1.0), &cfg()).unwrap().value.re;
        assert!((v - t).abs() < 1e-9 * t.abs() && (v - s).abs() < 1e-9 * s.abs());
        assert!(eq24_3f2(&p(0.0, 0.5, 1.0, 1.0, 1)).is_err());
    }

    #[test]
    fn psi_removal() {
        let (l, r) = psi_removal_identity(&p(0.9, 0.3, 1.0, 1.0, 0)).unwrap();
        assert_eq!(l, Complex::new(0.0, 0.0));
        assert!(r.norm() < 1e-15);
        for &(mu, nu, n, tol) in &[(0.5, 0.5, 1usize, 1e-11), (2.2, 0.1, 3, 1e-10)] {
            let (l, r) = psi_removal_identity(&p(mu, nu, 1.0, 1.0, n)).unwrap();
            assert!((l - r).norm() <= tol * r.norm(), "{l} vs {r}");
        }
    }

    #[test]
    fn equal_matches_unequal_at_unit_chi() {
        let q = p(0.5, 0.5, 1.3, 1.3, 1);
        let e = expansion_equal(&q, &cfg()).unwrap().value;
        let u = expansion_unequal_with(&q, &cfg(), DeltaSource::ClosedAtUnity).unwrap().value;
        assert!((e - u).abs() < 1e-9, "{e} vs {u}");
    }

    #[test]
    fn expansion_domain_errors() {
        assert!(expansion_equal(&p(0.0, 0.0, 3.2, 3.2, 0), &cfg()).is_err());
        assert!(expansion_equal(&p(0.0, 0.0, 2.0, 1.0, 0), &cfg()).is_err());
        assert!(expansion_unequal(&p(0.0, 0.0, 1.0, 2.0, 0), &cfg()).is_err());
        assert!(expansion_unequal(&p(0.0, 0.0, 4.0, 2.5, 0), &cfg()).is_err());
        assert!(p(0.0, 0.0, 4.0, 2.0 * PI - 4.0, 0).near_boundary());
    }

    #[test]
    fn direct_sum_half_integer_reduction() {
        // μ = ν = ½, a = b = 1: S = Λ (2/π) Σ sin²m / m³ with Λ = 2
        let q = p(0.5, 0.5, 1.0, 1.0, 0);
        let r = s_direct(&q, 20_000).unwrap();
        let mut brute = 0.0;
        for m in 1..=2_000_000u64 {
            let mf = m as f64;
            brute += mf.sin().powi(2) / mf.powi(3);
        }
        brute *= 4.0 / PI;
        assert!((r.value - brute).abs() < 1e-9, "{} vs {brute}", r.value);
        let e = expansion_equal(&q, &cfg()).unwrap();
        assert!((e.value - brute).abs() < 1e-6, "{} vs {brute}", e.value);
    }

    #[test]
    fn direct_sum_truncation_estimate_is_consistent() {
        let q = p(0.0, 0.0, 1.0, 1.0, 0);
        let r1 = s_direct(&q, 4_000).unwrap();
        let r2 = s_direct(&q, 64_000).unwrap();
        assert!((r2.value - r1.value).abs() <= 4.0 * r1.truncation_est);
        assert!(s_direct(&q, 10).is_err());
        let cancel = AtomicBool::new(true);
        assert!(matches!(
            s_direct_cancellable(&q, 50_000, &cancel),
            Err(Error::Cancelled(10_000))
        ));
    }

    #[test]
    fn leading_order_for_small_argument() {
        let q = p(0.5, 0.5, 0.05, 0.05, 1);
        let total = expansion_equal(&q, &cfg()).unwrap().value;
        let lead = a_coeff(&q, 0).unwrap();
        assert!(((total - lead) / lead).abs() < 0.01);
    }
}

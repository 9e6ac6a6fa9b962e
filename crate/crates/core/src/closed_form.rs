//! Closed forms for ₃F₂(1,1,c; d,n+2; 1) and the finite-sum identities that
//! lead to it.
//!
//! The main entry point is [`theorem1`]:
//!
//! ```text
//! ₃F₂(1,1,c; d,n+2; 1) = (n+1)Γ(d)/(1−c)_{n+1} · { (d−c)_n/Γ(d−1) · [ψ(d−c+n) − ψ(d−1)]
//!                         − Σ_{k=1}^{n} C(n,k) C(n+1−c,k) D_k(n) / Γ(d−n−1+k) }
//! D_k(n) = k! {ψ(n+1) − ψ(n+1−k)}
//! ```
//!
//! valid for Re(d−c+n) > 0.

use crate::hypergeom::EvalResult;
use crate::dd::{psi_diff, CDd, Dd};
use crate::special_fns::{
    digamma, gamma_ratio, is_nonpositive_integer, ln_gamma_shift, pochhammer, POLE_TOL,
};
use crate::{Complex, Error, Result};

const EPS: f64 = f64::EPSILON;

/// Parameters (c, d, n) of ₃F₂(1,1,c; d,n+2; 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem1Params {
    pub c: Complex,
    pub d: Complex,
    pub n: usize,
}

impl Theorem1Params {
    pub fn new(c: Complex, d: Complex, n: usize) -> Self {
        Self { c, d, n }
    }

    /// Re(d − c + n), the parametric excess of the series.
    pub fn excess(&self) -> f64 {
        (self.d - self.c).re + self.n as f64
    }

    pub fn in_domain(&self) -> bool {
        self.excess() > 0.0
    }

    /// c = d: the series contracts to ₂F₁(1,1; n+2; 1) = (n+1)/n.
    pub fn is_contracted(&self) -> bool {
        (self.c - self.d).norm() <= POLE_TOL
    }

    /// The integer c ∈ {1, …, n+1} at which (1−c)_{n+1} vanishes, if any.
    pub fn removable_point(&self) -> Option<usize> {
        removable_point(self.c, self.n + 1)
    }

    fn check(&self) -> Result<()> {
        if !self.in_domain() {
            return Err(Error::Domain(format!(
                "Re(d-c+n) <= 0 (got {:.6})",
                self.excess()
            )));
        }
        if let Some(m) = is_nonpositive_integer(self.d) {
            return Err(Error::Domain(format!("d = -{m} is a pole of the series")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMode {
    Error,
    EpsilonLimit,
}

/// How to treat the removable singularities at c ∈ {1, …, n+1}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPolicy {
    pub mode: LimitMode,
    pub epsilon: f64,
}

impl Default for LimitPolicy {
    fn default() -> Self {
        Self {
            mode: LimitMode::Error,
            epsilon: 1e-5,
        }
    }
}

impl LimitPolicy {
    pub fn epsilon_limit(epsilon: f64) -> Self {
        Self {
            mode: LimitMode::EpsilonLimit,
            epsilon,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == LimitMode::EpsilonLimit && !(1e-8..=1e-3).contains(&self.epsilon) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must lie in [1e-8, 1e-3], got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

fn removable_point(c: Complex, len: usize) -> Option<usize> {
    if c.im.abs() > POLE_TOL {
        return None;
    }
    let r = c.re.round();
    if (c.re - r).abs() <= POLE_TOL && r >= 1.0 && r <= len as f64 {
        Some(r as usize)
    } else {
        None
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// D_k(n) = k!{ψ(n+1) − ψ(n+1−k)} = k! Σ_{j=n+1−k}^{n} 1/j.
pub fn d_coeff(n: usize, k: usize) -> Result<f64> {
    if k < 1 || k > n {
        return Err(Error::Range(format!("D_k(n) needs 1 <= k <= n, got k={k}, n={n}")));
    }
    let harmonic: f64 = (n + 1 - k..=n).map(|j| 1.0 / j as f64).sum();
    Ok(factorial(k) * harmonic)
}

/// D_k(n) in double-double.
pub(crate) fn d_coeff_dd(n: usize, k: usize) -> Dd {
    let harmonic = (n + 1 - k..=n).fold(Dd::ZERO, |acc, j| acc + Dd::new(1.0) / Dd::new(j as f64));
    Dd::new(factorial(k)) * harmonic
}

/// The closed form, evaluated without any gamma function:
/// Γ(d)/Γ(d−1) = d−1, Γ(d)/Γ(d−n−1+k) = (d−n−1+k)_{n+1−k}, and
/// (d−1)ψ(d−1) = (d−1)ψ(d) − 1. Pole positions of Γ(d−n−1+k) show up as an
/// exact zero factor in the Pochhammer product.
///
/// Everything runs in double-double: near c = 1, …, n+1 the bracket cancels
/// to many digits before the division by (1−c)_{n+1}.
fn theorem1_raw(c: Complex, d: Complex, n: usize) -> Result<(Complex, f64)> {
    let top = d - c + n as f64;
    digamma(top)?;
    digamma(d)?;
    let (cd, dd) = (CDd::from(c), CDd::from(d));
    let d_minus_1 = dd - CDd::ONE;
    let lead = CDd::sum(d, -c).pochhammer(n);
    let bracket = d_minus_1 * psi_diff(dd, CDd::sum(d, -c) + CDd::from(n as f64)) + CDd::ONE;
    let main = lead * bracket;
    let mut scale = main.norm().max(lead.norm());

    let mut finite = CDd::ZERO;
    let top_c = CDd::from(n as f64 + 1.0) - cd;
    for k in 1..=n {
        let mut gb = CDd::ONE;
        for j in 0..k {
            gb = gb * (top_c - CDd::from(j as f64)) / CDd::from(j as f64 + 1.0);
        }
        let shift = (n + 1 - k) as f64;
        let term = CDd::from(binomial(n, k)) * gb * CDd::real(d_coeff_dd(n, k)) * (dd - CDd::from(shift)).pochhammer(n + 1 - k);
        scale = scale.max(term.norm());
        finite = finite + term;
    }
    let pre = CDd::from(n as f64 + 1.0) / (CDd::ONE - cd).pochhammer(n + 1);
    let value = (pre * (main - finite)).to_complex();
    let err = 2.0 * EPS * value.norm() + 64.0 * (n as f64 + 4.0) * EPS * EPS * scale * pre.norm();
    Ok((value, err))
}

/// Closed-form value of ₃F₂(1,1,c; d,n+2; 1).
///
/// At c ∈ {1, …, n+1} the prefactor 1/(1−c)_{n+1} is singular while the
/// series is finite. With [`LimitMode::EpsilonLimit`] the value there is the
/// average of the closed form at c ± ε and `err_est` is their spread.
pub fn theorem1(params: &Theorem1Params, policy: &LimitPolicy) -> Result<EvalResult> {
    params.check()?;
    policy.validate()?;
    let Theorem1Params { c, d, n } = *params;
    match params.removable_point() {
        None => {
            let (value, err) = theorem1_raw(c, d, n)?;
            Ok(EvalResult {
                value,
                err_est: err,
                terms_used: n + 1,
                converged: true,
            })
        }
        Some(j) => match policy.mode {
            LimitMode::Error => Err(Error::RemovableSingularity(format!(
                "(1-c)_{{n+1}} = 0 at c = {j}; use the epsilon limit"
            ))),
            LimitMode::EpsilonLimit => {
                let eps = policy.epsilon;
                let (hi, _) = theorem1_raw(c + eps, d, n)?;
                let (lo, _) = theorem1_raw(c - eps, d, n)?;
                Ok(EvalResult {
                    value: (hi + lo) / 2.0,
                    err_est: (hi - lo).norm(),
                    terms_used: 2 * (n + 1),
                    converged: true,
                })
            }
        },
    }
}

fn special_case_raw(c: Complex, d: Complex, n: usize) -> Result<Complex> {
    let one = Complex::new(1.0, 0.0);
    match n {
        0 => Ok((d - 1.0) / (one - c) * (digamma(d - c)? - digamma(d - 1.0)?)),
        1 => {
            let psi = digamma(d - c + 1.0)? - digamma(d - 1.0)?;
            Ok(2.0 * (d - 1.0) * (d - c) / pochhammer(one - c, 2) * psi + 2.0 * (d - 1.0) / (c - 1.0))
        }
        _ => Err(Error::Range(format!("special cases cover n = 0, 1; got {n}"))),
    }
}

/// The explicit n = 0 and n = 1 evaluations:
///
/// ```text
/// n = 0:  (d−1)/(1−c) · {ψ(d−c) − ψ(d−1)}
/// n = 1:  2(d−1)(d−c)/(1−c)₂ · {ψ(d−c+1) − ψ(d−1)} + 2(d−1)/(c−1)
/// ```
pub fn special_case(params: &Theorem1Params, policy: &LimitPolicy) -> Result<Complex> {
    params.check()?;
    policy.validate()?;
    let Theorem1Params { c, d, n } = *params;
    if n > 1 {
        return Err(Error::Range(format!("special cases cover n = 0, 1; got {n}")));
    }
    match (params.removable_point(), policy.mode) {
        (None, _) => special_case_raw(c, d, n),
        (Some(j), LimitMode::Error) => Err(Error::RemovableSingularity(format!(
            "c = {j} is a limiting case for n = {n}"
        ))),
        (Some(_), LimitMode::EpsilonLimit) => {
            let eps = policy.epsilon;
            Ok((special_case_raw(c + eps, d, n)? + special_case_raw(c - eps, d, n)?) / 2.0)
        }
    }
}

/// Miller–Paris evaluation of ₃F₂(a, c, m; d, m+p; 1) for positive integers m, p:
///
/// ```text
/// (p)_m Σ_{k<p} (−)^k (m)_k C(p−1,k) (1−d)_{k+m} / ((1−a)_{k+m}(1−c)_{k+m})
/// + (m)_p Γ(d)Γ(d−a−c)/(Γ(d−a)Γ(d−c)) Σ_{k<m} (−)^k (p)_k C(m−1,k) (d−a−c)_{k+p} / ((1−a)_{k+p}(1−c)_{k+p})
/// ```
///
/// Γ(d−a−c)(d−a−c)_{k+p} is evaluated as Γ(d−a−c+k+p).
pub fn miller_paris(a: Complex, c: Complex, d: Complex, m: usize, p: usize) -> Result<Complex> {
    let one = Complex::new(1.0, 0.0);
    if m < 1 || p < 1 {
        return Err(Error::Range(format!("m and p must be positive, got m={m}, p={p}")));
    }
    if (a - 1.0).norm() <= POLE_TOL {
        return Err(Error::Domain("a = 1 is the limiting case handled by theorem1".into()));
    }
    let margin = (d + p as f64 - a - c).re - m as f64;
    if margin <= -1.0 {
        return Err(Error::Domain(format!("Re(d+p-a-c-m) <= -1 (got {margin:.6})")));
    }
    // (1−x)_j vanishes for some j ≤ m+p−1 when 1−x = −i with i ≤ m+p−2
    for (name, x) in [("a", a), ("c", c)] {
        if let Some(i) = is_nonpositive_integer(one - x) {
            if (i as usize) + 2 <= m + p {
                return Err(Error::Pole(format!("(1-{name}) Pochhammer vanishes at 1-{name} = -{i}")));
            }
        }
    }
    if let Some(i) = is_nonpositive_integer(d) {
        return Err(Error::Pole(format!("gamma(d) at d = -{i}")));
    }

    let mut first = Complex::new(0.0, 0.0);
    for k in 0..p {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let num = pochhammer(Complex::new(m as f64, 0.0), k) * binomial(p - 1, k) * pochhammer(one - d, k + m);
        let den = pochhammer(one - a, k + m) * pochhammer(one - c, k + m);
        first += sign * num / den;
    }
    first *= pochhammer(Complex::new(p as f64, 0.0), m);

    let mut second = Complex::new(0.0, 0.0);
    for k in 0..m {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let gam = gamma_ratio(&[d, d - a - c + (k + p) as f64], &[d - a, d - c])?;
        let num = pochhammer(Complex::new(p as f64, 0.0), k) * binomial(m - 1, k) * gam;
        let den = pochhammer(one - a, k + p) * pochhammer(one - c, k + p);
        second += sign * num / den;
    }
    second *= pochhammer(Complex::new(m as f64, 0.0), p);
    Ok(first + second)
}

/// Left side of Σ_{k<p} (−)^k C(p−1,k) (1−d)_{k+1}/(1−c)_{k+1}
/// = −Γ(d)Γ(d−c+p−1) / (Γ(d−1)Γ(d−c)(1−c)_p).
pub fn eval_identity_lhs(c: Complex, d: Complex, p: usize) -> Result<Complex> {
    let one = Complex::new(1.0, 0.0);
    if p < 1 {
        return Err(Error::Range("p must be positive".into()));
    }
    if let Some(j) = removable_point(c, p) {
        return Err(Error::Pole(format!("(1-c)_(k+1) vanishes at c = {j}")));
    }
    let mut acc = Complex::new(0.0, 0.0);
    for k in 0..p {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(p - 1, k) * pochhammer(one - d, k + 1) / pochhammer(one - c, k + 1);
    }
    Ok(acc)
}

/// Right side of the identity in [`eval_identity_lhs`], through gamma functions.
pub fn eval_identity_rhs(c: Complex, d: Complex, p: usize) -> Result<Complex> {
    let one = Complex::new(1.0, 0.0);
    if p < 1 {
        return Err(Error::Range("p must be positive".into()));
    }
    if let Some(j) = removable_point(c, p) {
        return Err(Error::Pole(format!("(1-c)_p vanishes at c = {j}")));
    }
    let ratio = gamma_ratio(&[d, d - c + (p - 1) as f64], &[d - 1.0, d - c])?;
    Ok(-ratio / pochhammer(one - c, p))
}

/// Limit a → 1 of the Miller–Paris form with m = 1, p = n+1, which is
/// ₃F₂(1,1,c; d,n+2; 1). Evaluated at a = 1−ε for the given ε values with
/// [`miller_paris_near_one`] and extrapolated polynomially to ε = 0.
pub fn miller_paris_limit(c: Complex, d: Complex, n: usize, epsilons: &[f64]) -> Result<Complex> {
    if epsilons.is_empty() {
        return Err(Error::InvalidConfig("need at least one epsilon".into()));
    }
    let values = epsilons
        .iter()
        .map(|&e| miller_paris_near_one(e, c, d, 1, n + 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(extrapolate_to_zero(epsilons, &values))
}

/// [`miller_paris`] at a = 1 − ε for small ε > 0.
///
/// Both finite sums carry 1/(ε)_{j} factors whose leading parts cancel, so
/// they are accumulated in double-double. The gamma factor is split as
/// Γ(d)Γ(d−c+k+p−1+ε)/(Γ(d−1+ε)Γ(d−c)) = (d−1)(d−c)_{k+p−1} · e^{δ} with δ
/// from [`ln_gamma_shift`], so only the O(ε) part of it is rounded in f64.
pub fn miller_paris_near_one(eps: f64, c: Complex, d: Complex, m: usize, p: usize) -> Result<Complex> {
    if !(eps > 0.0 && eps <= 1e-2) {
        return Err(Error::InvalidConfig(format!("epsilon must lie in (0, 1e-2], got {eps}")));
    }
    let one = Complex::new(1.0, 0.0);
    let y = d - 1.0;
    if is_nonpositive_integer(y).is_some() {
        // Γ(d−1+ε) sits next to a pole; the split below does not apply
        return miller_paris(Complex::new(1.0 - eps, 0.0), c, d, m, p);
    }
    // runs the same argument checks as the general form
    miller_paris(Complex::new(1.0 - eps, 0.0), c, d, m, p)?;

    let eps_dd = Dd::new(eps);
    let poch = |z: CDd, j: usize| (0..j).fold(CDd::ONE, |acc, i| acc * (z + CDd::from(i as f64)));
    let eps_poch = |j: usize| (0..j).fold(CDd::ONE, |acc, i| acc * CDd::real(Dd::new(i as f64) + eps_dd));
    let one_c = CDd::from(one) - CDd::from(c);
    let one_d = CDd::from(one) - CDd::from(d);

    let mut first = CDd::ZERO;
    for k in 0..p {
        let coef = poch(CDd::from(m as f64), k) * CDd::from(binomial(p - 1, k)) * poch(one_d, k + m);
        let term = coef / (eps_poch(k + m) * poch(one_c, k + m));
        first = if k % 2 == 0 { first + term } else { first - term };
    }
    first = first * poch(CDd::from(p as f64), m);

    let shift_y = ln_gamma_shift(y, eps)?;
    let mut second = CDd::ZERO;
    for k in 0..m {
        let x = d - c + (k + p - 1) as f64;
        let w = ln_gamma_shift(x, eps)? - shift_y;
        // e^w − 1 without cancellation
        let s = (w.im / 2.0).sin();
        let delta = Complex::new(w.re.exp_m1() * w.im.cos() - 2.0 * s * s, w.re.exp() * w.im.sin());
        let base = CDd::from(y) * poch(CDd::from(d) - CDd::from(c), k + p - 1);
        let gam = base + base * CDd::from(delta);
        let coef = poch(CDd::from(p as f64), k) * CDd::from(binomial(m - 1, k)) * gam;
        let term = coef / (eps_poch(k + p) * poch(one_c, k + p));
        second = if k % 2 == 0 { second + term } else { second - term };
    }
    second = second * poch(CDd::from(m as f64), p);
    Ok((first + second).to_complex())
}

/// Lagrange extrapolation of (x_i, y_i) to x = 0.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[Complex]) -> Complex {
    let mut acc = Complex::new(0.0, 0.0);
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        let mut w = 1.0;
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                w *= xj / (xj - xi);
            }
        }
        acc += w * yi;
    }
    acc
}

//! Direct summation of ₂F₁ and ₃F₂ series.
//!
//! Terms are generated by the ratio recurrence
//! t_{k+1} = t_k · Π(k+a_i) · x / (Π(k+b_j) · (k+1)).
//! At unit argument the terms decay algebraically like k^{−1−s} where
//! s = Σb − Σa is the parametric excess, and the remainder after a partial
//! sum is estimated from an asymptotic model of the term ratio.

use crate::special_fns::{gamma_ratio, is_nonpositive_integer, POLE_TOL};
use crate::{Complex, Error, Result};

const EPS: f64 = f64::EPSILON;
// Convergence checks at unit argument happen at doubling indices from here.
const FIRST_CHECK: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    /// Plain partial sums.
    None,
    /// Add the modelled remainder after the last term (unit argument only).
    AlgebraicCorrection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub tail_mode: TailMode,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 10_000_000,
            tail_mode: TailMode::AlgebraicCorrection,
        }
    }
}

impl SeriesConfig {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidConfig("max_terms must be >= 1".into()));
        }
        Ok(())
    }
}

/// Outcome of a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex,
    /// Absolute error estimate, never negative.
    pub err_est: f64,
    pub terms_used: usize,
    pub converged: bool,
}

/// Generalized hypergeometric ₃F₂(a1,a2,a3; b1,b2; x) by direct summation,
/// |x| ≤ 1.
pub fn sum_3f2(upper: [Complex; 3], lower: [Complex; 2], x: Complex, cfg: &SeriesConfig) -> Result<EvalResult> {
    sum_pfq(&upper, &lower, x, cfg)
}

/// Gauss ₂F₁(a,b; c; x) by direct summation, |x| ≤ 1.
pub fn sum_2f1(a: Complex, b: Complex, c: Complex, x: Complex, cfg: &SeriesConfig) -> Result<EvalResult> {
    sum_pfq(&[a, b], &[c], x, cfg)
}

/// Gauss's theorem ₂F₁(a,b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)).
pub fn gauss_sum_2f1_unit(a: Complex, b: Complex, c: Complex) -> Result<Complex> {
    let excess = c - a - b;
    if excess.re <= 0.0 {
        return Err(Error::Divergent(excess.re));
    }
    gamma_ratio(&[c, excess], &[c - a, c - b])
}

fn ratio(k: f64, upper: &[Complex], lower: &[Complex], x: Complex) -> Complex {
    let mut num = x;
    for &a in upper {
        num *= k + a;
    }
    let mut den = Complex::new(k + 1.0, 0.0);
    for &b in lower {
        den *= k + b;
    }
    num / den
}

enum Shape {
    Terminating(usize),
    Infinite,
}

fn classify(upper: &[Complex], lower: &[Complex]) -> Result<Shape> {
    let trunc = upper.iter().filter_map(|&a| is_nonpositive_integer(a)).min();
    let pole = lower.iter().filter_map(|&b| is_nonpositive_integer(b)).min();
    match (trunc, pole) {
        // the last nonzero term is t_N; a lower parameter −M blows up t_{M+1}
        (Some(n), Some(m)) if n <= m => Ok(Shape::Terminating(n as usize)),
        (Some(n), None) => Ok(Shape::Terminating(n as usize)),
        (_, Some(m)) => Err(Error::ParameterPole(format!(
            "lower parameter at -{m} before any truncation"
        ))),
        (None, None) => Ok(Shape::Infinite),
    }
}

fn sum_pfq(upper: &[Complex], lower: &[Complex], x: Complex, cfg: &SeriesConfig) -> Result<EvalResult> {
    cfg.validate()?;
    if upper.iter().chain(lower).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Domain("non-finite series parameter".into()));
    }
    if let Shape::Terminating(last) = classify(upper, lower)? {
        return Ok(terminating(upper, lower, x, last));
    }
    if x == Complex::new(0.0, 0.0) {
        return Ok(EvalResult {
            value: Complex::new(1.0, 0.0),
            err_est: 0.0,
            terms_used: 1,
            converged: true,
        });
    }
    let modulus = x.norm();
    if (x - 1.0).norm() <= POLE_TOL {
        unit_argument(upper, lower, cfg)
    } else if modulus < 1.0 {
        geometric(upper, lower, x, cfg)
    } else {
        Err(Error::Domain(format!(
            "series argument {x} outside the supported region |x| < 1 or x = 1"
        )))
    }
}

fn terminating(upper: &[Complex], lower: &[Complex], x: Complex, last: usize) -> EvalResult {
    let mut t = Complex::new(1.0, 0.0);
    let mut sum = t;
    let mut abs_sum = 1.0;
    for k in 0..last {
        t *= ratio(k as f64, upper, lower, x);
        sum += t;
        abs_sum += t.norm();
    }
    EvalResult {
        value: sum,
        err_est: 2.0 * (last + 1) as f64 * EPS * abs_sum,
        terms_used: last + 1,
        converged: true,
    }
}

fn geometric(upper: &[Complex], lower: &[Complex], x: Complex, cfg: &SeriesConfig) -> Result<EvalResult> {
    let modulus = x.norm();
    let mut t = Complex::new(1.0, 0.0);
    let mut sum = t;
    let mut abs_sum = 1.0;
    let mut err = f64::INFINITY;
    let mut k = 0usize;
    while k + 1 < cfg.max_terms {
        let r = ratio(k as f64, upper, lower, x);
        t *= r;
        sum += t;
        abs_sum += t.norm();
        k += 1;
        let rho = r.norm().max(modulus);
        if rho < 1.0 {
            // |remainder| ≤ |t_{k+1}| / (1 − ρ) once |R| settles below ρ
            let next = (t * ratio(k as f64, upper, lower, x)).norm();
            let floor = 4.0 * EPS * abs_sum;
            err = next / (1.0 - rho) + floor;
            if err <= cfg.rel_tol * sum.norm() || next / (1.0 - rho) <= floor {
                break;
            }
        }
    }
    Ok(EvalResult {
        value: sum,
        err_est: err,
        terms_used: k + 1,
        converged: err <= cfg.rel_tol * sum.norm(),
    })
}

/// Remainder model at x = 1: with R(k) = 1 − (1+s)/k + β/k² + O(k⁻³),
/// Σ_{j≥k} t_j = t_k · (k/s + e₀ + O(1/k)),  e₀ = β/(s(1+s)) − 1/s.
struct TailModel {
    excess: Complex,
    e0: Complex,
}

impl TailModel {
    fn new(upper: &[Complex], lower: &[Complex]) -> Self {
        let sum_a: Complex = upper.iter().sum();
        let sum_b: Complex = lower.iter().sum();
        let sq_a: Complex = upper.iter().map(|a| a * a).sum();
        let sq_b: Complex = lower.iter().map(|b| b * b).sum();
        let s = sum_b - sum_a;
        let beta = ((1.0 + s) * (1.0 + s) - (sq_a - sq_b - 1.0)) / 2.0;
        let e0 = beta / (s * (1.0 + s)) - 1.0 / s;
        Self { excess: s, e0 }
    }

    /// Estimated Σ_{j>k} t_j.
    fn remainder(&self, k: usize, t_k: Complex) -> Complex {
        t_k * (k as f64 / self.excess + self.e0 - 1.0)
    }
}

fn unit_argument(upper: &[Complex], lower: &[Complex], cfg: &SeriesConfig) -> Result<EvalResult> {
    let model = TailModel::new(upper, lower);
    let sigma = model.excess.re;
    if sigma <= 0.0 {
        return Err(Error::Divergent(sigma));
    }
    let widen = if sigma < 0.5 {
        if cfg.max_terms < 1_000_000 {
            return Err(Error::InvalidConfig(format!(
                "parametric excess {sigma} < 0.5 needs max_terms >= 1e6"
            )));
        }
        10.0
    } else {
        1.0
    };
    let correct = cfg.tail_mode == TailMode::AlgebraicCorrection;
    let one = Complex::new(1.0, 0.0);
    let scale = upper
        .iter()
        .chain(lower)
        .map(|z| z.norm())
        .fold(1.0_f64, f64::max);
    // the asymptotic regime starts once k dominates every parameter
    let mut next_check = FIRST_CHECK.max((4.0 * scale).ceil() as usize + FIRST_CHECK);

    let x = one;
    let mut t = one;
    let mut sum = Complex::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut prev: Option<Complex> = None;
    let mut estimate: Complex;
    let mut err: f64;
    let mut k = 0usize;
    loop {
        sum += t;
        abs_sum += t.norm();
        let at_cap = k + 1 >= cfg.max_terms;
        if k == next_check || at_cap {
            let floor = 4.0 * EPS * abs_sum;
            estimate = if correct { sum + model.remainder(k, t) } else { sum };
            err = if correct {
                match prev {
                    Some(p) => widen * ((estimate - p).norm() + floor),
                    None => widen * model.remainder(k, t).norm(),
                }
            } else {
                widen * (t * (k as f64 / model.excess)).norm() + floor
            };
            let done = err <= cfg.rel_tol * estimate.norm();
            // further terms cannot beat the accumulated rounding
            let stalled = prev.is_some() && err <= 2.0 * widen * floor;
            if done || stalled || at_cap {
                break;
            }
            prev = Some(estimate);
            next_check *= 2;
        }
        t *= ratio(k as f64, upper, lower, x);
        k += 1;
    }
    Ok(EvalResult {
        value: estimate,
        err_est: err,
        terms_used: k + 1,
        converged: err <= cfg.rel_tol * estimate.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fns::{digamma, MathConstants};

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn zero_upper_parameter_gives_one() {
        let r = sum_3f2([c(1.0), c(1.0), c(0.0)], [c(2.7), c(4.0)], c(1.0), &cfg()).unwrap();
        assert_eq!(r.value, c(1.0));
        assert_eq!(r.terms_used, 1);
        assert!(r.converged);
    }

    #[test]
    fn contracted_series_matches_gauss() {
        // ₃F₂(1,1,c; c,4; 1) = ₂F₁(1,1;4;1) = Γ(4)Γ(2)/Γ(3)² = 3/2
        let r = sum_3f2([c(1.0), c(1.0), c(2.5)], [c(2.5), c(4.0)], c(1.0), &cfg()).unwrap();
        assert!((r.value - 1.5).norm() < 1e-12, "{:?}", r);
        assert!(r.converged);
    }

    #[test]
    fn theorem1_first_case_value() {
        // ₃F₂(1,1,½; 3,2; 1) = 20/3 − 8 ln 2, from ψ(5/2) − ψ(2) by hand
        let expected = 20.0 / 3.0 - 8.0 * MathConstants::LOG2;
        let r = sum_3f2([c(1.0), c(1.0), c(0.5)], [c(3.0), c(2.0)], c(1.0), &cfg()).unwrap();
        assert!((r.value - expected).norm() < 1e-12, "{:?}", r);
        let psi = (digamma(c(2.5)).unwrap() - digamma(c(2.0)).unwrap()) * 4.0;
        assert!((psi - expected).norm() < 1e-13);
    }

    #[test]
    fn two_f_one_examples() {
        let chi = c(0.25);
        let r = sum_2f1(c(-1.0), c(-1.5), c(1.0), chi, &cfg()).unwrap();
        assert!((r.value - 1.375).norm() < 1e-15);
        let r = sum_2f1(c(1.0), c(1.0), c(3.0), c(1.0), &cfg()).unwrap();
        assert!((r.value - 2.0).norm() < 1e-12);
        let r = sum_2f1(Complex::new(0.3, 1.0), c(2.0), c(-0.5), c(0.0), &cfg()).unwrap();
        assert_eq!(r.value, c(1.0));
    }

    #[test]
    fn geometric_branch() {
        // ₂F₁(1,1;2;x) = −ln(1−x)/x
        for &x in &[0.3, -0.9, 0.95] {
            let r = sum_2f1(c(1.0), c(1.0), c(2.0), c(x), &cfg()).unwrap();
            let exact = -(1.0 - x).ln() / x;
            assert!((r.value.re - exact).abs() < 1e-11, "x={x}: {:?}", r);
            assert!(r.converged);
        }
        let z = Complex::new(0.3, 0.4);
        let r = sum_2f1(c(1.0), c(1.0), c(2.0), z, &cfg()).unwrap();
        let exact = -(1.0 - z).ln() / z;
        assert!((r.value - exact).norm() < 1e-12);
    }

    #[test]
    fn gauss_theorem_examples() {
        assert!((gauss_sum_2f1_unit(c(1.0), c(1.0), c(3.0)).unwrap() - 2.0).norm() < 1e-13);
        let v = gauss_sum_2f1_unit(c(0.0), Complex::new(0.4, 1.1), c(3.3)).unwrap();
        assert!((v - 1.0).norm() < 1e-13);
        // F_2(½, 1) with ν = 3/2
        let (m, mu, nu) = (2.0, 0.5, 1.5);
        let closed = gauss_sum_2f1_unit(c(-m), c(-m - mu), c(1.0 + nu)).unwrap();
        let ratio = gamma_ratio(
            &[c(1.0 + nu), c(1.0 + mu + nu + 2.0 * m)],
            &[c(1.0 + nu + m), c(1.0 + mu + nu + m)],
        )
        .unwrap();
        let series = sum_2f1(c(-m), c(-m - mu), c(1.0 + nu), c(1.0), &cfg()).unwrap();
        assert!((closed - ratio).norm() < 1e-13 * ratio.norm());
        assert!((closed - series.value).norm() < 1e-13 * ratio.norm());
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            sum_2f1(c(1.0), c(1.0), c(2.0), c(1.0), &cfg()),
            Err(Error::Divergent(_))
        ));
        assert!(matches!(
            sum_2f1(c(1.0), c(1.0), c(-2.0), c(0.5), &cfg()),
            Err(Error::ParameterPole(_))
        ));
        // truncation at index 2 precedes the pole at index 4
        assert!(sum_2f1(c(-2.0), c(1.0), c(-3.0), c(1.0), &cfg()).is_ok());
        // tie resolves to terminating
        assert!(sum_2f1(c(-3.0), c(1.0), c(-3.0), c(0.5), &cfg()).is_ok());
        assert!(matches!(
            sum_2f1(c(1.0), c(1.0), c(3.0), c(1.5), &cfg()),
            Err(Error::Domain(_))
        ));
        let small = SeriesConfig {
            max_terms: 1000,
            ..cfg()
        };
        assert!(matches!(
            sum_2f1(c(1.0), c(1.0), c(2.3), c(1.0), &small),
            Err(Error::InvalidConfig(_))
        ));
        assert!(SeriesConfig::with_rel_tol(0.0).validate().is_err());
    }

    #[test]
    fn max_terms_cap_reports_non_convergence() {
        let cap = SeriesConfig {
            max_terms: 40,
            rel_tol: 1e-15,
            tail_mode: TailMode::None,
        };
        let r = sum_2f1(c(1.0), c(1.0), c(3.0), c(1.0), &cap).unwrap();
        assert!(!r.converged);
        assert_eq!(r.terms_used, 40);
        assert!(r.err_est > 0.0);
    }

    #[test]
    fn tail_model_is_exact_for_telescoping_terms() {
        let m = TailModel::new(&[c(1.0), c(1.0)], &[c(3.0)]);
        for k in [5usize, 50, 500] {
            let kf = k as f64;
            let t_k = 2.0 / ((kf + 1.0) * (kf + 2.0));
            let exact = 2.0 / (kf + 2.0);
            assert!((m.remainder(k, c(t_k)).re - exact).abs() < 1e-15);
        }
    }
}

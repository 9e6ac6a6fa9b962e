use std::f64::consts::PI;

use hypsum::bessel_sums::{
    a_coeff, b_coeff, delta_n, delta_n_at_1_closed, delta_n_with, eq24_3f2, expansion_equal, expansion_unequal,
    expansion_unequal_with, f_poly, psi_removal_identity, s_direct, upsilon_hat, BesselSumParams, DeltaSource,
    Hyp3f2Source,
};
use hypsum::closed_form::{theorem1, LimitPolicy, Theorem1Params};
use hypsum::hypergeom::{sum_3f2, SeriesConfig};
use hypsum::special_fns::{ln_gamma_real, zeta};
use hypsum::Complex;
use proptest::prelude::*;

fn p(mu: f64, nu: f64, a: f64, b: f64, n: usize) -> BesselSumParams {
    BesselSumParams::new(mu, nu, a, b, n).unwrap()
}

fn cfg() -> SeriesConfig {
    SeriesConfig::default()
}

fn r(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

#[test]
fn equal_expansion_tracks_direct_sum() {
    for &(mu, nu, n) in &[(0.0, 0.0, 0), (0.5, 0.5, 1), (1.0, 0.0, 2)] {
        for a in [0.5, 1.0, 2.0, 3.0] {
            let q = p(mu, nu, a, a, n);
            let e = expansion_equal(&q, &cfg()).unwrap().value;
            let d = s_direct(&q, 100_000).unwrap();
            assert!((e - d.value).abs() < 1e-6, "{q:?}: {e} vs {}", d.value);
        }
    }
}

#[test]
fn unequal_expansion_tracks_direct_sum() {
    for q in [p(0.0, 0.0, 2.0, 1.0, 0), p(0.5, 0.5, 2.0, 1.0, 1), p(1.5, 0.5, 2.5, 0.7, 1)] {
        let e = expansion_unequal(&q, &cfg()).unwrap().value;
        let d = s_direct(&q, 100_000).unwrap().value;
        assert!((e - d).abs() < 1e-6, "{q:?}: {e} vs {d}");
    }
}

#[test]
fn unequal_approaches_equal() {
    for &(mu, nu, n, a) in &[(0.0, 0.0, 0, 1.0), (0.5, 0.5, 1, 2.0), (1.0, 0.0, 2, 3.0)] {
        let eq = expansion_equal(&p(mu, nu, a, a, n), &cfg()).unwrap().value;
        let un = expansion_unequal(&p(mu, nu, a, a * (1.0 - 1e-4), n), &cfg()).unwrap().value;
        assert!((eq - un).abs() < 1e-4, "{eq} vs {un}");
        let same = expansion_unequal_with(&p(mu, nu, a, a, n), &cfg(), DeltaSource::ClosedAtUnity)
            .unwrap()
            .value;
        assert!((eq - same).abs() < 1e-9, "{eq} vs {same}");
    }
}

#[test]
fn boundary_arguments_are_accepted() {
    let q = p(0.0, 0.0, PI, PI, 1);
    let r = expansion_equal(&q, &cfg()).unwrap();
    assert!(r.value.is_finite() && r.truncation_est.is_finite());
    let q = p(0.5, 0.5, 4.0, 2.0 * PI - 4.0, 1);
    assert!(q.near_boundary());
    assert!(expansion_unequal(&q, &cfg()).is_ok());
}

#[test]
fn coefficient_identities() {
    // μ = ν = 0, m = 0: all gamma factors are 1
    for n in 1..5 {
        let q = p(0.0, 0.0, 1.0, 1.0, n);
        assert!((a_coeff(&q, 0).unwrap() - zeta((2 * n + 1) as f64).unwrap()).abs() < 1e-14);
    }
    let q = p(0.7, 1.3, 2.0, 1.0, 2);
    for chi in [0.1, 0.5, 1.0] {
        assert_eq!(f_poly(&q, 0, chi).unwrap(), 1.0);
    }
    // n = 0 special term of the unequal expansion is Υ̂_0 − ½Δ_0(χ) scaled by 1/(Γ(1+ν)Γ(1+μ))
    let q = p(0.8, 0.4, 2.0, 1.2, 0);
    let chi = q.chi();
    let special = (upsilon_hat(&q).unwrap() - 0.5 * delta_n(&q, chi, &cfg()).unwrap().value.re)
        / (ln_gamma_real(1.4).unwrap() + ln_gamma_real(1.8).unwrap()).exp();
    let mut rest = 0.0;
    for m in 1..200 {
        let t = b_coeff(&q, m, chi).unwrap() * (q.a / 2.0).powi(2 * m as i32);
        rest += t;
        if t.abs() < 1e-18 {
            break;
        }
    }
    rest /= ln_gamma_real(1.4).unwrap().exp();
    let full = expansion_unequal(&q, &cfg()).unwrap().value;
    assert!((full - special - rest).abs() < 1e-12);
}

#[test]
fn delta_with_zero_mu_keeps_finite_part() {
    // μ = 0 removes only the ₃F₂ term
    let q = p(0.0, 0.5, 1.0, 1.0, 2);
    let v = delta_n(&q, 0.6, &cfg()).unwrap().value.re;
    assert!(v > 0.0);
    let q0 = p(0.0, 0.5, 1.0, 1.0, 0);
    assert_eq!(delta_n(&q0, 0.6, &cfg()).unwrap().value.re, 0.0);
}

fn mu_strategy() -> impl Strategy<Value = f64> {
    (0.0f64..3.0).prop_filter("mu off integers", |m| (m - m.round()).abs() >= 0.05)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn three_way_unit_argument(mu in mu_strategy(), nu in 0.0f64..3.0, n in 0usize..6) {
        let q = p(mu, nu, 1.0, 1.0, n);
        let e = eq24_3f2(&q).unwrap();
        let t = theorem1(&Theorem1Params::new(r(1.0 - mu), r(n as f64 + nu + 2.0), n), &LimitPolicy::default())
            .unwrap()
            .value
            .re;
        let s = sum_3f2([r(1.0), r(1.0), r(1.0 - mu)], [r(n as f64 + nu + 2.0), r(n as f64 + 2.0)], r(1.0), &cfg())
            .unwrap()
            .value
            .re;
        prop_assert!((e - t).abs() <= 1e-10 * t.abs(), "eq24 {e} vs theorem1 {t}");
        prop_assert!((e - s).abs() <= 1e-8 * s.abs() && (t - s).abs() <= 1e-8 * s.abs(), "{e} {t} vs series {s}");
    }

    #[test]
    fn delta_at_unity_pairwise(mu in mu_strategy(), nu in 0.0f64..3.0, n in 0usize..6) {
        let q = p(mu, nu, 1.0, 1.0, n);
        let closed = delta_n_at_1_closed(&q).unwrap();
        let series = delta_n_with(&q, 1.0, &cfg(), Hyp3f2Source::Series).unwrap().value.re;
        let via = delta_n_with(&q, 1.0, &cfg(), Hyp3f2Source::Theorem1).unwrap().value.re;
        for (x, y) in [(closed, series), (closed, via), (series, via)] {
            prop_assert!((x - y).abs() <= 1e-9 * x.abs(), "{x} vs {y}");
        }
    }

    #[test]
    fn a_b_termwise(mu in 0.0f64..3.0, nu in 0.0f64..3.0, n in 0usize..6) {
        let q = p(mu, nu, 1.0, 1.0, n);
        let g = ln_gamma_real(1.0 + nu).unwrap().exp();
        for m in (0..=2 * n + 3).filter(|&m| m != n) {
            let a = a_coeff(&q, m).unwrap();
            let b = b_coeff(&q, m, 1.0).unwrap() / g;
            prop_assert!((a - b).abs() <= 1e-11 * a.abs(), "m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn psi_removal_holds(mu in mu_strategy(), nu in 0.0f64..3.0, n in 0usize..6) {
        let (l, rr) = psi_removal_identity(&p(mu, nu, 1.0, 1.0, n)).unwrap();
        prop_assert!((l - rr).norm() <= 1e-10 * rr.norm().max(1e-300) || (l - rr).norm() < 1e-14);
    }
}

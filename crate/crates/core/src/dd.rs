//! Double-double arithmetic (about 32 significant digits) for sums whose
//! terms cancel to many digits.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub(crate) fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Exact sum of two doubles.
    pub(crate) fn sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::new(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CDd {
    re: Dd,
    im: Dd,
}

impl CDd {
    pub(crate) const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };
    pub(crate) const ONE: CDd = CDd {
        re: Dd { hi: 1.0, lo: 0.0 },
        im: Dd::ZERO,
    };

    pub(crate) fn real(x: Dd) -> Self {
        CDd { re: x, im: Dd::ZERO }
    }

    pub(crate) fn to_complex(self) -> Complex {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn norm(self) -> f64 {
        self.to_complex().norm()
    }

    /// Exact a + b for double inputs.
    pub(crate) fn sum(a: Complex, b: Complex) -> Self {
        CDd {
            re: Dd::sum(a.re, b.re),
            im: Dd::sum(a.im, b.im),
        }
    }

    /// (z)_k = z(z+1)…(z+k−1).
    pub(crate) fn pochhammer(self, k: usize) -> CDd {
        (0..k).fold(CDd::ONE, |acc, j| acc * (self + CDd::from(j as f64)))
    }
}

// B_{2j}/(2j) as exact numerator / denominator pairs, j = 1..10
const BERNOULLI_OVER_INDEX: [(f64, f64); 10] = [
    (1.0, 12.0),
    (-1.0, 120.0),
    (1.0, 252.0),
    (-1.0, 240.0),
    (1.0, 132.0),
    (-691.0, 32760.0),
    (1.0, 12.0),
    (-3617.0, 8160.0),
    (43867.0, 14364.0),
    (-174611.0, 6600.0),
];

/// ψ(y) − ψ(x) to double-double accuracy. Neither argument may sit on a pole;
/// the caller checks that.
pub(crate) fn psi_diff(x: CDd, y: CDd) -> CDd {
    let s = y - x;
    let reach = 200.0f64.max(64.0 * s.norm());
    let (mut xs, mut ys) = (x, y);
    let mut acc = CDd::ZERO;
    while xs.norm() < reach || ys.norm() < reach || xs.re.hi < 0.0 || ys.re.hi < 0.0 {
        acc = acc + CDd::ONE / xs - CDd::ONE / ys;
        xs = xs + CDd::ONE;
        ys = ys + CDd::ONE;
    }
    // ln(y/x) = ln1p(u), |u| <= 1/64
    let u = s / xs;
    let mut power = u;
    let mut log = CDd::ZERO;
    for k in 1..=24 {
        let t = power / CDd::from(k as f64);
        log = if k % 2 == 1 { log + t } else { log - t };
        power = power * u;
    }
    let half = CDd::from(0.5);
    acc = acc + log - (half / ys - half / xs);
    let (ix2, iy2) = (CDd::ONE / (xs * xs), CDd::ONE / (ys * ys));
    let (mut px, mut py) = (ix2, iy2);
    for (num, den) in BERNOULLI_OVER_INDEX {
        let b = CDd::from(num) / CDd::from(den);
        acc = acc - b * (py - px);
        px = px * ix2;
        py = py * iy2;
    }
    acc
}

impl From<Complex> for CDd {
    fn from(z: Complex) -> Self {
        CDd {
            re: Dd::new(z.re),
            im: Dd::new(z.im),
        }
    }
}

impl From<f64> for CDd {
    fn from(x: f64) -> Self {
        CDd::real(Dd::new(x))
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, o: CDd) -> CDd {
        CDd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, o: CDd) -> CDd {
        CDd {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Neg for CDd {
    type Output = CDd;
    fn neg(self) -> CDd {
        CDd { re: -self.re, im: -self.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for CDd {
    type Output = CDd;
    fn div(self, o: CDd) -> CDd {
        let den = o.re * o.re + o.im * o.im;
        let num = self * CDd { re: o.re, im: -o.im };
        CDd {
            re: num.re / den,
            im: num.im / den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_digits() {
        // (1 + 2^-60) − 1 is lost in f64 but kept here
        let tiny = 2f64.powi(-60);
        let x = Dd::new(1.0) + Dd::new(tiny) - Dd::new(1.0);
        assert_eq!(x.to_f64(), tiny);
        let third = Dd::new(1.0) / Dd::new(3.0);
        let back = third * Dd::new(3.0) - Dd::new(1.0);
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn complex_ops() {
        let a = CDd::from(Complex::new(1.5, -2.0));
        let b = CDd::from(Complex::new(-0.25, 3.0));
        let q = (a / b * b - a).to_complex();
        assert!(q.norm() < 1e-30);
        let p = (a * b).to_complex();
        assert_eq!(p, Complex::new(1.5, -2.0) * Complex::new(-0.25, 3.0));
    }

    #[test]
    fn psi_difference() {
        // ψ(x+3) − ψ(x) = 1/x + 1/(x+1) + 1/(x+2)
        let x = Complex::new(0.25, -0.75);
        let d = psi_diff(CDd::from(x), CDd::from(x) + CDd::from(3.0));
        let exact = CDd::ONE / CDd::from(x) + CDd::ONE / CDd::from(x + 1.0) + CDd::ONE / CDd::from(x + 2.0);
        assert!((d - exact).norm() < 1e-30, "{:?}", (d - exact));
        // ψ(1) − ψ(1/2) = 2 ln 2
        let d = psi_diff(CDd::from(0.5), CDd::ONE);
        let ln2 = Dd { hi: std::f64::consts::LN_2, lo: 2.319_046_813_846_299_6e-17 };
        assert!((d.re - (ln2 + ln2)).to_f64().abs() < 1e-30 && d.im.to_f64() == 0.0);
    }
}

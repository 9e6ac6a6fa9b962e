use crate::Complex;

/// Rising factorial (a)_k = a(a+1)…(a+k−1), by direct product.
pub fn pochhammer(a: Complex, k: usize) -> Complex {
    let mut p = Complex::new(1.0, 0.0);
    for j in 0..k {
        p *= a + j as f64;
    }
    p
}

/// Real rising factorial.
pub fn pochhammer_real(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |p, j| p * (a + j as f64))
}

/// Generalized binomial coefficient x(x−1)…(x−k+1)/k!.
///
/// For a non-negative integer x < k the product contains an exact zero factor.
pub fn gen_binomial(x: Complex, k: usize) -> Complex {
    let mut p = Complex::new(1.0, 0.0);
    for j in 0..k {
        p = p * (x - j as f64) / (j + 1) as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(Complex::new(-2.5, 7.0), 0), c(1.0));
        assert_eq!(pochhammer(c(3.0), 4), c(360.0));
        assert_eq!(pochhammer(c(1.0), 6), c(720.0));
        assert_eq!(pochhammer(c(-3.0), 5), c(0.0));
        assert_eq!(pochhammer_real(0.5, 3), 0.5 * 1.5 * 2.5);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(gen_binomial(c(4.2), 0), c(1.0));
        assert_eq!(gen_binomial(c(5.0), 2), c(10.0));
        assert_eq!(gen_binomial(c(2.5), 2), c(1.875));
        assert_eq!(gen_binomial(c(3.0), 5), c(0.0));
        assert_eq!(gen_binomial(c(0.0), 1), c(0.0));
        assert_eq!(gen_binomial(c(10.0), 3), c(120.0));
    }
}

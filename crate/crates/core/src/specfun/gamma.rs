//! Log-gamma, digamma, reciprocal gamma and the Barnes G-function.

use num_complex::Complex64;

use super::consts::{BERNOULLI_EVEN, EULER_GAMMA, LN_2PI, LN_SQRT_2PI, ZETA, ZETA_PRIME_MINUS_ONE};
use crate::error::{Error, Result};

const SHIFT_TO: f64 = 10.0;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn stirling_tail(w: Complex64) -> Complex64 {
    let w2 = (w * w).inv();
    let mut p = w.inv();
    let mut s = Complex64::new(0.0, 0.0);
    for k in 1..=10 {
        let kk = k as f64;
        s += p * (BERNOULLI_EVEN[k] / (2.0 * kk * (2.0 * kk - 1.0)));
        p *= w2;
    }
    s
}

/// Principal branch of log Gamma, analytic off the non-positive real axis.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("log_gamma of a non-finite argument"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("log_gamma at {}", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    let lg = (w - 0.5) * w.ln() - w + LN_SQRT_2PI + stirling_tail(w);
    Ok(lg - shift)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// Reciprocal gamma function, entire (zero at the non-positive integers).
pub fn rgamma(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut prod = Complex64::new(1.0, 0.0);
    while w.re < 0.5 {
        prod *= w;
        w += 1.0;
    }
    if prod == Complex64::new(0.0, 0.0) {
        return prod;
    }
    // w.re >= 0.5 so log_gamma cannot fail here
    prod * (-log_gamma(w).unwrap_or_default()).exp()
}

pub fn digamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("digamma of a non-finite argument"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at {}", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.inv();
        w += 1.0;
    }
    let w2 = (w * w).inv();
    let mut p = w2;
    let mut s = w.ln() - 0.5 * w.inv();
    for k in 1..=10 {
        s -= p * (BERNOULLI_EVEN[k] / (2.0 * k as f64));
        p *= w2;
    }
    Ok(s - shift)
}

/// `rgamma(a) * digamma(a)`, finite at a = 0 where it equals -1.
pub fn rgamma_digamma(a: Complex64) -> Complex64 {
    let a1 = a + 1.0;
    let rg1 = rgamma(a1);
    let psi1 = digamma(a1).unwrap_or_default();
    a * psi1 * rg1 - rg1
}

fn zeta_int(k: usize) -> f64 {
    if k < ZETA.len() {
        ZETA[k]
    } else {
        1.0 + 2f64.powi(-(k as i32)) + 3f64.powi(-(k as i32))
    }
}

/// Maclaurin series of log G(1 + w), used for |w| <= 1/2.
fn log_barnes_g_taylor(w: Complex64) -> Complex64 {
    let mut s = w * (0.5 * LN_2PI - 0.5) - w * w * (0.5 * (1.0 + EULER_GAMMA));
    let mut p = w * w * w;
    for k in 2..=64 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += p * (sign * zeta_int(k) / (k as f64 + 1.0));
        p *= w;
    }
    s
}

/// Large-argument expansion of log G(1 + v).
fn log_barnes_g_asymptotic(v: Complex64) -> Complex64 {
    let lv = v.ln();
    let v2 = v * v;
    let mut s = 0.5 * v2 * lv - 0.75 * v2 + 0.5 * LN_2PI * v - lv / 12.0 + ZETA_PRIME_MINUS_ONE;
    let iv2 = v2.inv();
    let mut p = iv2;
    for k in 1..=9 {
        let kk = k as f64;
        s += p * (BERNOULLI_EVEN[k + 1] / (4.0 * kk * (kk + 1.0)));
        p *= iv2;
    }
    s
}

/// log G(z) through the recurrence G(z + 1) = Gamma(z) G(z) and the large-argument expansion.
pub(crate) fn log_barnes_g_recurrence(z: Complex64) -> Result<Complex64> {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while (w - 1.0).norm() < 16.0 {
        shift += log_gamma(w)?;
        w += 1.0;
    }
    Ok(log_barnes_g_asymptotic(w - 1.0) - shift)
}

/// Logarithm of the Barnes G-function on Re z > 0, real on the positive axis.
pub fn log_barnes_g(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() || z.re <= 0.0 {
        return Err(Error::domain(format!(
            "log_barnes_g is supported on Re z > 0, got {z}"
        )));
    }
    let w = z - 1.0;
    if w.norm() <= 0.5 {
        return Ok(log_barnes_g_taylor(w));
    }
    log_barnes_g_recurrence(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma(c(0.5, 0.0)).unwrap();
        assert!((g.re - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_at_integers() {
        let lg = log_gamma(c(11.0, 0.0)).unwrap();
        assert!((lg.re - 3628800f64.ln()).abs() < 1e-13);
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn digamma_one_is_minus_euler() {
        let d = digamma(c(1.0, 0.0)).unwrap();
        assert!((d.re + EULER_GAMMA).abs() < 1e-15);
    }

    #[test]
    fn rgamma_vanishes_at_poles() {
        assert_eq!(rgamma(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
        assert!((rgamma_digamma(c(0.0, 0.0)) + 1.0).norm() < 1e-15);
    }

    #[test]
    fn barnes_g_small_integers() {
        // G(1) = G(2) = 1, G(3) = 1, G(4) = 2
        assert!(log_barnes_g(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_barnes_g(c(2.0, 0.0)).unwrap().norm() < 1e-13);
        assert!((log_barnes_g(c(4.0, 0.0)).unwrap().re - 2f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn barnes_routes_agree_near_one() {
        for &(re, im) in &[(1.3, 0.2), (0.7, -0.3), (1.0, 0.45), (1.2, -0.4)] {
            let z = c(re, im);
            let a = log_barnes_g_taylor(z - 1.0);
            let b = log_barnes_g_recurrence(z).unwrap();
            assert!((a - b).norm() < 1e-12, "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn barnes_domain() {
        assert!(matches!(log_barnes_g(c(-0.5, 0.0)), Err(Error::Domain(_))));
    }
}

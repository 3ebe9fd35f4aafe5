use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type C = Complex64;

/// 2×2 complex matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2(pub [[C; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C, b: C, c: C, d: C) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(
            C::new(a, 0.0),
            C::new(b, 0.0),
            C::new(c, 0.0),
            C::new(d, 0.0),
        )
    }

    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(a: C, d: C) -> Self {
        let z = C::new(0.0, 0.0);
        Mat2::new(a, z, z, d)
    }

    pub fn from_columns(c1: [C; 2], c2: [C; 2]) -> Self {
        Mat2::new(c1[0], c2[0], c1[1], c2[1])
    }

    pub fn at(&self, i: usize, k: usize) -> C {
        self.0[i][k]
    }

    pub fn det(&self) -> C {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn inverse(&self) -> Self {
        let d = self.det();
        let m = &self.0;
        Mat2::new(m[1][1] / d, -m[0][1] / d, -m[1][0] / d, m[0][0] / d)
    }

    pub fn scale(&self, s: C) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    /// Max row sum of absolute values.
    pub fn norm_inf(&self) -> f64 {
        let m = &self.0;
        (m[0][0].norm() + m[0][1].norm()).max(m[1][0].norm() + m[1][1].norm())
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let mut out = self;
        for i in 0..2 {
            for k in 0..2 {
                out.0[i][k] += o.0[i][k];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(C::new(-1.0, 0.0))
    }
}

/// σ₁.
pub fn sigma1() -> Mat2 {
    Mat2::real(0.0, 1.0, 1.0, 0.0)
}

/// σ₃.
pub fn sigma3() -> Mat2 {
    Mat2::real(1.0, 0.0, 0.0, -1.0)
}

/// σ₊.
pub fn sigma_plus() -> Mat2 {
    Mat2::real(0.0, 1.0, 0.0, 0.0)
}

/// M = (I + iσ₁)/√2.
pub fn m_const() -> Mat2 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Mat2::new(
        C::new(s, 0.0),
        C::new(0.0, s),
        C::new(0.0, s),
        C::new(s, 0.0),
    )
}

/// e^{w σ₃}.
pub fn exp_sigma3(w: C) -> Mat2 {
    Mat2::diag(w.exp(), (-w).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let a = Mat2::new(
            C::new(1.0, 2.0),
            C::new(0.5, 0.0),
            C::new(-1.0, 0.3),
            C::new(2.0, -1.0),
        );
        let p = a * a.inverse();
        assert!((p - Mat2::identity()).max_abs() < 1e-15);
        assert!((m_const().det() - 1.0).norm() < 1e-15);
        let s = sigma3() * sigma1();
        assert!((s + sigma1() * sigma3()).max_abs() == 0.0);
        assert_eq!(sigma_plus() * sigma_plus(), Mat2::real(0.0, 0.0, 0.0, 0.0));
    }
}

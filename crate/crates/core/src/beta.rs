use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Purely imaginary exponent β = i·im, linked to a weight ratio by
/// e^{−2πiβ} = e^{2π·im}.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Beta {
    pub im: f64,
}

impl Beta {
    pub const ZERO: Beta = Beta { im: 0.0 };

    pub fn imag(im: f64) -> Self {
        Beta { im }
    }

    pub fn value(self) -> Complex64 {
        Complex64::new(0.0, self.im)
    }

    /// The ratio e^{−2πiβ}.
    pub fn ratio(self) -> f64 {
        (2.0 * PI * self.im).exp()
    }

    /// β with e^{−2πiβ} = ratio.
    pub fn from_ratio(ratio: f64) -> Result<Self> {
        if !(ratio > 0.0) || !ratio.is_finite() {
            return Err(Error::invalid(format!(
                "weight ratio must be positive and finite, got {ratio}"
            )));
        }
        Ok(Beta {
            im: ratio.ln() / (2.0 * PI),
        })
    }

    pub fn is_zero(self) -> bool {
        self.im == 0.0
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}i", self.im)
    }
}

/// β_j from the weights, s_{m+1} := 1. Entry 0 is `None` when s₁ = 0.
pub fn beta_from_s(s: &[f64]) -> Result<Vec<Option<Beta>>> {
    let m = s.len();
    let mut out = Vec::with_capacity(m);
    for j in 0..m {
        if j > 0 && !(s[j] > 0.0) {
            return Err(Error::invalid(format!(
                "s_{} must be positive, got {}",
                j + 1,
                s[j]
            )));
        }
        if j == 0 && s[0] == 0.0 {
            out.push(None);
            continue;
        }
        let next = if j + 1 < m { s[j + 1] } else { 1.0 };
        out.push(Some(Beta::from_ratio(s[j] / next)?));
    }
    Ok(out)
}

/// Inverse of [`beta_from_s`]; a leading `None` gives s₁ = 0.
pub fn s_from_beta(beta: &[Option<Beta>]) -> Result<Vec<f64>> {
    let m = beta.len();
    let mut s = vec![0.0; m];
    let mut acc = 1.0;
    for j in (0..m).rev() {
        match beta[j] {
            Some(b) => {
                acc *= b.ratio();
                s[j] = acc;
            }
            None if j == 0 => s[0] = 0.0,
            None => {
                return Err(Error::invalid(format!(
                    "β_{} may only be omitted for j = 1",
                    j + 1
                )))
            }
        }
    }
    Ok(s)
}

use serde::{Deserialize, Serialize};

use crate::beta::{beta_from_s, Beta};
use crate::error::{Error, Result};

/// Lowest supported endpoint.
pub const MIN_X: f64 = -60.0;
/// Highest supported endpoint; keeps x₁ + T inside the Airy disk.
pub const MAX_X: f64 = 30.0;

/// Endpoints x₁ > … > x_m and weights s_j: the weight (1 − s_j) sits on
/// (x_j, x_{j−1}) with x₀ = +∞.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapConfig {
    x: Vec<f64>,
    s: Vec<f64>,
}

impl GapConfig {
    pub fn new(x: Vec<f64>, s: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::invalid("at least one endpoint is required"));
        }
        if x.len() != s.len() {
            return Err(Error::invalid(format!(
                "x has {} entries but s has {}",
                x.len(),
                s.len()
            )));
        }
        for (j, &v) in x.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::invalid(format!("x_{} is not finite", j + 1)));
            }
            if !(MIN_X..=MAX_X).contains(&v) {
                return Err(Error::domain(format!(
                    "x_{} = {v} outside the supported range [{MIN_X}, {MAX_X}]",
                    j + 1
                )));
            }
        }
        if x.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::invalid("endpoints must be strictly decreasing"));
        }
        for (j, &v) in s.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::invalid(format!(
                    "s_{} must be finite and non-negative, got {v}",
                    j + 1
                )));
            }
            if j > 0 && v == 0.0 {
                return Err(Error::invalid(format!(
                    "s_{} must be positive (only s_1 may vanish)",
                    j + 1
                )));
            }
        }
        Ok(GapConfig { x, s })
    }

    pub fn single(x: f64, s: f64) -> Result<Self> {
        GapConfig::new(vec![x], vec![s])
    }

    /// Config from β₂..β_m (and β₁ unless `None`, meaning s₁ = 0).
    pub fn from_beta(x: Vec<f64>, beta: &[Option<Beta>]) -> Result<Self> {
        let s = crate::beta::s_from_beta(beta)?;
        GapConfig::new(x, s)
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn x1(&self) -> f64 {
        self.x[0]
    }

    pub fn beta(&self) -> Vec<Option<Beta>> {
        // validated weights are positive beyond s₁
        beta_from_s(&self.s).expect("weights validated at construction")
    }

    /// True when every weight lies in [0, 1], the probabilistic range.
    pub fn is_probabilistic(&self) -> bool {
        self.s.iter().all(|&v| v <= 1.0)
    }

    pub fn with_s(&self, s: Vec<f64>) -> Result<Self> {
        GapConfig::new(self.x.clone(), s)
    }

    /// Same config with s₁ replaced by `s1`.
    pub fn first_endpoint_only(&self, s1: f64) -> Result<Self> {
        GapConfig::single(self.x[0], s1)
    }
}

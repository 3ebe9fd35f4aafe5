//! Closed-form large-gap expansions of log F and of the counting moments.
//!
//! With β_j = i b_j every term below is real: −2πiβμ = 2πbμ,
//! −2π²β²σ² = 2π²b²σ² and log G(1+β)G(1−β) = 2 Re log G(1+ib).

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::beta::Beta;
use crate::error::{Error, Result};
use crate::specfun::consts::{EULER_GAMMA, ZETA_PRIME_MINUS_ONE};
use crate::specfun::log_barnes_g;

pub use crate::beta::{beta_from_s, s_from_beta};

const TWO_PI2: f64 = 2.0 * PI * PI;

/// Separately kept terms of an expansion of a log-determinant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticBreakdown {
    /// −2πi Σ β_j μ(x_j)
    pub drift: f64,
    /// −2π² Σ β_j² σ²(x_j)
    pub variance: f64,
    /// −4π² Σ_{k<j} β_j β_k Σ(·,·)
    pub cross: f64,
    /// Σ log G(1+β_j)G(1−β_j)
    pub barnes: f64,
    /// log F(x; 0) leading terms, for gap probabilities only
    pub tw: f64,
    pub total: f64,
}

impl AsymptoticBreakdown {
    fn finish(mut self) -> Self {
        self.total = self.drift + self.variance + self.cross + self.barnes + self.tw;
        self
    }
}

fn negative(x: f64, what: &str) -> Result<()> {
    if x < 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{what} needs a finite x < 0, got {x}"
        )))
    }
}

fn decreasing(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::invalid("at least one endpoint is required"));
    }
    for &v in x {
        negative(v, "the expansion")?;
    }
    if x.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::invalid("endpoints must be strictly decreasing"));
    }
    Ok(())
}

/// μ(x) = (2/3π)|x|^{3/2}.
pub fn mu(x: f64) -> Result<f64> {
    negative(x, "mu")?;
    Ok(2.0 / (3.0 * PI) * x.abs().powf(1.5))
}

/// σ²(x) = (3/4π²) log|4x|.
pub fn sigma2(x: f64) -> Result<f64> {
    negative(x, "sigma2")?;
    Ok(3.0 / (4.0 * PI * PI) * (4.0 * x.abs()).ln())
}

/// Σ(τ_k, τ_j) = (1/2π²) log[(√|τ_k| + √|τ_j|)² / (τ_k − τ_j)], 0 > τ_k > τ_j.
pub fn sigma_cov(tau_k: f64, tau_j: f64) -> Result<f64> {
    if !(tau_k < 0.0) || !tau_j.is_finite() || !(tau_k > tau_j) {
        return Err(Error::invalid(format!(
            "sigma_cov needs 0 > τ_k > τ_j, got ({tau_k}, {tau_j})"
        )));
    }
    let d = tau_k - tau_j;
    if d < 1e-12 {
        return Err(Error::Singularity(format!(
            "Σ diverges as τ_k − τ_j = {d:e} → 0"
        )));
    }
    let num = (tau_k.abs().sqrt() + tau_j.abs().sqrt()).powi(2);
    Ok((num / d).ln() / TWO_PI2)
}

/// log G(1+β)G(1−β) for β ∈ iℝ.
pub fn log_barnes_pair(beta: Beta) -> Result<f64> {
    Ok(2.0 * log_barnes_g(Complex64::new(1.0, beta.im))?.re)
}

/// Leading terms of log F(x; 0): (1/24)log 2 + ζ'(−1) − (1/8)log|x| − |x|³/12.
pub fn log_f_m1_s0(x: f64) -> Result<f64> {
    negative(x, "log_f_m1_s0")?;
    let a = x.abs();
    Ok(LN_2 / 24.0 + ZETA_PRIME_MINUS_ONE - a.ln() / 8.0 - a.powi(3) / 12.0)
}

/// log E(x; β) ≈ log G(1+β)G(1−β) − (3/2)β² log|4x| − (4iβ/3)|x|^{3/2}.
pub fn log_e_m1(x: f64, beta: Beta) -> Result<f64> {
    Ok(log_e_m1_breakdown(x, beta)?.total)
}

fn log_e_m1_breakdown(x: f64, beta: Beta) -> Result<AsymptoticBreakdown> {
    let b = beta.im;
    Ok(AsymptoticBreakdown {
        drift: 2.0 * PI * b * mu(x)?,
        variance: TWO_PI2 * b * b * sigma2(x)?,
        barnes: log_barnes_pair(beta)?,
        ..Default::default()
    }
    .finish())
}

/// Explicit form of the m-point expansion of log E(x; β), with Σ evaluated
/// at x itself (it is scale invariant).
pub fn log_e_asym(x: &[f64], beta: &[Beta]) -> Result<AsymptoticBreakdown> {
    decreasing(x)?;
    if x.len() != beta.len() {
        return Err(Error::invalid("x and β must have the same length"));
    }
    let mut out = AsymptoticBreakdown::default();
    for (j, (&xj, &bj)) in x.iter().zip(beta).enumerate() {
        let b = bj.im;
        out.drift += 2.0 * PI * b * mu(xj)?;
        out.variance += TWO_PI2 * b * b * sigma2(xj)?;
        out.barnes += log_barnes_pair(bj)?;
        for k in 0..j {
            out.cross += 2.0 * TWO_PI2 * b * beta[k].im * sigma_cov(x[k], xj)?;
        }
    }
    Ok(out.finish())
}

/// Product form: Σ_j log E(x_j; β_j) − 4π² Σ_{k<j} β_j β_k Σ(x_k, x_j).
pub fn log_e_product_form(x: &[f64], beta: &[Beta]) -> Result<f64> {
    decreasing(x)?;
    if x.len() != beta.len() {
        return Err(Error::invalid("x and β must have the same length"));
    }
    let mut total = 0.0;
    for (j, (&xj, &bj)) in x.iter().zip(beta).enumerate() {
        total += log_e_m1(xj, bj)?;
        for k in 0..j {
            total += 2.0 * TWO_PI2 * bj.im * beta[k].im * sigma_cov(x[k], xj)?;
        }
    }
    Ok(total)
}

/// μ₀(x) = μ(x − x₁) + (|x₁|/π)|x₁ − x|^{1/2}.
pub fn mu0(x1: f64, x: f64) -> Result<f64> {
    negative(x1, "mu0")?;
    Ok(mu(x - x1)? + x1.abs() / PI * (x1 - x).abs().sqrt())
}

/// σ₀²(x) = σ²(x − x₁) − (1/2π²) log[2(x₁ − x)/(x₁ − 2x)].
pub fn sigma0_2(x1: f64, x: f64) -> Result<f64> {
    negative(x1, "sigma0_2")?;
    Ok(sigma2(x - x1)? - (2.0 * (x1 - x) / (x1 - 2.0 * x)).ln() / TWO_PI2)
}

fn check_e0(x: &[f64], beta0: &[Beta]) -> Result<()> {
    decreasing(x)?;
    if x.len() < 2 {
        return Err(Error::invalid("the s₁ = 0 expansion needs m ≥ 2"));
    }
    if beta0.len() != x.len() - 1 {
        return Err(Error::invalid(format!(
            "expected {} exponents β₂..β_m, got {}",
            x.len() - 1,
            beta0.len()
        )));
    }
    Ok(())
}

/// Explicit form of the expansion of log E₀(x; β₂..β_m) (s₁ = 0).
pub fn log_e0_asym(x: &[f64], beta0: &[Beta]) -> Result<AsymptoticBreakdown> {
    check_e0(x, beta0)?;
    let x1 = x[0];
    let mut out = AsymptoticBreakdown::default();
    for (j, &bj) in beta0.iter().enumerate() {
        let xj = x[j + 1];
        let b = bj.im;
        out.drift += 2.0 * PI * b * mu0(x1, xj)?;
        out.variance += TWO_PI2 * b * b * sigma0_2(x1, xj)?;
        out.barnes += log_barnes_pair(bj)?;
        for k in 0..j {
            let xk = x[k + 1];
            out.cross += 2.0 * TWO_PI2 * b * beta0[k].im * sigma_cov(xk - x1, xj - x1)?;
        }
    }
    Ok(out.finish())
}

/// Product form: log E(y; β₀) + Σ_j [β_j² log(2(x₁−x_j)/(x₁−2x_j))
/// − 2iβ_j |x₁| |x₁−x_j|^{1/2}] with y_j = x_j − x₁.
pub fn log_e0_product_form(x: &[f64], beta0: &[Beta]) -> Result<f64> {
    check_e0(x, beta0)?;
    let x1 = x[0];
    let y: Vec<f64> = x[1..].iter().map(|&v| v - x1).collect();
    let mut total = log_e_product_form(&y, beta0)?;
    for (j, &bj) in beta0.iter().enumerate() {
        let xj = x[j + 1];
        let b = bj.im;
        // β² = −b², −2iβ = 2b
        total += -b * b * (2.0 * (x1 - xj) / (x1 - 2.0 * xj)).ln();
        total += 2.0 * b * x1.abs() * (x1 - xj).abs().sqrt();
    }
    Ok(total)
}

/// Leading large-|x| mean and variance of N_(x,∞).
pub fn moment_asym(x: f64) -> Result<(f64, f64)> {
    negative(x, "moment_asym")?;
    Ok((mu(x)?, sigma2(x)? + (1.0 + EULER_GAMMA) / TWO_PI2))
}

/// Leading Var N_(rτ₂, rτ₁):
/// (3/2π²)log r + (3/4π²)log|16τ₁τ₂| + (1+γ)/π² − 2Σ(τ₁, τ₂).
pub fn var_interval_asym(r: f64, tau1: f64, tau2: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::invalid(format!("r must be positive, got {r}")));
    }
    let sig = sigma_cov(tau1, tau2)?;
    Ok(3.0 / TWO_PI2 * r.ln()
        + 3.0 / (4.0 * PI * PI) * (16.0 * tau1 * tau2).abs().ln()
        + (1.0 + EULER_GAMMA) / (PI * PI)
        - 2.0 * sig)
}

/// log P(λ₁ < x₁ and the thinned maximum < x₂):
/// log F(x₁; 0) + log E(x₂ − x₁; β) − β² log[(x₁ − 2x₂)/(2(x₁ − x₂))]
/// − 2iβ|x₁||x₁ − x₂|^{1/2}.
pub fn thinned_joint_tail_asym(x1: f64, x2: f64, beta: Beta) -> Result<f64> {
    decreasing(&[x1, x2])?;
    let b = beta.im;
    Ok(log_f_m1_s0(x1)?
        + log_e_m1(x2 - x1, beta)?
        + b * b * ((x1 - 2.0 * x2) / (2.0 * (x1 - x2))).ln()
        + 2.0 * b * x1.abs() * (x1 - x2).abs().sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI2: f64 = PI * PI;

    #[test]
    fn closed_forms() {
        assert!((mu(-1.0).unwrap() - 2.0 / (3.0 * PI)).abs() < 1e-16);
        assert!((mu(-4.0).unwrap() - 16.0 / (3.0 * PI)).abs() < 1e-15);
        assert_eq!(sigma2(-0.25).unwrap(), 0.0);
        assert!(mu(0.0).is_err());
        assert!(sigma2(1.0).is_err());
    }

    #[test]
    fn covariance_values() {
        let a = sigma_cov(-1.0, -4.0).unwrap();
        assert!((a - 3f64.ln() / (2.0 * PI2)).abs() < 1e-16);
        let b = sigma_cov(-1.0, -9.0).unwrap();
        assert!((b - 2f64.ln() / (2.0 * PI2)).abs() < 1e-16);
        assert_eq!(sigma_cov(-2.0, -8.0).unwrap(), a);
        assert!(matches!(
            sigma_cov(-1.0, -1.0 - 1e-13),
            Err(Error::Singularity(_))
        ));
        assert!(matches!(
            sigma_cov(-2.0, -1.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(sigma_cov(0.0, -1.0).is_err());
    }

    #[test]
    fn tracy_widom_tail() {
        let v = log_f_m1_s0(-1.0).unwrap();
        assert!((v - (LN_2 / 24.0 + ZETA_PRIME_MINUS_ONE - 1.0 / 12.0)).abs() < 1e-16);
        let h = 1.7;
        let d = log_f_m1_s0(-2.0 * h).unwrap() - log_f_m1_s0(-h).unwrap();
        let want = -LN_2 / 8.0 - (8.0 * h.powi(3) - h.powi(3)) / 12.0;
        assert!((d - want).abs() < 1e-13);
    }

    #[test]
    fn single_point_cases() {
        assert_eq!(log_e_m1(-3.0, Beta::ZERO).unwrap(), 0.0);
        let b = Beta::imag(0.3);
        let v = log_e_m1(-0.25, b).unwrap();
        let want = log_barnes_pair(b).unwrap() + 4.0 * 0.3 / 3.0 * 0.125;
        assert!((v - want).abs() < 1e-15);
        let e = log_e_asym(&[-5.0], &[b]).unwrap();
        assert!((e.total - log_e_m1(-5.0, b).unwrap()).abs() < 1e-15);
        assert_eq!(e.cross, 0.0);
    }

    #[test]
    fn product_and_explicit_forms_agree() {
        let x = [-3.0, -5.5, -9.0];
        let b = [Beta::imag(0.2), Beta::imag(-0.15), Beta::imag(0.4)];
        let e = log_e_asym(&x, &b).unwrap();
        let p = log_e_product_form(&x, &b).unwrap();
        assert!((e.total - p).abs() < 1e-12);
        let sum = e.drift + e.variance + e.cross + e.barnes + e.tw;
        assert!((sum - e.total).abs() < 1e-12);
        let z = log_e_product_form(&x[..2], &[b[0], Beta::ZERO]).unwrap();
        assert!((z - log_e_m1(x[0], b[0]).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn s1_zero_forms_agree() {
        let x = [-8.0, -16.0];
        let b = [Beta::imag(0.2)];
        let e = log_e0_asym(&x, &b).unwrap();
        let p = log_e0_product_form(&x, &b).unwrap();
        assert!((e.total - p).abs() < 1e-12);
        let t = thinned_joint_tail_asym(x[0], x[1], b[0]).unwrap();
        assert!((t - log_f_m1_s0(x[0]).unwrap() - e.total).abs() < 1e-12);
        assert_eq!(
            thinned_joint_tail_asym(-2.0, -5.0, Beta::ZERO).unwrap(),
            log_f_m1_s0(-2.0).unwrap()
        );
        assert!(log_e0_asym(&x, &[]).is_err());
    }

    #[test]
    fn sigma0_alternative_form() {
        let (x1, x): (f64, f64) = (-3.0, -7.5);
        let alt = (8.0 * (x1 - x).abs().powf(1.5) + 4.0 * x1.abs() * (x1 - x).abs().sqrt()).ln()
            / (2.0 * PI2);
        assert!((sigma0_2(x1, x).unwrap() - alt).abs() < 1e-14);
    }

    #[test]
    fn moments() {
        let (_, v) = moment_asym(-0.25).unwrap();
        assert!((v - (1.0 + EULER_GAMMA) / (2.0 * PI2)).abs() < 1e-16);
        let (m, _) = moment_asym(-1.0).unwrap();
        assert!((m - 2.0 / (3.0 * PI)).abs() < 1e-16);
        let (t1, t2, r) = (-1.0, -2.0, 10.0);
        let lhs = var_interval_asym(r, t1, t2).unwrap();
        let rhs = moment_asym(r * t1).unwrap().1 + moment_asym(r * t2).unwrap().1
            - 2.0 * sigma_cov(t1, t2).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        let d = var_interval_asym(2.0 * r, t1, t2).unwrap() - lhs;
        assert!((d - 3.0 * LN_2 / (2.0 * PI2)).abs() < 1e-14);
    }
}

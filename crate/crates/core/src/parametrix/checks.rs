use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mat2::{exp_sigma3, m_const, Mat2};
use super::models::{hg_arg, phi, phi_hg, rays, Model, Sector, MAX_RADIUS};
use crate::beta::Beta;
use crate::error::{Error, Result};
use crate::specfun::{digamma, gamma, rgamma};

type C = Complex64;

/// One-sided offset (radians) for boundary values on a ray.
pub const JUMP_EPS: f64 = 1e-7;
/// Radii used by the coefficient fit.
pub const FIT_RADII: [f64; 3] = [15.0, 20.0, 25.0];
/// Angles per radius used by the coefficient fit.
pub const FIT_ANGLES: usize = 32;
/// Fit residual above which extraction is reported as failed.
pub const FIT_RESIDUAL_MAX: f64 = 1e-5;

fn rotate(t: f64, angle: f64) -> C {
    C::from_polar(t, angle)
}

/// ‖Φ₊ − Φ₋J‖_∞ on ray `ray_index` (1-based) at radius t. Boundary values
/// are extrapolated from offsets ε and 2ε.
pub fn jump_residual(model: Model, ray_index: usize, t: f64, beta: Option<Beta>) -> Result<f64> {
    let all = rays(model, beta)?;
    let ray = all.iter().find(|r| r.index == ray_index).ok_or_else(|| {
        Error::invalid(format!(
            "ray index {ray_index} is not one of 1..={} for the {model} model",
            all.len()
        ))
    })?;
    if !(t > 0.0) || t > MAX_RADIUS {
        return Err(Error::domain(format!(
            "jump radius must lie in (0, {MAX_RADIUS}], got {t}"
        )));
    }
    let side = |s: f64| -> Result<Mat2> {
        let a = phi(model, rotate(t, ray.angle + s * JUMP_EPS), beta)?.matrix;
        let b = phi(model, rotate(t, ray.angle + 2.0 * s * JUMP_EPS), beta)?.matrix;
        Ok(a.scale(C::new(2.0, 0.0)) - b)
    };
    let plus = side(ray.plus_side)?;
    let minus = side(-ray.plus_side)?;
    Ok((plus - minus * ray.jump).norm_inf())
}

/// Result of an asymptotic coefficient fit.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CoeffFit {
    pub fitted: Mat2,
    pub expected: Mat2,
    /// Largest entry of |fitted − expected|.
    pub error: f64,
    /// Largest least-squares residual over the samples.
    pub fit_residual: f64,
}

/// Closed-form first correction for each model.
pub fn expected_coeff(model: Model, beta: Option<Beta>) -> Result<Mat2> {
    let c = C::new;
    match model {
        Model::Airy => Ok(Mat2::new(
            c(1.0 / 6.0, 0.0),
            c(0.0, 1.0),
            c(0.0, 1.0),
            c(-1.0 / 6.0, 0.0),
        )
        .scale(c(0.125, 0.0))),
        Model::Bessel => Ok(
            Mat2::new(c(-1.0, 0.0), c(0.0, -2.0), c(0.0, -2.0), c(1.0, 0.0))
                .scale(c(1.0 / 16.0, 0.0)),
        ),
        Model::Chg => {
            let b = beta
                .ok_or_else(|| Error::invalid("the CHG model needs β"))?
                .value();
            let tau = |x: C| -> Result<C> { Ok(-gamma(-x)? * rgamma(x + 1.0)) };
            if b == c(0.0, 0.0) {
                return Ok(Mat2::real(0.0, 0.0, 0.0, 0.0));
            }
            let b2 = b * b;
            Ok(Mat2::new(-b2, b2 * tau(b)?, -b2 * tau(-b)?, b2))
        }
    }
}

/// Φ with the explicit large-z factors removed, so that it equals
/// I + Φ₁w + Φ₂w² + … in the model's expansion variable w.
fn stripped(model: Model, z: C, beta: Option<Beta>) -> Result<(C, Mat2)> {
    let p = phi(model, z, beta)?;
    let m = p.matrix;
    match model {
        Model::Airy => {
            let z32 = z.powf(1.5);
            let z14 = z.powf(0.25);
            let left = m_const().inverse() * Mat2::diag(z14, z14.inv());
            let right = exp_sigma3(z32 * (2.0 / 3.0));
            Ok((z32.inv(), left * m * right))
        }
        Model::Bessel => {
            // In |arg z| < 2π/3 the I₀ column carries a Stokes multiple of
            // the K₀ column that is only e^{-4 Re√z} small, which is not
            // negligible at these radii. Continue the neighbouring Hankel
            // sector instead; both share the same asymptotic series.
            // The switch across the positive axis is smoothed with Berry's
            // error-function multiplier in the singulant 4√z.
            let sz = z.sqrt();
            let m = match p.sector {
                Sector::I => {
                    let f = 4.0 * sz;
                    let k = -libm::erf(f.im / (2.0 * f.re).sqrt());
                    m * Mat2::real(1.0, 0.0, k, 1.0)
                }
                _ => m,
            };
            let q = (2.0 * PI * sz).sqrt();
            let left = m_const().inverse() * Mat2::diag(q, q.inv());
            let right = exp_sigma3(-2.0 * sz);
            Ok((sz.inv(), left * m * right))
        }
        Model::Chg => {
            let b = p.beta.expect("CHG sample carries β").value();
            let theta = hg_arg(z);
            // Same Stokes issue: sectors II and V straddle the real axis and
            // mix in e^{∓z}-small multiples of the other column. Continue
            // the neighbouring sector across the nearer triangular jump.
            let e = (C::new(0.0, PI) * b).exp();
            let one = C::new(1.0, 0.0);
            let zero = C::new(0.0, 0.0);
            let lower = |x: C| Mat2::new(one, zero, x, one);
            let m = match p.sector {
                Sector::II if theta < PI => m * lower(-e),
                Sector::II => m * lower(-e.inv()),
                Sector::V if theta >= 0.0 => m * lower(e),
                Sector::V => m * lower(e.inv()),
                _ => m,
            };
            let conn = if theta > PI / 2.0 {
                exp_sigma3(C::new(0.0, PI) * b)
            } else {
                Mat2::real(0.0, -1.0, 1.0, 0.0)
            };
            // z^β with arg z ∈ (−π/2, 3π/2)
            let logz = C::new(z.norm().ln(), theta);
            let right = conn.inverse() * exp_sigma3(0.5 * z) * exp_sigma3(b * logz);
            Ok((z.inv(), m * right))
        }
    }
}

fn fit_terms(model: Model) -> usize {
    match model {
        Model::Airy => 5,
        Model::Bessel => 12,
        Model::Chg => 7,
    }
}

/// Least-squares fit of the first correction coefficient from samples on
/// circles of radius 15, 20, 25, compared with the closed form.
pub fn extract_asym_coeff(model: Model, beta: Option<Beta>) -> Result<CoeffFit> {
    let mut ws = Vec::new();
    let mut vals = Vec::new();
    for &r in &FIT_RADII {
        for k in 0..FIT_ANGLES {
            let t = -PI + (k as f64 + 0.5) * 2.0 * PI / FIT_ANGLES as f64;
            let (w, m) = stripped(model, C::from_polar(r, t), beta)?;
            ws.push(w);
            vals.push(m);
        }
    }
    let terms = fit_terms(model);
    let n = ws.len();
    let design = DMatrix::from_fn(n, terms + 1, |i, j| ws[i].powu(j as u32));
    let svd = design.clone().svd(true, true);
    let mut fitted = Mat2::real(0.0, 0.0, 0.0, 0.0);
    let mut fit_residual: f64 = 0.0;
    for a in 0..2 {
        for b in 0..2 {
            let rhs = DVector::from_iterator(n, vals.iter().map(|m| m.at(a, b)));
            let coef = svd
                .solve(&rhs, 1e-14)
                .map_err(|e| Error::numerical(format!("coefficient fit failed: {e}")))?;
            let res = &design * &coef - &rhs;
            fit_residual = fit_residual.max(res.iter().map(|v| v.norm()).fold(0.0, f64::max));
            fitted.0[a][b] = coef[1];
        }
    }
    if !(fit_residual < FIT_RESIDUAL_MAX) {
        return Err(Error::numerical(format!(
            "{model} coefficient fit residual {fit_residual:e} exceeds {FIT_RESIDUAL_MAX:e}"
        )));
    }
    let expected = expected_coeff(model, beta)?;
    Ok(CoeffFit {
        fitted,
        expected,
        error: (fitted - expected).max_abs(),
        fit_residual,
    })
}

/// Numerical and closed-form values of lim_{z→0} [Φ⁻¹ ∂_β Φ]₂₁ in the
/// sector containing the negative axis.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LogDerivative {
    pub numeric: C,
    pub closed_form: C,
}

/// Step in Im β for the central difference.
pub const BETA_STEP: f64 = 1e-4;
/// Radius at which the limit is sampled (together with twice that radius).
pub const LIMIT_RADIUS: f64 = 1e-4;

pub fn hg_logderivative_closed(beta: Beta) -> Result<C> {
    let b = beta.value();
    let one = C::new(1.0, 0.0);
    Ok(gamma(one - b)? * gamma(one + b)? * (digamma(one + b)? + digamma(one - b)?))
}

pub fn hg_logderivative_limit(beta: Beta) -> Result<LogDerivative> {
    if !beta.im.is_finite() || beta.im.abs() > 0.5 {
        return Err(Error::invalid(format!(
            "β must satisfy |β| <= 1/2, got {beta}"
        )));
    }
    let h = BETA_STEP;
    let at = |r: f64| -> Result<C> {
        let z = C::new(-r, 0.0);
        let mid = phi_hg(z, beta)?;
        debug_assert_eq!(mid.sector, Sector::II);
        let up = phi_hg(z, Beta::imag(beta.im + h))?.matrix;
        let dn = phi_hg(z, Beta::imag(beta.im - h))?.matrix;
        let d = (up - dn).scale(C::new(0.0, 2.0 * h).inv());
        Ok((mid.matrix.inverse() * d).at(1, 0))
    };
    let numeric = 2.0 * at(LIMIT_RADIUS)? - at(2.0 * LIMIT_RADIUS)?;
    Ok(LogDerivative {
        numeric,
        closed_form: hg_logderivative_closed(beta)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::consts::EULER_GAMMA;

    #[test]
    fn airy_and_bessel_jumps() {
        for &t in &[0.7, 2.0, 6.0] {
            for k in 1..=4 {
                let r = jump_residual(Model::Airy, k, t, None).unwrap();
                assert!(r < 1e-9, "airy ray {k} t={t}: {r:e}");
            }
            for k in 1..=3 {
                let r = jump_residual(Model::Bessel, k, t, None).unwrap();
                assert!(r < 1e-9, "bessel ray {k} t={t}: {r:e}");
            }
        }
        assert!(jump_residual(Model::Airy, 5, 1.0, None).is_err());
    }

    #[test]
    fn chg_jumps() {
        for &b in &[0.1, 0.3, 0.5, -0.2] {
            for &t in &[0.5, 3.0] {
                for k in 1..=6 {
                    let r = jump_residual(Model::Chg, k, t, Some(Beta::imag(b))).unwrap();
                    assert!(r < 1e-7, "chg β={b} ray {k} t={t}: {r:e}");
                }
            }
        }
    }

    #[test]
    fn coefficients() {
        let a = extract_asym_coeff(Model::Airy, None).unwrap();
        assert!(a.error < 1e-5, "{a:?}");
        let b = extract_asym_coeff(Model::Bessel, None).unwrap();
        assert!(b.error < 1e-5, "{b:?}");
        for &im in &[0.1, 0.2, 0.3] {
            let c = extract_asym_coeff(Model::Chg, Some(Beta::imag(im))).unwrap();
            assert!(c.error < 1e-4, "β={im}: {c:?}");
        }
    }

    #[test]
    fn logderivative() {
        let z = hg_logderivative_limit(Beta::ZERO).unwrap();
        assert!((z.closed_form - C::new(-2.0 * EULER_GAMMA, 0.0)).norm() < 1e-14);
        assert!((z.numeric - z.closed_form).norm() < 1e-4, "{z:?}");
        let p = hg_logderivative_limit(Beta::imag(0.2)).unwrap();
        assert!((p.numeric - p.closed_form).norm() < 1e-4, "{p:?}");
        let m = hg_logderivative_limit(Beta::imag(-0.2)).unwrap();
        assert!((m.closed_form - p.closed_form.conj()).norm() < 1e-14);
        assert!((m.numeric - p.numeric.conj()).norm() < 1e-6);
    }
}

#[cfg(test)]
use std::f64::consts::FRAC_PI_8;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mat2::{exp_sigma3, Mat2};
use crate::beta::Beta;
use crate::error::{Error, Result};
use crate::specfun::kummer::{kummer_m, kummer_u, SheetPoint};
use crate::specfun::{
    airy_unchecked, hankel_unchecked, i0_unchecked, k0_sheet, rgamma, HankelKind,
};

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub const MAX_RADIUS: f64 = 40.0;
pub const MIN_RADIUS_BESSEL: f64 = 1e-8;
pub const MIN_RADIUS_HG: f64 = 1e-6;
pub const MAX_BETA: f64 = 0.5;
/// Angular distance below which a point counts as lying on a ray.
pub const ON_RAY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Airy,
    Bessel,
    Chg,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Airy => "airy",
            Model::Bessel => "bessel",
            Model::Chg => "chg",
        })
    }
}

/// Sector labels, counted per model:
/// Airy I..IV = (0, 2π/3), (2π/3, π), (−π, −2π/3), (−2π/3, 0);
/// Bessel I..III = |arg z| < 2π/3, (2π/3, π), (−π, −2π/3);
/// CHG I..VI as bounded by the rays Γ₁..Γ₆ at π/2, 3π/4, 5π/4, 3π/2,
/// −π/4, π/4 (I between Γ₁ and Γ₂, going counter-clockwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametrixSample {
    pub z: C,
    pub sector: Sector,
    pub matrix: Mat2,
    pub model: Model,
    pub beta: Option<Beta>,
}

impl ParametrixSample {
    pub fn det_residual(&self) -> f64 {
        (self.matrix.det() - 1.0).norm()
    }
}

/// A jump ray: direction, the side on which Φ₊ lives (+1 counter-clockwise,
/// −1 clockwise) and the jump matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ray {
    pub index: usize,
    pub angle: f64,
    pub plus_side: f64,
    pub jump: Mat2,
}

fn angle_close(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(2.0 * PI);
    d < ON_RAY_TOL || 2.0 * PI - d < ON_RAY_TOL
}

fn check_on_rays(z: C, angles: &[f64], model: Model) -> Result<()> {
    let t = z.arg();
    if angles.iter().any(|&a| angle_close(t, a)) {
        return Err(Error::RayAmbiguity(format!(
            "z = {z} lies on a jump ray of the {model} model"
        )));
    }
    Ok(())
}

fn check_radius(z: C, lo: f64, model: Model) -> Result<f64> {
    let r = z.norm();
    if !r.is_finite() || r <= lo || r > MAX_RADIUS {
        return Err(Error::domain(format!(
            "the {model} model is evaluated for {lo:e} < |z| <= {MAX_RADIUS}, got |z| = {r}"
        )));
    }
    Ok(r)
}

fn check_beta(beta: Beta) -> Result<()> {
    if !beta.im.is_finite() || beta.im.abs() > MAX_BETA {
        return Err(Error::invalid(format!(
            "β must be imaginary with |β| <= {MAX_BETA}, got {beta}"
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------- Airy

const AIRY_RAYS: [f64; 4] = [0.0, 2.0 * PI / 3.0, PI, -2.0 * PI / 3.0];

pub fn airy_rays() -> Vec<Ray> {
    let lower = Mat2::real(1.0, 0.0, 1.0, 1.0);
    vec![
        Ray {
            index: 1,
            angle: 0.0,
            plus_side: 1.0,
            jump: Mat2::real(1.0, 1.0, 0.0, 1.0),
        },
        Ray {
            index: 2,
            angle: 2.0 * PI / 3.0,
            plus_side: -1.0,
            jump: lower,
        },
        Ray {
            index: 3,
            angle: PI,
            plus_side: -1.0,
            jump: Mat2::real(0.0, 1.0, -1.0, 0.0),
        },
        Ray {
            index: 4,
            angle: -2.0 * PI / 3.0,
            plus_side: -1.0,
            jump: lower,
        },
    ]
}

pub fn phi_ai(z: C) -> Result<ParametrixSample> {
    check_radius(z, 0.0, Model::Airy).or_else(
        |e| {
            if z == c(0.0, 0.0) {
                Ok(0.0)
            } else {
                Err(e)
            }
        },
    )?;
    check_on_rays(z, &AIRY_RAYS, Model::Airy)?;
    let w = C::from_polar(1.0, 2.0 * PI / 3.0);
    let w2 = w * w;
    let (a0, d0) = airy_unchecked(z);
    let t = z.arg();
    let phase = exp_sigma3(c(0.0, -PI / 6.0));
    let (base, sector, tail) = if t > 0.0 {
        let (a2, d2) = airy_unchecked(w2 * z);
        let base = Mat2::new(a0, a2, d0, w2 * d2);
        if t < 2.0 * PI / 3.0 {
            (base, Sector::I, Mat2::identity())
        } else {
            (base, Sector::II, Mat2::real(1.0, 0.0, -1.0, 1.0))
        }
    } else {
        let (a1, d1) = airy_unchecked(w * z);
        let base = Mat2::new(a0, -w2 * a1, d0, -d1);
        if t < -2.0 * PI / 3.0 {
            (base, Sector::III, Mat2::real(1.0, 0.0, 1.0, 1.0))
        } else {
            (base, Sector::IV, Mat2::identity())
        }
    };
    let ma =
        Mat2::diag(c(1.0, 0.0), c(0.0, -1.0)).scale(C::from_polar((2.0 * PI).sqrt(), PI / 6.0));
    Ok(ParametrixSample {
        z,
        sector,
        matrix: ma * base * phase * tail,
        model: Model::Airy,
        beta: None,
    })
}

// -------------------------------------------------------------- Bessel

const BESSEL_RAYS: [f64; 3] = [2.0 * PI / 3.0, PI, -2.0 * PI / 3.0];

pub fn bessel_rays() -> Vec<Ray> {
    let lower = Mat2::real(1.0, 0.0, 1.0, 1.0);
    vec![
        Ray {
            index: 1,
            angle: 2.0 * PI / 3.0,
            plus_side: -1.0,
            jump: lower,
        },
        Ray {
            index: 2,
            angle: PI,
            plus_side: -1.0,
            jump: Mat2::real(0.0, 1.0, -1.0, 0.0),
        },
        Ray {
            index: 3,
            angle: -2.0 * PI / 3.0,
            plus_side: -1.0,
            jump: lower,
        },
    ]
}

pub fn phi_be(z: C) -> Result<ParametrixSample> {
    let r = check_radius(z, MIN_RADIUS_BESSEL, Model::Bessel)?;
    check_on_rays(z, &BESSEL_RAYS, Model::Bessel)?;
    let t = z.arg();
    let sz = z.sqrt();
    let (sector, matrix) = if t.abs() < 2.0 * PI / 3.0 {
        let w = 2.0 * sz;
        let (i0, di0) = i0_unchecked(w);
        let (k0, dk0) = k0_sheet(SheetPoint::new(2.0 * r.sqrt(), 0.5 * t));
        let m = Mat2::new(
            i0,
            c(0.0, 1.0 / PI) * k0,
            c(0.0, 2.0 * PI) * sz * di0,
            -2.0 * sz * dk0,
        );
        (Sector::I, m)
    } else {
        let w = 2.0 * (-z).sqrt();
        let (h1, d1) = hankel_unchecked(w, HankelKind::First);
        let (h2, d2) = hankel_unchecked(w, HankelKind::Second);
        if t > 0.0 {
            (
                Sector::II,
                Mat2::new(0.5 * h1, 0.5 * h2, PI * sz * d1, PI * sz * d2),
            )
        } else {
            (
                Sector::III,
                Mat2::new(0.5 * h2, -0.5 * h1, -PI * sz * d2, PI * sz * d1),
            )
        }
    };
    Ok(ParametrixSample {
        z,
        sector,
        matrix,
        model: Model::Bessel,
        beta: None,
    })
}

// ----------------------------------------------------------------- CHG

const HG_ANGLES: [f64; 6] = [
    FRAC_PI_2,
    3.0 * FRAC_PI_4,
    5.0 * FRAC_PI_4,
    3.0 * FRAC_PI_2,
    -FRAC_PI_4,
    FRAC_PI_4,
];

/// J₁..J₆ for the given β.
pub fn hg_jumps(beta: Beta) -> [Mat2; 6] {
    let e = (c(0.0, PI) * beta.value()).exp();
    let ei = e.inv();
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    [
        Mat2::new(z, ei, -e, z),
        Mat2::new(one, z, e, one),
        Mat2::new(one, z, ei, one),
        Mat2::new(z, e, -ei, z),
        Mat2::new(one, z, ei, one),
        Mat2::new(one, z, e, one),
    ]
}

/// Γ₁, Γ₂, Γ₆ are oriented away from 0, Γ₃, Γ₄, Γ₅ towards 0, so that the
/// + sides are the sectors I, II, II, III, IV, VI.
pub fn hg_rays(beta: Beta) -> Vec<Ray> {
    let j = hg_jumps(beta);
    let side = [1.0, 1.0, -1.0, -1.0, -1.0, 1.0];
    (0..6)
        .map(|k| Ray {
            index: k + 1,
            angle: HG_ANGLES[k],
            plus_side: side[k],
            jump: j[k],
        })
        .collect()
}

/// arg z in (−π/2, 3π/2].
pub(crate) fn hg_arg(z: C) -> f64 {
    let t = z.arg();
    if t <= -FRAC_PI_2 {
        t + 2.0 * PI
    } else {
        t
    }
}

pub(crate) fn hg_sector(theta: f64) -> Sector {
    if theta < -FRAC_PI_4 {
        Sector::IV
    } else if theta < FRAC_PI_4 {
        Sector::V
    } else if theta < FRAC_PI_2 {
        Sector::VI
    } else if theta < 3.0 * FRAC_PI_4 {
        Sector::I
    } else if theta < 5.0 * FRAC_PI_4 {
        Sector::II
    } else {
        Sector::III
    }
}

/// The column vectors R, H and P = R + H from which every sector of Φ_HG
/// is assembled:
///   R = (e^{-z/2}U(β,1,z), −Γ(1+β)/Γ(−β) e^{-z/2}U(1+β,1,z)),
///   H = (−Γ(1−β)/Γ(β) e^{z/2}U(1−β,1,ze^{-iπ}), e^{z/2}U(−β,1,ze^{-iπ})),
///   P = e^{-iπβ}(Γ(1−β)e^{-z/2}M(β,1,z), Γ(1+β)e^{-z/2}M(1+β,1,z)),
/// with arg z in (−π/2, 3π/2). The first column of Φ̂_HG is e^{iπβ}P and
/// its second column is H.
pub(crate) struct HgBasis {
    pub r: [C; 2],
    pub h: [C; 2],
    pub p: [C; 2],
    pub e: C,
}

pub(crate) fn hg_basis(z: C, beta: Beta) -> HgBasis {
    let b = beta.value();
    let one = c(1.0, 0.0);
    let theta = hg_arg(z);
    let rad = z.norm();
    let at = SheetPoint::new(rad, theta);
    let rot = SheetPoint::new(rad, theta - PI);
    let em = (-0.5 * z).exp();
    let ep = (0.5 * z).exp();
    let (u_b, _) = kummer_u(b, at);
    let (u_1b, _) = kummer_u(one + b, at);
    let (u_1mb, _) = kummer_u(one - b, rot);
    let (u_mb, _) = kummer_u(-b, rot);
    let g1p = crate::specfun::gamma(one + b).expect("Γ(1+β) is finite for β ∈ iℝ");
    let g1m = crate::specfun::gamma(one - b).expect("Γ(1−β) is finite for β ∈ iℝ");
    let r = [em * u_b, -g1p * rgamma(-b) * em * u_1b];
    let h = [-g1m * rgamma(b) * ep * u_1mb, ep * u_mb];
    let (m_b, _) = kummer_m(b, z);
    let (m_1b, _) = kummer_m(one + b, z);
    let e = (c(0.0, PI) * b).exp();
    let p = [g1m * em * m_b / e, g1p * em * m_1b / e];
    HgBasis { r, h, p, e }
}

pub(crate) fn hg_assemble(s: Sector, basis: &HgBasis) -> Mat2 {
    let HgBasis { r, h, p, e } = *basis;
    let ei = e.inv();
    let neg = |v: [C; 2]| [-v[0], -v[1]];
    let lin = |a: C, u: [C; 2], b: C, v: [C; 2]| [a * u[0] + b * v[0], a * u[1] + b * v[1]];
    let zero = c(0.0, 0.0);
    match s {
        Sector::I => Mat2::from_columns(lin(e, r, zero, r), h),
        Sector::II => Mat2::from_columns(lin(e, p, zero, p), h),
        Sector::III => Mat2::from_columns(lin(e, p, -ei, h), h),
        Sector::IV => Mat2::from_columns(lin(e, p, -ei, r), neg(r)),
        Sector::V => Mat2::from_columns(lin(e, p, zero, p), neg(r)),
        Sector::VI => Mat2::from_columns(lin(e, h, zero, h), neg(r)),
    }
}

pub fn phi_hg(z: C, beta: Beta) -> Result<ParametrixSample> {
    check_beta(beta)?;
    check_radius(z, MIN_RADIUS_HG, Model::Chg)?;
    check_on_rays(z, &HG_ANGLES, Model::Chg)?;
    let sector = hg_sector(hg_arg(z));
    let basis = hg_basis(z, beta);
    Ok(ParametrixSample {
        z,
        sector,
        matrix: hg_assemble(sector, &basis),
        model: Model::Chg,
        beta: Some(beta),
    })
}

/// Evaluates the model at z; `beta` is required for the CHG model only.
pub fn phi(model: Model, z: C, beta: Option<Beta>) -> Result<ParametrixSample> {
    match model {
        Model::Airy => phi_ai(z),
        Model::Bessel => phi_be(z),
        Model::Chg => {
            let b = beta.ok_or_else(|| Error::invalid("the CHG model needs β"))?;
            phi_hg(z, b)
        }
    }
}

pub fn rays(model: Model, beta: Option<Beta>) -> Result<Vec<Ray>> {
    Ok(match model {
        Model::Airy => airy_rays(),
        Model::Bessel => bessel_rays(),
        Model::Chg => hg_rays(beta.ok_or_else(|| Error::invalid("the CHG model needs β"))?),
    })
}

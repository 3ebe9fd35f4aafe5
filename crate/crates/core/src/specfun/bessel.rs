//! I0, K0, Hankel H0 and Whittaker functions at μ = 0, all through the
//! b = 1 Kummer functions:
//!   I0(x) = e^{-x} M(1/2, 1, 2x),   K0(x) = √π e^{-x} U(1/2, 1, 2x),
//!   M_{κ,0}(z) = e^{-z/2} z^{1/2} M(1/2 − κ, 1, z),
//!   W_{κ,0}(z) = e^{-z/2} z^{1/2} U(1/2 − κ, 1, z).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::kummer::{kummer_m, kummer_u, SheetPoint};
use crate::error::{Error, Result};

type C = Complex64;

pub const MAX_BESSEL_MODULUS: f64 = 80.0;
pub const MAX_WHITTAKER_MODULUS: f64 = 60.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselI0K0 {
    pub i0: C,
    pub k0: C,
    pub i0_prime: C,
    pub k0_prime: C,
}

fn half() -> C {
    C::new(0.5, 0.0)
}

pub(crate) fn i0_unchecked(x: C) -> (C, C) {
    let (m, dm) = kummer_m(half(), 2.0 * x);
    let e = (-x).exp();
    (e * m, e * (2.0 * dm - m))
}

/// K0 and K0' at w = r e^{iθ} on any sheet of log w.
pub(crate) fn k0_sheet(p: SheetPoint) -> (C, C) {
    let w = p.value();
    let (u, du) = kummer_u(half(), SheetPoint::new(2.0 * p.r, p.theta));
    let e = PI.sqrt() * (-w).exp();
    (e * u, e * (2.0 * du - u))
}

/// I0, K0 and their derivatives for |arg z| < π, 0 < |z| <= 80.
pub fn bessel_modified_i0k0(z: C) -> Result<BesselI0K0> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("non-finite argument"));
    }
    if z.norm() > MAX_BESSEL_MODULUS {
        return Err(Error::domain(format!(
            "I0/K0 support |z| <= {MAX_BESSEL_MODULUS}, got {}",
            z.norm()
        )));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::domain(format!(
            "z = {z} lies on the branch cut of K0"
        )));
    }
    let (i0, i0_prime) = i0_unchecked(z);
    let (k0, k0_prime) = k0_sheet(SheetPoint::from_principal(z));
    Ok(BesselI0K0 {
        i0,
        k0,
        i0_prime,
        k0_prime,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HankelKind {
    First,
    Second,
}

/// H0 of the given kind and its derivative, principal branch.
pub fn hankel_h0(z: C, kind: HankelKind) -> Result<(C, C)> {
    if z == C::new(0.0, 0.0) {
        return Err(Error::Singularity("Hankel function at z = 0".into()));
    }
    if !z.re.is_finite() || !z.im.is_finite() || z.norm() > MAX_BESSEL_MODULUS {
        return Err(Error::domain(format!(
            "Hankel functions support 0 < |z| <= {MAX_BESSEL_MODULUS}"
        )));
    }
    Ok(hankel_unchecked(z, kind))
}

pub(crate) fn hankel_unchecked(z: C, kind: HankelKind) -> (C, C) {
    let p = SheetPoint::from_principal(z);
    match kind {
        // H1(x) = (2/(πi)) K0(x e^{-iπ/2})
        HankelKind::First => {
            let (k, dk) = k0_sheet(p.rotate(-PI / 2.0));
            (C::new(0.0, -2.0 / PI) * k, -2.0 / PI * dk)
        }
        // H2(x) = −(2/(πi)) K0(x e^{iπ/2})
        HankelKind::Second => {
            let (k, dk) = k0_sheet(p.rotate(PI / 2.0));
            (C::new(0.0, 2.0 / PI) * k, -2.0 / PI * dk)
        }
    }
}

/// Whittaker functions M_{κ,0}(z) and W_{κ,0}(z) on the principal branch.
pub fn whittaker_pair_mu0(kappa: C, z: C) -> Result<(C, C)> {
    if !z.re.is_finite() || !z.im.is_finite() || !kappa.re.is_finite() || !kappa.im.is_finite() {
        return Err(Error::domain("non-finite argument"));
    }
    if z.norm() > MAX_WHITTAKER_MODULUS {
        return Err(Error::domain(format!(
            "Whittaker functions support |z| <= {MAX_WHITTAKER_MODULUS}"
        )));
    }
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::domain(format!(
            "z = {z} lies on the branch cut of the Whittaker functions"
        )));
    }
    let a = half() - kappa;
    let pre = (-0.5 * z).exp() * z.sqrt();
    let (m, _) = kummer_m(a, z);
    let (u, _) = kummer_u(a, SheetPoint::from_principal(z));
    Ok((pre * m, pre * u))
}

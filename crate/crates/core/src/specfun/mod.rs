//! Special functions: Airy, gamma family, Barnes G, Kummer/Whittaker,
//! Bessel/Hankel and Gauss-Legendre rules.

mod airy;
mod bessel;
pub mod consts;
mod gamma;
pub(crate) mod kummer;
mod legendre;

pub use airy::{airy_ai, airy_ai_dd, airy_ai_real};
pub use bessel::{bessel_modified_i0k0, hankel_h0, whittaker_pair_mu0, BesselI0K0, HankelKind};
pub use gamma::{digamma, gamma, log_barnes_g, log_gamma, rgamma};
pub use legendre::{gauss_legendre, gauss_legendre_dd, QuadRule, QuadRuleDd, MAX_NODES};

pub(crate) use airy::airy_unchecked;
pub(crate) use bessel::{hankel_unchecked, i0_unchecked, k0_sheet};

/// Complex scalar used throughout.
pub type ComplexValue = num_complex::Complex64;

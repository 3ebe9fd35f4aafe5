//! Model Riemann-Hilbert solutions built from Airy, Bessel and confluent
//! hypergeometric functions, with checks of their jumps, determinants,
//! large-z coefficients and small-z behaviour.

mod checks;
mod mat2;
mod models;

pub use checks::{
    expected_coeff, extract_asym_coeff, hg_logderivative_closed, hg_logderivative_limit,
    jump_residual, CoeffFit, LogDerivative, BETA_STEP, FIT_ANGLES, FIT_RADII, FIT_RESIDUAL_MAX,
    JUMP_EPS, LIMIT_RADIUS,
};
pub use mat2::{exp_sigma3, m_const, sigma1, sigma3, sigma_plus, Mat2};
pub use models::{
    airy_rays, bessel_rays, hg_jumps, hg_rays, phi, phi_ai, phi_be, phi_hg, rays, Model,
    ParametrixSample, Ray, Sector, MAX_BETA, MAX_RADIUS, MIN_RADIUS_BESSEL, MIN_RADIUS_HG,
    ON_RAY_TOL,
};

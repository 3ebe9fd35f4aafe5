//! Nyström discretization of the weighted Airy-kernel operator on
//! (x_m, x₁ + T) with panel-wise Gauss-Legendre rules, its Fredholm
//! determinant, resolvent diagonal and counting-function moments.

mod config;
mod counting;
mod det;
mod kernel;
pub mod linalg;
mod resolvent;
mod scheme;

pub use config::{GapConfig, MAX_X, MIN_X};
pub use counting::{
    cov_count, cov_count_with, cov_tails, mean_count, mean_count_with, var_count, var_count_with,
    IntervalSet,
};
pub use det::{
    log_det, log_det_single, log_det_with, log_e, log_e0, log_e0_with, log_f, DeterminantReport,
    Precision, Resolution, CONVERGENCE_GAP, DD_SWITCH_THRESHOLD,
};
pub use kernel::{airy_kernel, CONFLUENT_GAP};
pub use resolvent::{log_det_ds_last, resolvent_diag, resolvent_integral, ResolventSamples};
pub use scheme::{
    build_scheme, default_tail, Panel, QuadratureScheme, DEFAULT_NODES_PER_PANEL, DEFAULT_TAIL,
    MIN_TAIL, PANEL_LENGTH,
};

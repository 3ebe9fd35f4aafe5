use serde::{Deserialize, Serialize};

use super::config::GapConfig;
use super::kernel::{identity_minus, node_data_dd, node_data_f64, weighted_kernel, NodeData};
use super::linalg::Lu;
use super::scheme::{build_scheme, default_tail, QuadratureScheme, DEFAULT_NODES_PER_PANEL};
use crate::dd::Real;
use crate::error::{Error, Result};

/// Refinement gap below which a report is flagged converged.
pub const CONVERGENCE_GAP: f64 = 1e-8;
/// Smallest eigenvalue of I − A trusted in f64; below it the matrix is
/// rebuilt and factored in double-double.
pub const DD_SWITCH_THRESHOLD: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Precision {
    /// f64, switching to double-double when I − A is nearly singular.
    #[default]
    Auto,
    F64,
    DoubleDouble,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Resolution {
    pub nodes_per_panel: usize,
    pub log_f: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeterminantReport {
    pub log_f: f64,
    pub resolutions: Vec<Resolution>,
    pub converged: bool,
    pub est_error: f64,
    /// Arithmetic actually used (never `Auto`).
    pub precision: Precision,
}

fn log_det_matrix<T: Real>(d: &NodeData<T>) -> Result<(f64, f64)> {
    if d.x.is_empty() {
        return Ok((0.0, f64::INFINITY));
    }
    let m = identity_minus(&weighted_kernel(d));
    let lu = Lu::factor(m)?;
    let (l, sign) = lu.log_abs_det();
    if sign <= 0.0 {
        return Err(Error::numerical(format!(
            "det(I − A) is negative (log|det| = {l}); the discretization is unresolved"
        )));
    }
    Ok((l, lu.smallest_eigenvalue_estimate()))
}

/// log det(I − A) on one scheme; returns the value and the precision used.
pub fn log_det_single(
    config: &GapConfig,
    scheme: &QuadratureScheme,
    precision: Precision,
) -> Result<(f64, Precision)> {
    scheme.check_against(config)?;
    let out = match precision {
        Precision::DoubleDouble => {
            let (l, _) = log_det_matrix(&node_data_dd(scheme, config.s())?)?;
            (l, Precision::DoubleDouble)
        }
        Precision::F64 => {
            let (l, _) = log_det_matrix(&node_data_f64(scheme)?)?;
            (l, Precision::F64)
        }
        Precision::Auto => {
            let (l, piv) = log_det_matrix(&node_data_f64(scheme)?)?;
            if piv < DD_SWITCH_THRESHOLD {
                let (l, _) = log_det_matrix(&node_data_dd(scheme, config.s())?)?;
                (l, Precision::DoubleDouble)
            } else {
                (l, Precision::F64)
            }
        }
    };
    if config.is_probabilistic() && out.0 > 1e-12 {
        return Err(Error::numerical(format!(
            "log F = {} is positive for weights in [0, 1]",
            out.0
        )));
    }
    Ok(out)
}

/// log F at the scheme resolution and at twice that resolution.
pub fn log_det(config: &GapConfig, scheme: &QuadratureScheme) -> Result<DeterminantReport> {
    log_det_with(config, scheme, 1, Precision::Auto)
}

/// log F at n, 2n, ..., 2^k n nodes per panel. With `Auto` every resolution
/// uses double-double as soon as one of them needs it.
pub fn log_det_with(
    config: &GapConfig,
    scheme: &QuadratureScheme,
    refine: usize,
    precision: Precision,
) -> Result<DeterminantReport> {
    if refine == 0 {
        return Err(Error::invalid("at least one refinement step is required"));
    }
    let n0 = scheme.nodes_per_panel;
    let mut schemes = vec![scheme.clone()];
    for k in 1..=refine {
        schemes.push(scheme.with_nodes(n0 << k)?);
    }
    let mut prec = precision;
    'outer: loop {
        let mut values = Vec::with_capacity(schemes.len());
        for sch in &schemes {
            let (l, used) = log_det_single(config, sch, prec)?;
            if prec == Precision::Auto && used == Precision::DoubleDouble {
                prec = Precision::DoubleDouble;
                continue 'outer;
            }
            values.push(l);
        }
        let used = match prec {
            Precision::Auto => Precision::F64,
            p => p,
        };
        return Ok(make_report(&schemes, &values, used));
    }
}

fn make_report(
    schemes: &[QuadratureScheme],
    values: &[f64],
    precision: Precision,
) -> DeterminantReport {
    let resolutions: Vec<Resolution> = schemes
        .iter()
        .zip(values)
        .map(|(s, &v)| Resolution {
            nodes_per_panel: s.nodes_per_panel,
            log_f: v,
        })
        .collect();
    let k = values.len();
    let est_error = (values[k - 1] - values[k - 2]).abs();
    DeterminantReport {
        log_f: values[k - 1],
        resolutions,
        converged: est_error < CONVERGENCE_GAP,
        est_error,
        precision,
    }
}

/// `log_det` with the default resolution and tail.
pub fn log_f(config: &GapConfig) -> Result<DeterminantReport> {
    let scheme = build_scheme(config, DEFAULT_NODES_PER_PANEL, default_tail(config.x1()))?;
    log_det(config, &scheme)
}

/// log E(x; β): the same object as log F, defined when s₁ > 0.
pub fn log_e(config: &GapConfig) -> Result<DeterminantReport> {
    if config.s()[0] == 0.0 {
        return Err(Error::invalid(
            "log E needs s₁ > 0; use log_e0 for configurations with s₁ = 0",
        ));
    }
    log_f(config)
}

/// log E₀ = log F(x; s) − log F(x₁; 0), both at matched resolution.
pub fn log_e0(config: &GapConfig) -> Result<DeterminantReport> {
    log_e0_with(
        config,
        DEFAULT_NODES_PER_PANEL,
        default_tail(config.x1()),
        1,
    )
}

pub fn log_e0_with(
    config: &GapConfig,
    nodes_per_panel: usize,
    tail: f64,
    refine: usize,
) -> Result<DeterminantReport> {
    if config.s()[0] != 0.0 {
        return Err(Error::invalid("log E₀ needs s₁ = 0"));
    }
    if config.m() < 2 {
        return Err(Error::invalid("log E₀ needs at least two endpoints"));
    }
    let base = config.first_endpoint_only(0.0)?;
    let scheme = build_scheme(config, nodes_per_panel, tail)?;
    let base_scheme = build_scheme(&base, nodes_per_panel, tail)?;
    let mut num = log_det_with(config, &scheme, refine, Precision::Auto)?;
    let mut den = log_det_with(&base, &base_scheme, refine, Precision::Auto)?;
    if num.precision != den.precision {
        if num.precision == Precision::F64 {
            num = log_det_with(config, &scheme, refine, Precision::DoubleDouble)?;
        } else {
            den = log_det_with(&base, &base_scheme, refine, Precision::DoubleDouble)?;
        }
    }
    let mut schemes = Vec::new();
    for k in 0..=refine {
        schemes.push(scheme.with_nodes(nodes_per_panel << k)?);
    }
    let values: Vec<f64> = num
        .resolutions
        .iter()
        .zip(&den.resolutions)
        .map(|(a, b)| a.log_f - b.log_f)
        .collect();
    Ok(make_report(&schemes, &values, num.precision))
}

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::GapConfig;
use super::det::{Precision, DD_SWITCH_THRESHOLD};
use super::kernel::{identity_minus, node_data_dd, node_data_f64, weighted_kernel, NodeData};
use super::linalg::Lu;
use super::scheme::QuadratureScheme;
use crate::dd::Real;
use crate::error::{Error, Result};

/// Resolvent diagonal sampled at the quadrature nodes of a window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolventSamples {
    pub nodes: Vec<f64>,
    /// Plain quadrature weights of the nodes.
    pub weights: Vec<f64>,
    pub values: Vec<f64>,
}

impl ResolventSamples {
    pub fn integral(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v)
            .sum()
    }
}

/// diag((I − A)⁻¹A) for the active nodes.
fn resolvent_core<T: Real>(d: &NodeData<T>) -> Result<(Vec<f64>, f64)> {
    let n = d.x.len();
    let a = weighted_kernel(d);
    let lu = Lu::factor(identity_minus(&a))?;
    let piv = lu.smallest_eigenvalue_estimate();
    let diag: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut col: Vec<T> = (0..n).map(|i| a.get(i, k)).collect();
            lu.solve_in_place(&mut col);
            col[k].to_f64()
        })
        .collect();
    Ok((diag, piv))
}

/// Diagonal R(ξ, ξ) of the resolvent kernel of the weighted operator
/// Σ (1 − s_j) K χ_j at the nodes inside `window`, which must lie in
/// (x_m, x_{m−1}) (or (x₁, x₁ + T) when m = 1).
pub fn resolvent_diag(
    config: &GapConfig,
    scheme: &QuadratureScheme,
    window: (f64, f64),
    precision: Precision,
) -> Result<ResolventSamples> {
    scheme.check_against(config)?;
    let m = config.m();
    let x = config.x();
    let lo = x[m - 1];
    let hi = if m == 1 {
        x[0] + scheme.tail_length
    } else {
        x[m - 2]
    };
    let (a, b) = window;
    if !(a < b) || a < lo || b > hi {
        return Err(Error::invalid(format!(
            "window ({a}, {b}) must lie inside ({lo}, {hi})"
        )));
    }
    let mut samples = ResolventSamples {
        nodes: Vec::new(),
        weights: Vec::new(),
        values: Vec::new(),
    };
    if config.s()[m - 1] == 1.0 {
        return Err(Error::invalid(
            "s_m = 1: the last interval carries no weight",
        ));
    }
    let d64 = node_data_f64(scheme)?;
    let (diag, piv) = resolvent_core(&d64)?;
    let diag = match precision {
        Precision::F64 => diag,
        Precision::DoubleDouble => resolvent_core(&node_data_dd(scheme, config.s())?)?.0,
        Precision::Auto if piv < DD_SWITCH_THRESHOLD => {
            resolvent_core(&node_data_dd(scheme, config.s())?)?.0
        }
        Precision::Auto => diag,
    };
    for (slot, &i) in d64.index.iter().enumerate() {
        let xi = scheme.nodes[i];
        if xi > a && xi < b {
            samples.nodes.push(xi);
            samples.weights.push(scheme.weights[i]);
            samples.values.push(diag[slot] / scheme.weights[i]);
        }
    }
    Ok(samples)
}

/// ∫ R(ξ, ξ) dξ over (x_m, x_{m−1}); times (1 − s_m)⁻¹ this equals
/// ∂ log F / ∂s_m.
pub fn resolvent_integral(
    config: &GapConfig,
    scheme: &QuadratureScheme,
    precision: Precision,
) -> Result<f64> {
    let m = config.m();
    let x = config.x();
    let lo = x[m - 1];
    let hi = if m == 1 {
        x[0] + scheme.tail_length
    } else {
        x[m - 2]
    };
    Ok(resolvent_diag(config, scheme, (lo, hi), precision)?.integral())
}

/// Central difference of log F in s_m with step 1e-5·max(s_m, 0.1).
pub fn log_det_ds_last(
    config: &GapConfig,
    scheme: &QuadratureScheme,
    precision: Precision,
) -> Result<f64> {
    let m = config.m();
    let s = config.s();
    let h = 1e-5 * s[m - 1].max(0.1);
    let mut sp = s.to_vec();
    let mut sm = s.to_vec();
    sp[m - 1] += h;
    sm[m - 1] -= h;
    let cp = config.with_s(sp)?;
    let cm = config.with_s(sm)?;
    let rebuild = |c: &GapConfig| -> Result<QuadratureScheme> {
        super::scheme::build_scheme(c, scheme.nodes_per_panel, scheme.tail_length)
    };
    let (fp, p1) = super::det::log_det_single(&cp, &rebuild(&cp)?, precision)?;
    let (fm, _) = super::det::log_det_single(
        &cm,
        &rebuild(&cm)?,
        match precision {
            Precision::Auto => p1,
            p => p,
        },
    )?;
    Ok((fp - fm) / (2.0 * h))
}

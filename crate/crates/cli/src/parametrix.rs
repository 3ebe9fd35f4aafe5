use std::f64::consts::PI;

use airy_gap::parametrix::{
    extract_asym_coeff, hg_logderivative_limit, jump_residual, phi, rays, Model,
};
use airy_gap::Beta;
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::report::{RunReport, Table};

/// Radii at which each ray is checked.
pub const JUMP_RADII: [f64; 2] = [1.0, 3.0];
pub const DET_TOL: f64 = 1e-8;
pub const LOGDER_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Airy,
    Bessel,
    Chg,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Airy => Model::Airy,
            ModelArg::Bessel => Model::Bessel,
            ModelArg::Chg => Model::Chg,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct ParametrixArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Imaginary part of β (chg only)
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
}

fn tolerances(model: Model) -> (f64, f64) {
    match model {
        Model::Airy | Model::Bessel => (1e-9, 1e-5),
        Model::Chg => (1e-7, 1e-4),
    }
}

fn det_points() -> Vec<Complex64> {
    let mut out = Vec::new();
    for &r in &[0.5, 2.0, 8.0] {
        for k in 0..8 {
            out.push(Complex64::from_polar(r, -PI + (k as f64 + 0.3) * PI / 4.0));
        }
    }
    out
}

pub fn cmd_parametrix(args: &ParametrixArgs) -> CliResult<RunReport> {
    let model: Model = args.model.into();
    let beta = match (model, args.beta) {
        (Model::Chg, Some(b)) => Some(Beta::imag(b)),
        (Model::Chg, None) => return Err(CliError::validation("--beta is required for chg")),
        (_, Some(_)) => return Err(CliError::validation("--beta applies to chg only")),
        (_, None) => None,
    };
    let (jump_tol, coeff_tol) = tolerances(model);
    let mut rep = RunReport::new("parametrix", json!({ "model": model, "beta": args.beta }));

    let mut jumps = Vec::new();
    for ray in rays(model, beta)? {
        for &t in &JUMP_RADII {
            let res = jump_residual(model, ray.index, t, beta)?;
            jumps.push(vec![ray.index as f64, t, res]);
        }
    }
    let max_jump = jumps.iter().map(|r| r[2]).fold(0.0, f64::max);

    let mut dets = Vec::new();
    for z in det_points() {
        let s = phi(model, z, beta)?;
        dets.push(vec![z.re, z.im, s.det_residual()]);
    }
    let max_det = dets.iter().map(|r| r[2]).fold(0.0, f64::max);

    let fit = extract_asym_coeff(model, beta)?;
    let mut coeff = Vec::new();
    for i in 0..2 {
        for k in 0..2 {
            let (f, e) = (fit.fitted.at(i, k), fit.expected.at(i, k));
            coeff.push(vec![i as f64, k as f64, f.re, f.im, e.re, e.im]);
        }
    }

    rep.push("max_jump_residual", max_jump);
    rep.push("max_det_residual", max_det);
    rep.push("coefficient_error", fit.error);
    rep.push("coefficient_fit_residual", fit.fit_residual);
    rep.verdict("jumps", max_jump < jump_tol);
    rep.verdict("unimodular", max_det < DET_TOL);
    rep.verdict("coefficient", fit.error < coeff_tol);
    if let Some(b) = beta {
        let ld = hg_logderivative_limit(b)?;
        let gap = (ld.numeric - ld.closed_form).norm();
        rep.push("logderivative_re", ld.numeric.re);
        rep.push("logderivative_im", ld.numeric.im);
        rep.push("logderivative_closed_re", ld.closed_form.re);
        rep.push("logderivative_closed_im", ld.closed_form.im);
        rep.push("logderivative_gap", gap);
        rep.verdict("logderivative", gap < LOGDER_TOL);
    }
    let table = |name: &str, cols: &[&str], rows| Table {
        name: name.into(),
        columns: cols.iter().map(|s| s.to_string()).collect(),
        rows,
    };
    rep.tables
        .push(table("jumps", &["ray", "radius", "residual"], jumps));
    rep.tables
        .push(table("determinants", &["re_z", "im_z", "residual"], dets));
    rep.tables.push(table(
        "coefficient",
        &[
            "row",
            "col",
            "fitted_re",
            "fitted_im",
            "expected_re",
            "expected_im",
        ],
        coeff,
    ));
    Ok(rep)
}

use std::path::PathBuf;

use airy_gap::asymptotics as asym;
use airy_gap::fredholm::{
    build_scheme, cov_count, cov_tails, default_tail, log_det_single, log_det_with, log_e0_with,
    mean_count, var_count, GapConfig, IntervalSet, Precision, DEFAULT_NODES_PER_PANEL,
};
use airy_gap::Beta;
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::report::{write_csv, ConvergencePoint, RunReport, Table};

pub const MIN_NODES: usize = 8;
/// Interval additivity and bilinearity hold to this level.
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PrecisionArg {
    Auto,
    F64,
    Dd,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Self {
        match p {
            PrecisionArg::Auto => Precision::Auto,
            PrecisionArg::F64 => Precision::F64,
            PrecisionArg::Dd => Precision::DoubleDouble,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct Numerics {
    /// Gauss nodes per panel at the coarsest resolution
    #[arg(long, default_value_t = DEFAULT_NODES_PER_PANEL)]
    pub nodes: usize,
    /// Length of the truncated upper tail beyond x₁ (default: max(14, 12 − x₁))
    #[arg(long)]
    pub tail: Option<f64>,
    /// Number of node doublings
    #[arg(long, default_value_t = 2)]
    pub refine: usize,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Auto)]
    pub precision: PrecisionArg,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            nodes: DEFAULT_NODES_PER_PANEL,
            tail: None,
            refine: 2,
            precision: PrecisionArg::Auto,
        }
    }
}

impl Numerics {
    fn check(&self) -> CliResult<()> {
        if self.nodes < MIN_NODES {
            return Err(CliError::validation(format!(
                "--nodes must be at least {MIN_NODES}, got {}",
                self.nodes
            )));
        }
        if self.refine < 1 {
            return Err(CliError::validation("--refine must be at least 1"));
        }
        Ok(())
    }

    fn tail_for(&self, config: &GapConfig) -> f64 {
        self.tail.unwrap_or_else(|| default_tail(config.x1()))
    }

    fn echo(&self) -> serde_json::Value {
        json!({
            "nodes": self.nodes,
            "tail": self.tail,
            "refine": self.refine,
            "precision": format!("{:?}", self.precision).to_lowercase(),
        })
    }
}

/// A determinant value with its asymptotic counterpart.
#[derive(Debug)]
pub struct Point {
    pub numeric: f64,
    pub est_error: f64,
    pub convergence: Vec<ConvergencePoint>,
    pub asymptotic: CliResult<f64>,
}

/// log F (or log E₀ when s₁ = 0 and m ≥ 2) at scale `r`, together with the
/// matching large-gap expansion.
pub fn evaluate(cfg: &RunConfig, r: Option<f64>, num: &Numerics) -> CliResult<Point> {
    num.check()?;
    let config = cfg.gap_config(r)?;
    let betas = cfg.betas()?;
    let tail = num.tail_for(&config);
    let x = config.x().to_vec();
    let report = if betas[0].is_none() && config.m() >= 2 {
        if num.precision != PrecisionArg::Auto {
            return Err(CliError::validation(
                "the s₁ = 0 comparison selects its precision automatically",
            ));
        }
        log_e0_with(&config, num.nodes, tail, num.refine)?
    } else {
        let scheme = build_scheme(&config, num.nodes, tail)?;
        log_det_with(&config, &scheme, num.refine, num.precision.into())?
    };
    let asymptotic = asymptotic_for(&x, &betas);
    Ok(Point {
        numeric: report.log_f,
        est_error: report.est_error,
        convergence: report
            .resolutions
            .iter()
            .map(|r| ConvergencePoint {
                resolution: r.nodes_per_panel,
                value: r.log_f,
            })
            .collect(),
        asymptotic,
    })
}

fn asymptotic_for(x: &[f64], betas: &[Option<Beta>]) -> CliResult<f64> {
    match betas[0] {
        None if x.len() == 1 => Ok(asym::log_f_m1_s0(x[0])?),
        None => {
            let b: Vec<Beta> = betas[1..].iter().map(|b| b.unwrap_or_default()).collect();
            Ok(asym::log_e0_asym(x, &b)?.total)
        }
        Some(_) => {
            let b: Vec<Beta> = betas.iter().map(|b| b.unwrap_or_default()).collect();
            Ok(asym::log_e_asym(x, &b)?.total)
        }
    }
}

fn scaled_gap(gap: f64, r: f64) -> f64 {
    gap * r.powf(1.5) / r.ln()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

// ---------------------------------------------------------------- det

#[derive(Clone, Debug, Args)]
pub struct DetArgs {
    /// Configuration JSON
    pub config: PathBuf,
    #[command(flatten)]
    pub numerics: Numerics,
}

pub fn cmd_det(args: &DetArgs) -> CliResult<RunReport> {
    args.numerics.check()?;
    let cfg = RunConfig::load(&args.config)?;
    let config = cfg.gap_config(None)?;
    let tail = args.numerics.tail_for(&config);
    let scheme = build_scheme(&config, args.numerics.nodes, tail)?;
    let det = log_det_with(
        &config,
        &scheme,
        args.numerics.refine,
        args.numerics.precision.into(),
    )?;
    let mut rep = RunReport::new(
        "det",
        json!({ "config": cfg, "numerics": args.numerics.echo(), "tail": tail }),
    );
    rep.push("log_f", det.log_f);
    rep.push("f", det.log_f.exp());
    rep.push("est_error", det.est_error);
    rep.push(
        "double_double",
        if det.precision == Precision::DoubleDouble {
            1.0
        } else {
            0.0
        },
    );
    rep.convergence = det
        .resolutions
        .iter()
        .map(|r| ConvergencePoint {
            resolution: r.nodes_per_panel,
            value: r.log_f,
        })
        .collect();
    rep.verdict("converged", det.converged);
    Ok(rep)
}

// ------------------------------------------------------------ compare

#[derive(Clone, Debug, Args)]
pub struct CompareArgs {
    /// Configuration JSON with `tau` (or `x` and `r`) and weights
    pub config: PathBuf,
    /// Ascending scales r > 1, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub r_list: Vec<f64>,
    /// Also write the per-r table as CSV
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub numerics: Numerics,
}

pub const COMPARE_COLUMNS: [&str; 6] = [
    "r",
    "log_numeric",
    "log_asymptotic",
    "gap",
    "scaled_gap",
    "est_error",
];

pub fn compare_rows(cfg: &RunConfig, rs: &[f64], num: &Numerics) -> CliResult<Vec<Vec<f64>>> {
    if rs.is_empty() {
        return Err(CliError::validation("the r list is empty"));
    }
    if rs.iter().any(|&r| !(r > 1.0) || !r.is_finite()) {
        return Err(CliError::validation("every r must be finite and > 1"));
    }
    if !rs.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::validation(
            "the r list must be strictly ascending",
        ));
    }
    cfg.shape()?;
    rs.iter()
        .map(|&r| {
            let p = evaluate(cfg, Some(r), num)?;
            let a = p.asymptotic?;
            let gap = (p.numeric - a).abs();
            Ok(vec![r, p.numeric, a, gap, scaled_gap(gap, r), p.est_error])
        })
        .collect()
}

pub fn cmd_compare(args: &CompareArgs) -> CliResult<RunReport> {
    let cfg = RunConfig::load(&args.config)?;
    let rows = compare_rows(&cfg, &args.r_list, &args.numerics)?;
    let betas = cfg.betas()?;
    let form = match (betas[0], betas.len()) {
        (None, 1) => "tail_s0",
        (None, _) => "first_gap_s0",
        _ => "product",
    };
    let mut rep = RunReport::new(
        "compare",
        json!({ "config": cfg, "numerics": args.numerics.echo(), "r_list": args.r_list, "form": form }),
    );
    let gaps: Vec<f64> = rows.iter().map(|r| r[3]).collect();
    for row in &rows {
        rep.push(format!("gap@r={}", row[0]), row[3]);
    }
    rep.verdict("gap_strictly_decreasing", strictly_decreasing(&gaps));
    if let Some(path) = &args.csv {
        let cells: Vec<Vec<Option<f64>>> = rows
            .iter()
            .map(|r| r.iter().copied().map(Some).collect())
            .collect();
        write_csv(path, &COMPARE_COLUMNS, &cells)?;
    }
    rep.tables.push(Table {
        name: "compare".into(),
        columns: COMPARE_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows,
    });
    Ok(rep)
}

// -------------------------------------------------------------- stats

#[derive(Clone, Debug, Args)]
pub struct StatsArgs {
    /// Mean and variance of the number of points in (x, ∞)
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    /// Variance of the count in (a, b), with additivity checks
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    pub interval: Option<Vec<f64>>,
    /// Shape (τ₁, τ₂) for the covariance of the counts in (rτ₁, ∞) and (rτ₂, ∞)
    #[arg(long, num_args = 2, value_names = ["TAU1", "TAU2"], allow_hyphen_values = true, requires = "r")]
    pub tau: Option<Vec<f64>>,
    /// Scale for --tau
    #[arg(long, requires = "tau")]
    pub r: Option<f64>,
}

pub fn cmd_stats(args: &StatsArgs) -> CliResult<RunReport> {
    if args.x.is_none() && args.interval.is_none() && args.tau.is_none() {
        return Err(CliError::validation(
            "give at least one of --x, --interval, --tau",
        ));
    }
    let mut rep = RunReport::new(
        "stats",
        json!({ "x": args.x, "interval": args.interval, "tau": args.tau, "r": args.r }),
    );
    if let Some(x) = args.x {
        let set = IntervalSet::half_line(x)?;
        let mean = mean_count(&set)?;
        let var = var_count(&set)?;
        rep.push("mean", mean);
        rep.push("var", var);
        if x < 0.0 {
            let (m_a, v_a) = asym::moment_asym(x)?;
            rep.push("mean_asymptotic", m_a);
            rep.push("var_asymptotic", v_a);
            rep.push("mean_gap", (mean - m_a).abs());
            rep.push("var_gap", (var - v_a).abs());
        }
    }
    if let Some(iv) = &args.interval {
        let (a, b) = (iv[0], iv[1]);
        let whole = IntervalSet::interval(a, b)?;
        let c = 0.5 * (a + b);
        let left = IntervalSet::interval(a, c)?;
        let right = IntervalSet::interval(c, b)?;
        let var = var_count(&whole)?;
        rep.push("interval_mean", mean_count(&whole)?);
        rep.push("interval_var", var);
        let add = mean_count(&left)? + mean_count(&right)? - mean_count(&whole)?;
        rep.push("additivity_residual", add.abs());
        let bil = var_count(&left)? + var_count(&right)? + 2.0 * cov_count(&left, &right)? - var;
        rep.push("bilinearity_residual", bil.abs());
        rep.verdict("additivity", add.abs() < IDENTITY_TOL);
        rep.verdict("bilinearity", bil.abs() < IDENTITY_TOL);
    }
    if let (Some(tau), Some(r)) = (&args.tau, args.r) {
        let (t1, t2) = (tau[0], tau[1]);
        let sig = asym::sigma_cov(t1, t2)?;
        if !(r > 0.0) {
            return Err(CliError::validation("--r must be positive"));
        }
        let cov = cov_tails(r * t1, r * t2)?;
        rep.push("cov", cov);
        rep.push("cov_asymptotic", sig);
        rep.push("cov_gap", (cov - sig).abs());
        let var = var_count(&IntervalSet::interval(r * t2, r * t1)?)?;
        let var_a = asym::var_interval_asym(r, t1, t2)?;
        rep.push("interval_var_scaled", var);
        rep.push("interval_var_asymptotic", var_a);
        rep.push("interval_var_gap", (var - var_a).abs());
    }
    Ok(rep)
}

// -------------------------------------------------------------- sweep

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    /// Template configuration JSON
    pub config: PathBuf,
    /// Field to vary: r, nodes, beta_J or s_J (J counted from 1)
    #[arg(long)]
    pub vary: String,
    /// Values, comma separated
    #[arg(long, allow_hyphen_values = true)]
    pub values: String,
    /// Output CSV
    #[arg(long)]
    pub csv: PathBuf,
    #[command(flatten)]
    pub numerics: Numerics,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepField {
    R,
    Nodes,
    Beta(usize),
    S(usize),
}

impl std::str::FromStr for SweepField {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        let index = |t: &str| -> CliResult<usize> {
            t.parse::<usize>()
                .ok()
                .filter(|&j| j >= 1)
                .ok_or_else(|| CliError::validation(format!("bad index in `{s}`")))
        };
        match s {
            "r" => Ok(SweepField::R),
            "nodes" => Ok(SweepField::Nodes),
            _ if s.starts_with("beta_") => Ok(SweepField::Beta(index(&s[5..])?)),
            _ if s.starts_with("s_") => Ok(SweepField::S(index(&s[2..])?)),
            _ => Err(CliError::validation(format!(
                "--vary must be r, nodes, beta_J or s_J, got `{s}`"
            ))),
        }
    }
}

pub const SWEEP_COLUMNS: [&str; 6] = [
    "value",
    "log_numeric",
    "log_asymptotic",
    "gap",
    "scaled_gap",
    "est_error",
];

fn sweep_row(
    cfg: &RunConfig,
    field: SweepField,
    value: f64,
    num: &Numerics,
) -> CliResult<Vec<Option<f64>>> {
    let mut cfg = cfg.clone();
    let mut num = num.clone();
    let mut r = None;
    match field {
        SweepField::R => r = Some(value),
        SweepField::Nodes => {
            if value.fract() != 0.0 || value < MIN_NODES as f64 {
                return Err(CliError::validation(format!(
                    "node counts must be integers >= {MIN_NODES}, got {value}"
                )));
            }
            num.nodes = value as usize;
        }
        SweepField::Beta(j) => {
            let mut b: Vec<Option<f64>> = cfg.betas()?.iter().map(|b| b.map(|v| v.im)).collect();
            let slot = b
                .get_mut(j - 1)
                .ok_or_else(|| CliError::validation(format!("beta_{j} is out of range")))?;
            *slot = Some(value);
            cfg.s = None;
            cfg.beta = Some(b);
        }
        SweepField::S(j) => {
            let mut s = cfg.weights()?;
            let slot = s
                .get_mut(j - 1)
                .ok_or_else(|| CliError::validation(format!("s_{j} is out of range")))?;
            *slot = value;
            cfg.beta = None;
            cfg.s = Some(s);
        }
    }
    if field == SweepField::Nodes {
        let config = cfg.gap_config(None)?;
        let scheme = build_scheme(&config, num.nodes, num.tail_for(&config))?;
        let (v, _) = log_det_single(&config, &scheme, num.precision.into())?;
        let a = asymptotic_for(config.x(), &cfg.betas()?).ok();
        let gap = a.map(|a| (v - a).abs());
        return Ok(vec![Some(value), Some(v), a, gap, None, None]);
    }
    let p = evaluate(&cfg, r, &num)?;
    let a = match p.asymptotic {
        Ok(a) => Some(a),
        Err(e) if e.exit_code() == crate::error::EXIT_VALIDATION => None,
        Err(e) => return Err(e),
    };
    let gap = a.map(|a| (p.numeric - a).abs());
    let scaled = match (gap, r) {
        (Some(g), Some(r)) if r > 1.0 => Some(scaled_gap(g, r)),
        _ => None,
    };
    Ok(vec![
        Some(value),
        Some(p.numeric),
        a,
        gap,
        scaled,
        Some(p.est_error),
    ])
}

fn parse_values(text: &str) -> CliResult<Vec<f64>> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::validation(format!("bad value `{t}` in --values")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    if values.is_empty() {
        return Err(CliError::validation("--values is empty"));
    }
    Ok(values)
}

pub fn cmd_sweep(args: &SweepArgs) -> CliResult<RunReport> {
    let field: SweepField = args.vary.parse()?;
    let values = parse_values(&args.values)?;
    let cfg = RunConfig::load(&args.config)?;
    let rows: Vec<Vec<Option<f64>>> = values
        .par_iter()
        .map(|&v| sweep_row(&cfg, field, v, &args.numerics))
        .collect::<CliResult<_>>()?;
    write_csv(&args.csv, &SWEEP_COLUMNS, &rows)?;
    let mut rep = RunReport::new(
        "sweep",
        json!({
            "config": cfg,
            "numerics": args.numerics.echo(),
            "vary": args.vary,
            "values": values,
        }),
    );
    rep.push("rows", rows.len() as f64);
    Ok(rep)
}

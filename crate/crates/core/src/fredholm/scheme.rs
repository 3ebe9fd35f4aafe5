use serde::{Deserialize, Serialize};

use super::config::GapConfig;
use crate::error::{Error, Result};
use crate::specfun::{gauss_legendre, MAX_NODES};

/// Longest allowed panel.
pub const PANEL_LENGTH: f64 = 4.0;
pub const DEFAULT_NODES_PER_PANEL: usize = 48;
pub const MIN_TAIL: f64 = 8.0;
/// Upper end of the truncated half-line never sits below this point.
pub const TAIL_TOP: f64 = 12.0;
pub const DEFAULT_TAIL: f64 = 14.0;
/// Airy evaluations stay inside this bound.
pub const MAX_TOP: f64 = 60.0;

/// Tail length used when the caller does not choose one: at least
/// [`DEFAULT_TAIL`], and long enough that the cut sits at or above
/// [`TAIL_TOP`], where Ai² is below 1e-24.
pub fn default_tail(x1: f64) -> f64 {
    DEFAULT_TAIL.max(TAIL_TOP - x1)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Panel {
    pub a: f64,
    pub b: f64,
    /// 1 − s_j of the interval the panel belongs to.
    pub factor: f64,
    /// j − 1: 0 for (x₁, x₁+T), 1 for (x₂, x₁), ...
    pub interval: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureScheme {
    pub panels: Vec<Panel>,
    pub nodes_per_panel: usize,
    pub tail_length: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub eff_weights: Vec<f64>,
}

/// Splits (a, b) into ⌈(b − a)/4⌉ equal panels.
pub(crate) fn split(a: f64, b: f64) -> Vec<(f64, f64)> {
    let k = ((b - a) / PANEL_LENGTH).ceil().max(1.0) as usize;
    let h = (b - a) / k as f64;
    (0..k)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == k {
                b
            } else {
                a + h * (i + 1) as f64
            };
            (lo, hi)
        })
        .collect()
}

pub fn build_scheme(
    config: &GapConfig,
    nodes_per_panel: usize,
    tail_length: f64,
) -> Result<QuadratureScheme> {
    if !(4..=MAX_NODES).contains(&nodes_per_panel) {
        return Err(Error::invalid(format!(
            "nodes_per_panel must lie in [4, {MAX_NODES}], got {nodes_per_panel}"
        )));
    }
    if !(tail_length >= MIN_TAIL) || !tail_length.is_finite() {
        return Err(Error::invalid(format!(
            "tail length must be at least {MIN_TAIL}, got {tail_length}"
        )));
    }
    let x = config.x();
    let s = config.s();
    let top = x[0] + tail_length;
    if top > MAX_TOP {
        return Err(Error::domain(format!(
            "x₁ + T = {top} exceeds the supported bound {MAX_TOP}"
        )));
    }
    let mut panels = Vec::new();
    for j in (0..x.len()).rev() {
        let (lo, hi) = if j == 0 {
            (x[0], top)
        } else {
            (x[j], x[j - 1])
        };
        if !(hi > lo) {
            return Err(Error::invalid(format!("degenerate interval ({lo}, {hi})")));
        }
        for (a, b) in split(lo, hi) {
            panels.push(Panel {
                a,
                b,
                factor: 1.0 - s[j],
                interval: j,
            });
        }
    }
    let rule = gauss_legendre(nodes_per_panel)?;
    let total = panels.len() * nodes_per_panel;
    let mut nodes = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut eff_weights = Vec::with_capacity(total);
    for p in &panels {
        let mid = 0.5 * (p.a + p.b);
        let half = 0.5 * (p.b - p.a);
        for (t, w) in rule.nodes.iter().zip(&rule.weights) {
            nodes.push(mid + half * t);
            weights.push(half * w);
            eff_weights.push(half * w * p.factor);
        }
    }
    Ok(QuadratureScheme {
        panels,
        nodes_per_panel,
        tail_length,
        nodes,
        weights,
        eff_weights,
    })
}

impl QuadratureScheme {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same panels with a different number of nodes per panel.
    pub fn with_nodes(&self, nodes_per_panel: usize) -> Result<Self> {
        if !(4..=MAX_NODES).contains(&nodes_per_panel) {
            return Err(Error::invalid(format!(
                "nodes_per_panel must lie in [4, {MAX_NODES}], got {nodes_per_panel}"
            )));
        }
        let rule = gauss_legendre(nodes_per_panel)?;
        let mut out = QuadratureScheme {
            panels: self.panels.clone(),
            nodes_per_panel,
            tail_length: self.tail_length,
            nodes: Vec::new(),
            weights: Vec::new(),
            eff_weights: Vec::new(),
        };
        for p in &self.panels {
            let mid = 0.5 * (p.a + p.b);
            let half = 0.5 * (p.b - p.a);
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                out.nodes.push(mid + half * t);
                out.weights.push(half * w);
                out.eff_weights.push(half * w * p.factor);
            }
        }
        Ok(out)
    }

    /// Index of the interval each node belongs to.
    pub fn node_intervals(&self) -> Vec<usize> {
        self.panels
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.interval, self.nodes_per_panel))
            .collect()
    }

    /// Checks that the panels were built for `config`.
    pub fn check_against(&self, config: &GapConfig) -> Result<()> {
        let s = config.s();
        let x = config.x();
        let ok = !self.panels.is_empty()
            && self.panels.iter().all(|p| {
                p.interval < s.len()
                    && p.factor == 1.0 - s[p.interval]
                    && p.a >= x[p.interval]
                    && (p.interval == 0 || p.b <= x[p.interval - 1])
            })
            && self.panels[0].a == x[x.len() - 1];
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(
                "quadrature scheme does not match the config",
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_interval_layout() {
        let c = GapConfig::single(-2.0, 0.0).unwrap();
        let s = build_scheme(&c, 10, 12.0).unwrap();
        assert_eq!(s.panels.len(), 3);
        assert!(s.panels.iter().all(|p| p.factor == 1.0 && p.interval == 0));
        assert_eq!(s.panels[0].a, -2.0);
        assert_eq!(s.panels[2].b, 10.0);
        assert_eq!(s.len(), 30);
        let total: f64 = s.weights.iter().sum();
        assert!((total - 12.0).abs() < 1e-13);
    }

    #[test]
    fn two_interval_factors() {
        let c = GapConfig::new(vec![-1.0, -3.0], vec![0.5, 0.2]).unwrap();
        let s = build_scheme(&c, 8, 12.0).unwrap();
        assert_eq!(s.panels[0].a, -3.0);
        assert_eq!(s.panels[0].b, -1.0);
        assert!((s.panels[0].factor - 0.8).abs() < 1e-16);
        assert!(s.panels[1..].iter().all(|p| p.factor == 0.5 && p.a >= -1.0));
        for w in s.panels.windows(2) {
            assert!(w[0].b <= w[1].a);
        }
        s.check_against(&c).unwrap();
    }

    #[test]
    fn long_interior_intervals_are_split() {
        let c = GapConfig::new(vec![-1.0, -10.0], vec![0.5, 0.2]).unwrap();
        let s = build_scheme(&c, 8, 12.0).unwrap();
        let inner: Vec<_> = s.panels.iter().filter(|p| p.interval == 1).collect();
        assert_eq!(inner.len(), 3);
        assert!(inner.iter().all(|p| p.b - p.a <= PANEL_LENGTH));
    }

    #[test]
    fn unit_weights_vanish() {
        let c = GapConfig::new(vec![-1.0, -3.0], vec![1.0, 1.0]).unwrap();
        let s = build_scheme(&c, 8, 12.0).unwrap();
        assert!(s.eff_weights.iter().all(|&w| w == 0.0));
    }

    #[test]
    fn rejects_bad_parameters() {
        let c = GapConfig::single(-2.0, 0.0).unwrap();
        assert!(build_scheme(&c, 3, 12.0).is_err());
        assert!(build_scheme(&c, 8, 7.9).is_err());
        assert!(build_scheme(&c, 8, 70.0).is_err());
    }

    #[test]
    fn refinement_keeps_panels() {
        let c = GapConfig::new(vec![-1.0, -3.0], vec![0.5, 0.2]).unwrap();
        let s = build_scheme(&c, 8, 12.0).unwrap();
        let t = s.with_nodes(16).unwrap();
        assert_eq!(t.panels, s.panels);
        assert_eq!(t, build_scheme(&c, 16, 12.0).unwrap());
    }
}

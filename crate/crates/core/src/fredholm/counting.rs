//! Moments of counting functions N_A of the Airy process, by discretized
//! kernel traces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scheme::{split, DEFAULT_NODES_PER_PANEL, DEFAULT_TAIL, MAX_TOP, TAIL_TOP};
use crate::error::{Error, Result};
use crate::specfun::{airy_ai_real, gauss_legendre};

use super::config::MIN_X;

/// Finite union of disjoint open intervals; `b = +∞` marks a half-line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::invalid("interval set is empty"));
        }
        for &(a, b) in &intervals {
            if !a.is_finite() || b.is_nan() || !(b > a) {
                return Err(Error::invalid(format!("bad interval ({a}, {b})")));
            }
            if a < MIN_X || (b.is_finite() && b > MAX_TOP) {
                return Err(Error::domain(format!(
                    "interval ({a}, {b}) leaves the supported range [{MIN_X}, {MAX_TOP}]"
                )));
            }
        }
        intervals.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        if intervals.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(Error::invalid("intervals overlap"));
        }
        Ok(IntervalSet { intervals })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        IntervalSet::new(vec![(a, b)])
    }

    pub fn half_line(a: f64) -> Result<Self> {
        IntervalSet::new(vec![(a, f64::INFINITY)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn union(&self, other: &IntervalSet) -> Result<Self> {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        IntervalSet::new(all)
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intervals
            .iter()
            .all(|&(a, b)| other.intervals.iter().all(|&(c, d)| b <= c || d <= a))
    }

    /// Where a half-line starting at `a` is cut off.
    pub fn cutoff(a: f64) -> f64 {
        (a + DEFAULT_TAIL).clamp(TAIL_TOP, MAX_TOP)
    }
}

struct Discretized {
    x: Vec<f64>,
    w: Vec<f64>,
    ai: Vec<f64>,
    aip: Vec<f64>,
}

fn discretize(set: &IntervalSet, n: usize) -> Result<Discretized> {
    let rule = gauss_legendre(n)?;
    let mut x = Vec::new();
    let mut w = Vec::new();
    for &(a, b) in set.intervals() {
        let b = if b.is_finite() {
            b
        } else {
            IntervalSet::cutoff(a)
        };
        if b <= a {
            continue;
        }
        for (p, q) in split(a, b) {
            let mid = 0.5 * (p + q);
            let half = 0.5 * (q - p);
            for (t, wt) in rule.nodes.iter().zip(&rule.weights) {
                x.push(mid + half * t);
                w.push(half * wt);
            }
        }
    }
    let airy: Vec<(f64, f64)> = x
        .par_iter()
        .map(|&t| airy_ai_real(t))
        .collect::<Result<_>>()?;
    Ok(Discretized {
        ai: airy.iter().map(|p| p.0).collect(),
        aip: airy.iter().map(|p| p.1).collect(),
        x,
        w,
    })
}

fn kernel(d: &Discretized, i: usize, e: &Discretized, k: usize) -> f64 {
    let (u, v) = (d.x[i], e.x[k]);
    if u == v {
        return d.aip[i] * d.aip[i] - u * d.ai[i] * d.ai[i];
    }
    (d.ai[i] * e.aip[k] - d.aip[i] * e.ai[k]) / (u - v)
}

fn trace(d: &Discretized) -> f64 {
    (0..d.x.len()).map(|i| d.w[i] * kernel(d, i, d, i)).sum()
}

/// Σ_ik w_i w_k K(x_i, y_k)².
fn hs_pair(d: &Discretized, e: &Discretized) -> f64 {
    (0..d.x.len())
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for k in 0..e.x.len() {
                let kv = kernel(d, i, e, k);
                acc += e.w[k] * kv * kv;
            }
            d.w[i] * acc
        })
        .sum()
}

/// E N_A = ∫_A K(u, u) du.
pub fn mean_count(set: &IntervalSet) -> Result<f64> {
    mean_count_with(set, DEFAULT_NODES_PER_PANEL)
}

pub fn mean_count_with(set: &IntervalSet, nodes_per_panel: usize) -> Result<f64> {
    Ok(trace(&discretize(set, nodes_per_panel)?))
}

/// Var N_A = Tr(χ_A K χ_A) − Tr((χ_A K χ_A)²).
pub fn var_count(set: &IntervalSet) -> Result<f64> {
    var_count_with(set, DEFAULT_NODES_PER_PANEL)
}

pub fn var_count_with(set: &IntervalSet, nodes_per_panel: usize) -> Result<f64> {
    let d = discretize(set, nodes_per_panel)?;
    Ok(trace(&d) - hs_pair(&d, &d))
}

/// Cov(N_A, N_B) = −Tr(χ_A K χ_B K χ_A) for disjoint A and B.
pub fn cov_count(a: &IntervalSet, b: &IntervalSet) -> Result<f64> {
    cov_count_with(a, b, DEFAULT_NODES_PER_PANEL)
}

pub fn cov_count_with(a: &IntervalSet, b: &IntervalSet, nodes_per_panel: usize) -> Result<f64> {
    if !a.is_disjoint(b) {
        return Err(Error::invalid("covariance needs disjoint sets"));
    }
    let d = discretize(a, nodes_per_panel)?;
    let e = discretize(b, nodes_per_panel)?;
    Ok(-hs_pair(&d, &e))
}

/// Cov(N_(x₁,∞), N_(x₂,∞)) for x₁ > x₂, as
/// Var N_(x₁,∞) + Cov(N_(x₁,∞), N_(x₂,x₁)).
pub fn cov_tails(x1: f64, x2: f64) -> Result<f64> {
    if !(x1 > x2) {
        return Err(Error::invalid("cov_tails needs x₁ > x₂"));
    }
    let upper = IntervalSet::half_line(x1)?;
    let lower = IntervalSet::interval(x2, x1)?;
    Ok(var_count(&upper)? + cov_count(&upper, &lower)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn far_right_tail_is_empty() {
        let m = mean_count(&IntervalSet::half_line(10.0).unwrap()).unwrap();
        assert!((0.0..1e-8).contains(&m));
    }

    #[test]
    fn additivity() {
        let whole = mean_count(&IntervalSet::half_line(-4.0).unwrap()).unwrap();
        let top = mean_count(&IntervalSet::half_line(-2.0).unwrap()).unwrap();
        let mid = mean_count(&IntervalSet::interval(-4.0, -2.0).unwrap()).unwrap();
        assert!((whole - top - mid).abs() < 1e-10);
    }

    #[test]
    fn bilinearity() {
        let a = IntervalSet::interval(-6.0, -3.0).unwrap();
        let b = IntervalSet::half_line(-3.0).unwrap();
        let u = a.union(&b).unwrap();
        let lhs = var_count(&u).unwrap();
        let rhs =
            var_count(&a).unwrap() + var_count(&b).unwrap() + 2.0 * cov_count(&a, &b).unwrap();
        assert!((lhs - rhs).abs() < 1e-9);
        assert!(lhs > 0.0);
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let a = IntervalSet::interval(-6.0, -3.0).unwrap();
        let b = IntervalSet::interval(-4.0, -1.0).unwrap();
        assert!(cov_count(&a, &b).is_err());
        assert!(IntervalSet::new(vec![(-6.0, -3.0), (-4.0, -1.0)]).is_err());
    }
}

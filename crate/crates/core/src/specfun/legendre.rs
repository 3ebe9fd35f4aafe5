//! Gauss-Legendre rules on [-1, 1].

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::dd::Dd;
use crate::error::{Error, Result};

pub const MAX_NODES: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Same rule carried in double-double precision.
#[derive(Clone, Debug)]
pub struct QuadRuleDd {
    pub nodes: Vec<Dd>,
    pub weights: Vec<Dd>,
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_f64(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn legendre_dd(n: usize, x: Dd) -> (Dd, Dd) {
    let mut p0 = Dd::ONE;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = (x * p1 * (2.0 * kf - 1.0) - p0 * (kf - 1.0)) / Dd::from_f64(kf);
        p0 = p1;
        p1 = p2;
    }
    let dp = (x * p1 - p0) * (n as f64) / (x * x - Dd::ONE);
    (p1, dp)
}

fn compute_rule(n: usize) -> QuadRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        // Tricomi's initial guess for the i-th largest root
        let theta = std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        for _ in 0..100 {
            let (p, dp) = legendre_f64(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_f64(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadRule { nodes, weights }
}

fn compute_rule_dd(n: usize) -> QuadRuleDd {
    let base = gauss_legendre(n).expect("node count already validated");
    let mut nodes = vec![Dd::ZERO; n];
    let mut weights = vec![Dd::ZERO; n];
    for i in 0..n {
        let mut x = Dd::from_f64(base.nodes[i]);
        if n % 2 == 1 && i == n / 2 {
            x = Dd::ZERO;
        } else {
            for _ in 0..3 {
                let (p, dp) = legendre_dd(n, x);
                x -= p / dp;
            }
        }
        let (_, dp) = legendre_dd(n, x);
        nodes[i] = x;
        weights[i] = Dd::from_f64(2.0) / ((Dd::ONE - x * x) * dp * dp);
    }
    QuadRuleDd { nodes, weights }
}

type Cache<T> = Mutex<HashMap<usize, Arc<T>>>;

fn cache_f64() -> &'static Cache<QuadRule> {
    static C: OnceLock<Cache<QuadRule>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_dd() -> &'static Cache<QuadRuleDd> {
    static C: OnceLock<Cache<QuadRuleDd>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_NODES {
        return Err(Error::invalid(format!(
            "Gauss-Legendre node count must be in 1..={MAX_NODES}, got {n}"
        )));
    }
    Ok(())
}

/// n-point Gauss-Legendre rule, nodes ascending.
pub fn gauss_legendre(n: usize) -> Result<Arc<QuadRule>> {
    check_n(n)?;
    if let Some(r) = cache_f64().lock().unwrap().get(&n) {
        return Ok(r.clone());
    }
    let r = Arc::new(compute_rule(n));
    cache_f64().lock().unwrap().insert(n, r.clone());
    Ok(r)
}

pub fn gauss_legendre_dd(n: usize) -> Result<Arc<QuadRuleDd>> {
    check_n(n)?;
    if let Some(r) = cache_dd().lock().unwrap().get(&n) {
        return Ok(r.clone());
    }
    let r = Arc::new(compute_rule_dd(n));
    cache_dd().lock().unwrap().insert(n, r.clone());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_counts() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(MAX_NODES + 1).is_err());
    }

    #[test]
    fn weights_sum_to_two() {
        for &n in &[1, 2, 5, 48, 160, 1000, 4096] {
            let r = gauss_legendre(n).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-14, "n={n} sum={s}");
        }
    }

    #[test]
    fn exact_for_high_degree() {
        for &n in &[3, 10, 40, 97] {
            let r = gauss_legendre(n).unwrap();
            for d in [0usize, 1, 2 * n - 2, 2 * n - 1] {
                let q: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(x, w)| w * x.powi(d as i32))
                    .sum();
                let exact = if d % 2 == 1 {
                    0.0
                } else {
                    2.0 / (d as f64 + 1.0)
                };
                assert!(
                    (q - exact).abs() <= 1e-13 * exact.abs().max(1e-2),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn dd_rule_refines_f64_rule() {
        let r = gauss_legendre(48).unwrap();
        let d = gauss_legendre_dd(48).unwrap();
        let mut s = Dd::ZERO;
        for i in 0..48 {
            assert!((d.nodes[i].to_f64() - r.nodes[i]).abs() < 1e-15);
            s += d.weights[i];
        }
        assert!((s - Dd::from_f64(2.0)).to_f64().abs() < 1e-29);
    }
}

use rayon::prelude::*;

use super::linalg::Dense;
use super::scheme::QuadratureScheme;
use crate::dd::{Dd, Real};
use crate::error::Result;
use crate::specfun::{airy_ai_dd, airy_ai_real, gauss_legendre_dd};

/// Below this separation the diagonal formula is used.
pub const CONFLUENT_GAP: f64 = 1e-7;

/// The Airy kernel (Ai(u)Ai'(v) − Ai'(u)Ai(v))/(u − v), with its diagonal
/// Ai'(u)² − u Ai(u)².
pub fn airy_kernel(u: f64, v: f64) -> Result<f64> {
    let (au, du) = airy_ai_real(u)?;
    if (u - v).abs() < CONFLUENT_GAP {
        let m = 0.5 * (u + v);
        let (am, dm) = airy_ai_real(m)?;
        return Ok(dm * dm - m * am * am);
    }
    let (av, dv) = airy_ai_real(v)?;
    Ok(kernel_entry(u, au, du, v, av, dv))
}

#[inline]
fn kernel_entry<T: Real>(u: T, au: T, du: T, v: T, av: T, dv: T) -> T {
    (au * dv - du * av) / (u - v)
}

#[inline]
fn kernel_diag<T: Real>(u: T, au: T, du: T) -> T {
    du * du - u * au * au
}

/// Nodes, effective weights and Airy data of the nonzero-weight nodes.
pub(crate) struct NodeData<T> {
    /// Position of each active node in the scheme.
    pub index: Vec<usize>,
    pub x: Vec<T>,
    pub w: Vec<T>,
    pub ai: Vec<T>,
    pub aip: Vec<T>,
}

pub(crate) fn active(scheme: &QuadratureScheme) -> Vec<usize> {
    (0..scheme.len())
        .filter(|&i| scheme.eff_weights[i] != 0.0)
        .collect()
}

pub(crate) fn node_data_f64(scheme: &QuadratureScheme) -> Result<NodeData<f64>> {
    let index = active(scheme);
    let x: Vec<f64> = index.iter().map(|&i| scheme.nodes[i]).collect();
    let w: Vec<f64> = index.iter().map(|&i| scheme.eff_weights[i]).collect();
    let airy: Vec<(f64, f64)> = x
        .par_iter()
        .map(|&t| airy_ai_real(t))
        .collect::<Result<_>>()?;
    Ok(NodeData {
        index,
        x,
        w,
        ai: airy.iter().map(|a| a.0).collect(),
        aip: airy.iter().map(|a| a.1).collect(),
    })
}

/// `s` supplies the weights so that 1 − s_j is formed without rounding.
pub(crate) fn node_data_dd(scheme: &QuadratureScheme, s: &[f64]) -> Result<NodeData<Dd>> {
    let n = scheme.nodes_per_panel;
    let rule = gauss_legendre_dd(n)?;
    let mut all_x = Vec::with_capacity(scheme.len());
    let mut all_w = Vec::with_capacity(scheme.len());
    for p in &scheme.panels {
        let a = Dd::from_f64(p.a);
        let b = Dd::from_f64(p.b);
        let mid = (a + b) * 0.5;
        let half = (b - a) * 0.5;
        let factor = Dd::ONE - Dd::from_f64(s[p.interval]);
        for k in 0..n {
            all_x.push(mid + half * rule.nodes[k]);
            all_w.push(half * rule.weights[k] * factor);
        }
    }
    let index = active(scheme);
    let x: Vec<Dd> = index.iter().map(|&i| all_x[i]).collect();
    let w: Vec<Dd> = index.iter().map(|&i| all_w[i]).collect();
    let airy = airy_ai_dd(&x)?;
    Ok(NodeData {
        index,
        x,
        w,
        ai: airy.iter().map(|a| a.0).collect(),
        aip: airy.iter().map(|a| a.1).collect(),
    })
}

/// Symmetrically weighted kernel matrix A with
/// A_ik = √|w_i| K(x_i, x_k) √|w_k| sgn(w_k); similar to K·diag(w).
pub(crate) fn weighted_kernel<T: Real>(d: &NodeData<T>) -> Dense<T> {
    let n = d.x.len();
    let root: Vec<T> =
        d.w.iter()
            .map(|&w| {
                if w.to_f64() < 0.0 {
                    (-w).sqrt()
                } else {
                    w.sqrt()
                }
            })
            .collect();
    let sign: Vec<bool> = d.w.iter().map(|w| w.to_f64() < 0.0).collect();
    let mut a = Dense::zeros(n);
    a.data
        .par_chunks_mut(n.max(1))
        .enumerate()
        .for_each(|(i, row)| {
            for k in 0..n {
                let kv = if i == k {
                    kernel_diag(d.x[i], d.ai[i], d.aip[i])
                } else {
                    kernel_entry(d.x[i], d.ai[i], d.aip[i], d.x[k], d.ai[k], d.aip[k])
                };
                let v = root[i] * kv * root[k];
                row[k] = if sign[k] { -v } else { v };
            }
        });
    a
}

/// I − A.
pub(crate) fn identity_minus<T: Real>(a: &Dense<T>) -> Dense<T> {
    let mut m = a.clone();
    for v in m.data.iter_mut() {
        *v = -*v;
    }
    for i in 0..m.n {
        let d = m.get(i, i) + T::one();
        m.set(i, i, d);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::consts::{AI0, AIP0};

    #[test]
    fn symmetric_on_grid() {
        for i in 0..50 {
            let u = -8.0 + 0.31 * i as f64;
            let v = 3.0 - 0.17 * i as f64;
            let a = airy_kernel(u, v).unwrap();
            let b = airy_kernel(v, u).unwrap();
            assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-3), "{u} {v}");
        }
    }

    #[test]
    fn origin_value() {
        let k = airy_kernel(0.0, 0.0).unwrap();
        assert!((k - AIP0 * AIP0).abs() < 1e-16);
        assert!((AI0 - 0.3550280538878172).abs() < 1e-15);
    }

    #[test]
    fn confluence() {
        // K(u, v) is smooth; the off-diagonal value at a separation of 1e-5
        // differs from the diagonal at u by about K_v(u,u)·1e-5.
        let u = -1.0;
        let v = -1.0 + 1e-5;
        let off = airy_kernel(u, v).unwrap();
        let mid = airy_kernel(0.5 * (u + v), 0.5 * (u + v)).unwrap();
        assert!((off - mid).abs() < 1e-8, "{off} {mid}");
        let near = airy_kernel(u, u + 5e-8).unwrap();
        let diag = airy_kernel(u, u).unwrap();
        assert!((near - diag).abs() < 1e-7);
    }
}

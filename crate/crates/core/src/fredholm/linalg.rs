//! Dense LU with partial pivoting, generic over f64 and double-double.

use rayon::prelude::*;

use crate::dd::Real;
use crate::error::{Error, Result};

/// Rows below this size are updated serially.
const PAR_THRESHOLD: usize = 96;

/// Row-major square matrix.
#[derive(Clone, Debug)]
pub struct Dense<T> {
    pub n: usize,
    pub data: Vec<T>,
}

impl<T: Real> Dense<T> {
    pub fn zeros(n: usize) -> Self {
        Dense {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> T {
        self.data[i * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, k: usize, v: T) {
        self.data[i * self.n + k] = v;
    }
}

/// In-place LU factors: unit lower triangle below the diagonal, U on and
/// above it; `perm[i]` is the original row now stored at row i.
pub struct Lu<T> {
    pub factors: Dense<T>,
    pub perm: Vec<usize>,
    pub sign: f64,
}

impl<T: Real> Lu<T> {
    pub fn factor(mut a: Dense<T>) -> Result<Self> {
        let n = a.n;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let mut p = k;
            let mut best = a.get(k, k).abs_f64();
            for i in k + 1..n {
                let v = a.get(i, k).abs_f64();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Error::numerical(format!(
                    "LU breakdown at column {k} of {n} (pivot {best:e})"
                )));
            }
            if p != k {
                for c in 0..n {
                    a.data.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let (head, tail) = a.data.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..(k + 1) * n];
            let piv = pivot_row[k];
            let update = |row: &mut [T]| {
                let l = row[k] / piv;
                row[k] = l;
                for c in k + 1..n {
                    let u = pivot_row[c];
                    row[c] -= l * u;
                }
            };
            if n - k > PAR_THRESHOLD {
                tail.par_chunks_mut(n).for_each(update);
            } else {
                tail.chunks_mut(n).for_each(update);
            }
        }
        Ok(Lu {
            factors: a,
            perm,
            sign,
        })
    }

    pub fn pivots(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.factors.n).map(move |i| self.factors.get(i, i))
    }

    /// log|det| and the sign of det.
    pub fn log_abs_det(&self) -> (f64, f64) {
        let mut s = self.sign;
        let mut acc = 0.0;
        for p in self.pivots() {
            if p.to_f64() < 0.0 {
                s = -s;
            }
            acc += p.ln_abs();
        }
        (acc, s)
    }

    pub fn min_abs_pivot(&self) -> f64 {
        self.pivots()
            .map(|p| p.abs_f64())
            .fold(f64::INFINITY, f64::min)
    }

    /// Inverse-iteration estimate of the smallest |eigenvalue|, in f64.
    pub fn smallest_eigenvalue_estimate(&self) -> f64 {
        let n = self.factors.n;
        if n == 0 {
            return f64::INFINITY;
        }
        let mut v: Vec<T> = (0..n)
            .map(|i| T::from_f64(1.0 + 0.5 * ((i as f64) * 0.7548776662466927).fract()))
            .collect();
        let mut est = f64::INFINITY;
        for _ in 0..8 {
            let norm_in = v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
            self.solve_in_place(&mut v);
            let norm_out = v.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt();
            if !(norm_out > 0.0) || !norm_out.is_finite() {
                return 0.0;
            }
            est = norm_in / norm_out;
            let inv = T::from_f64(1.0 / norm_out);
            for x in v.iter_mut() {
                *x = *x * inv;
            }
        }
        est
    }

    /// Solves A x = b in place.
    pub fn solve_in_place(&self, b: &mut [T]) {
        let n = self.factors.n;
        let mut y: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = y[i];
            for k in 0..i {
                acc -= self.factors.get(i, k) * y[k];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for k in i + 1..n {
                acc -= self.factors.get(i, k) * y[k];
            }
            y[i] = acc / self.factors.get(i, i);
        }
        b.copy_from_slice(&y);
    }
}

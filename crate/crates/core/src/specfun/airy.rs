//! Airy function Ai and its derivative.
//!
//! Small |z| uses the Maclaurin series, large |z| the asymptotic expansion
//! (with the connection formula near the negative axis). In between, the
//! Airy equation w'' = z w is integrated by Taylor steps along the ray
//! through z, inward from the asymptotic region where Ai is recessive and
//! outward from the series region otherwise, so that the stepping is always
//! numerically stable.

use std::f64::consts::{FRAC_PI_3, PI};

use num_complex::Complex64;

use super::consts::{AI0, AI0_DD, AIP0, AIP0_DD};
use crate::dd::Dd;
use crate::error::{Error, Result};

pub const MAX_MODULUS: f64 = 60.0;
const SERIES_RADIUS: f64 = 1.5;
const ASYMPTOTIC_RADIUS: f64 = 10.0;
const STEP: f64 = 0.5;

/// Advance (w, w') of a solution of w'' = z w from z0 to z0 + h.
fn taylor_step(z0: Complex64, w: Complex64, wp: Complex64, h: Complex64) -> (Complex64, Complex64) {
    // d_k = c_k h^k with c_{k+2} = (z0 c_k + c_{k-1}) / ((k+1)(k+2))
    let h2 = h * h;
    let a = z0 * h2;
    let b = h2 * h;
    let mut dm1 = Complex64::new(0.0, 0.0);
    let mut d0 = w;
    let mut d1 = wp * h;
    let mut val = d0 + d1;
    let mut der = d1;
    let mut small = 0;
    for k in 0..400 {
        let kf = k as f64;
        let d2 = (a * d0 + b * dm1) / ((kf + 1.0) * (kf + 2.0));
        val += d2;
        der += d2 * (kf + 2.0);
        let scale = val.norm() + der.norm();
        if d2.norm() <= 1e-18 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        dm1 = d0;
        d0 = d1;
        d1 = d2;
    }
    (val, der / h)
}

fn maclaurin(z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    if z == zero {
        return (Complex64::new(AI0, 0.0), Complex64::new(AIP0, 0.0));
    }
    taylor_step(zero, Complex64::new(AI0, 0.0), Complex64::new(AIP0, 0.0), z)
}

/// Asymptotic expansion, accurate for |z| >= 10 and |arg z| <= 2π/3.
fn asymptotic_principal(z: Complex64) -> (Complex64, Complex64) {
    let sz = z.sqrt();
    let qz = sz.sqrt();
    let zeta = z * sz * (2.0 / 3.0);
    let izeta = zeta.inv();
    let mut su = Complex64::new(1.0, 0.0);
    let mut sv = Complex64::new(1.0, 0.0);
    let mut u = 1.0;
    let mut p = Complex64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -u * (6.0 * kf + 1.0) / (6.0 * kf - 1.0);
        p *= -izeta;
        let tu = p * u;
        let mag = tu.norm();
        if mag > last {
            break;
        }
        su += tu;
        sv += p * v;
        last = mag;
        if mag < 1e-18 {
            break;
        }
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    (e * su / qz, -e * qz * sv)
}

fn asymptotic(z: Complex64) -> (Complex64, Complex64) {
    if z.arg().abs() <= 2.0 * PI / 3.0 {
        return asymptotic_principal(z);
    }
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let w2 = w * w;
    let (a1, d1) = asymptotic_principal(w * z);
    let (a2, d2) = asymptotic_principal(w2 * z);
    (-w * a1 - w2 * a2, -w2 * d1 - w * d2)
}

fn march(
    from: Complex64,
    to: Complex64,
    mut w: Complex64,
    mut wp: Complex64,
) -> (Complex64, Complex64) {
    let dist = (to - from).norm();
    let nsteps = (dist / STEP).ceil().max(1.0) as usize;
    let h = (to - from) / nsteps as f64;
    let mut z0 = from;
    for _ in 0..nsteps {
        let (a, b) = taylor_step(z0, w, wp, h);
        w = a;
        wp = b;
        z0 += h;
    }
    (w, wp)
}

/// Ai(z) and Ai'(z) for |z| <= 60.
pub fn airy_ai(z: Complex64) -> Result<(Complex64, Complex64)> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("airy_ai of a non-finite argument"));
    }
    let r = z.norm();
    if r > MAX_MODULUS {
        return Err(Error::domain(format!(
            "airy_ai supports |z| <= {MAX_MODULUS}, got |z| = {r}"
        )));
    }
    Ok(airy_unchecked(z))
}

pub(crate) fn airy_unchecked(z: Complex64) -> (Complex64, Complex64) {
    let r = z.norm();
    if r <= SERIES_RADIUS {
        return maclaurin(z);
    }
    if r >= ASYMPTOTIC_RADIUS {
        return asymptotic(z);
    }
    let dir = z / r;
    if z.arg().abs() <= FRAC_PI_3 {
        let start = dir * ASYMPTOTIC_RADIUS;
        let (w, wp) = asymptotic(start);
        march(start, z, w, wp)
    } else {
        let start = dir * SERIES_RADIUS;
        let (w, wp) = maclaurin(start);
        march(start, z, w, wp)
    }
}

/// Real-argument Ai(x), Ai'(x).
pub fn airy_ai_real(x: f64) -> Result<(f64, f64)> {
    let (a, d) = airy_ai(Complex64::new(x, 0.0))?;
    Ok((a.re, d.re))
}

fn taylor_step_dd(x0: Dd, w: Dd, wp: Dd, h: Dd) -> (Dd, Dd) {
    let h2 = h * h;
    let a = x0 * h2;
    let b = h2 * h;
    let mut dm1 = Dd::ZERO;
    let mut d0 = w;
    let mut d1 = wp * h;
    let mut val = d0 + d1;
    let mut der = d1;
    let mut small = 0;
    for k in 0..400 {
        let kf = k as f64;
        let d2 = (a * d0 + b * dm1) / Dd::from_f64((kf + 1.0) * (kf + 2.0));
        val += d2;
        der += d2 * (kf + 2.0);
        let scale = val.abs().to_f64() + der.abs().to_f64();
        if d2.abs().to_f64() <= 1e-34 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        dm1 = d0;
        d0 = d1;
        d1 = d2;
    }
    (val, der / h)
}

/// Above this point the f64 values are absolutely accurate to ~1e-20 and
/// forward marching would amplify the growing solution Bi.
const DD_MARCH_LIMIT: f64 = 6.0;

/// Ai and Ai' in double-double precision at real points, by marching the
/// Airy equation from the origin. Accuracy is absolute (about 1e-30 on the
/// negative axis and near the origin).
pub fn airy_ai_dd(xs: &[Dd]) -> Result<Vec<(Dd, Dd)>> {
    let mut out = vec![(Dd::ZERO, Dd::ZERO); xs.len()];
    for x in xs {
        if x.to_f64().abs() > MAX_MODULUS {
            return Err(Error::domain(format!(
                "airy_ai supports |x| <= {MAX_MODULUS}, got {}",
                x.to_f64()
            )));
        }
    }
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap());
    let ai0 = Dd::new(AI0_DD.0, AI0_DD.1);
    let aip0 = Dd::new(AIP0_DD.0, AIP0_DD.1);

    // negative side, marching downward
    let (mut pos, mut w, mut wp) = (Dd::ZERO, ai0, aip0);
    for &i in order.iter().filter(|&&i| xs[i].hi < 0.0).rev() {
        (w, wp) = march_dd(pos, xs[i], w, wp);
        pos = xs[i];
        out[i] = (w, wp);
    }
    let (mut pos, mut w, mut wp) = (Dd::ZERO, ai0, aip0);
    for &i in order.iter().filter(|&&i| xs[i].hi >= 0.0) {
        if xs[i].to_f64() > DD_MARCH_LIMIT {
            let (a, d) = airy_unchecked(Complex64::new(xs[i].to_f64(), 0.0));
            out[i] = (Dd::from_f64(a.re), Dd::from_f64(d.re));
            continue;
        }
        (w, wp) = march_dd(pos, xs[i], w, wp);
        pos = xs[i];
        out[i] = (w, wp);
    }
    Ok(out)
}

fn march_dd(from: Dd, to: Dd, mut w: Dd, mut wp: Dd) -> (Dd, Dd) {
    let dist = (to - from).to_f64().abs();
    if dist == 0.0 {
        return (w, wp);
    }
    let nsteps = (dist / STEP).ceil().max(1.0) as usize;
    let h = (to - from) / Dd::from_f64(nsteps as f64);
    let mut x0 = from;
    for k in 0..nsteps {
        (w, wp) = taylor_step_dd(x0, w, wp, h);
        x0 = if k + 1 == nsteps { to } else { x0 + h };
    }
    (w, wp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn origin_values() {
        let (a, d) = airy_ai(c(0.0, 0.0)).unwrap();
        assert_eq!(a.re, AI0);
        assert_eq!(d.re, AIP0);
    }

    #[test]
    fn known_real_values() {
        // reference values from a 50-digit evaluation
        let cases = [
            (1.0, 0.13529241631288142, -0.15914744129679321),
            (-1.0, 0.53556088329235212, -0.010160567116645209),
            (5.0, 1.0834442813607442e-4, -2.4741389086846248e-4),
            (-12.5, -0.27627456138116025, -0.41933133041950516),
            (20.0, 1.6916728686705403e-27, -7.586391625748355e-27),
        ];
        for (x, ai, aip) in cases {
            let (a, d) = airy_ai_real(x).unwrap();
            assert!(
                (a - ai).abs() <= 1e-12 * ai.abs(),
                "Ai({x}) = {a}, want {ai}"
            );
            assert!(
                (d - aip).abs() <= 1e-12 * aip.abs(),
                "Ai'({x}) = {d}, want {aip}"
            );
        }
    }

    #[test]
    fn regions_overlap() {
        for k in 0..24 {
            let th = -PI + (k as f64 + 0.5) * 2.0 * PI / 24.0;
            let dir = Complex64::from_polar(1.0, th);
            for r in [SERIES_RADIUS, ASYMPTOTIC_RADIUS] {
                let z = dir * r;
                let (a, d) = airy_unchecked(z);
                let (a2, d2) = if r == SERIES_RADIUS {
                    let start = dir * ASYMPTOTIC_RADIUS;
                    let (w, wp) = asymptotic(start);
                    march(start, z, w, wp)
                } else {
                    let start = dir * SERIES_RADIUS;
                    let (w, wp) = maclaurin(start);
                    march(start, z, w, wp)
                };
                if (r == SERIES_RADIUS) == (th.abs() <= FRAC_PI_3) {
                    assert!(rel(a, a2) < 1e-10, "Ai overlap at {z}: {a} vs {a2}");
                    assert!(rel(d, d2) < 1e-10, "Ai' overlap at {z}: {d} vs {d2}");
                }
            }
        }
    }

    #[test]
    fn domain_limit() {
        assert!(matches!(airy_ai(c(61.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn dd_matches_f64() {
        let xs: Vec<Dd> = [-40.0, -12.3, -3.0, -0.1, 0.0, 0.7, 4.0, 9.0]
            .iter()
            .map(|&x| Dd::from_f64(x))
            .collect();
        let v = airy_ai_dd(&xs).unwrap();
        for (x, (a, d)) in xs.iter().zip(v) {
            let (af, df) = airy_ai_real(x.to_f64()).unwrap();
            let scale = af.abs().max(1e-3);
            assert!((a.to_f64() - af).abs() < 1e-13 * scale, "x={x}");
            assert!(
                (d.to_f64() - df).abs() < 1e-13 * df.abs().max(1e-3),
                "x={x}"
            );
        }
    }
}

//! Kummer functions M(a, 1, z) and U(a, 1, z) with derivatives.
//!
//! U is the logarithmic (b = 1) solution. It is evaluated on the Riemann
//! surface of log z: a point is given by its modulus and an unrestricted
//! argument, and sheets other than the principal one are reached through
//! U(a,1,z e^{2πim}) = U(a,1,z) − 2πim M(a,1,z)/Γ(a).
//!
//! Regions: ascending series for |z| <= 2, asymptotic series for |z| >= 36,
//! and Taylor stepping of the Kummer equation in between (inward for
//! Re z >= 0, outward for Re z < 0, always the stable direction for U).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{digamma, rgamma, rgamma_digamma};

type C = Complex64;

const SERIES_RADIUS: f64 = 2.0;
const ASYMPTOTIC_RADIUS: f64 = 36.0;
/// Largest |z| − Re z for which the M series is summed directly.
const M_SERIES_LOSS: f64 = 5.0;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Point on the Riemann surface of log: z = r e^{iθ}.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SheetPoint {
    pub r: f64,
    pub theta: f64,
}

impl SheetPoint {
    pub fn new(r: f64, theta: f64) -> Self {
        SheetPoint { r, theta }
    }

    pub fn from_principal(z: C) -> Self {
        SheetPoint {
            r: z.norm(),
            theta: z.arg(),
        }
    }

    pub fn value(&self) -> C {
        C::from_polar(self.r, self.theta)
    }

    pub fn ln(&self) -> C {
        c(self.r.ln(), self.theta)
    }

    pub fn rotate(&self, phi: f64) -> Self {
        SheetPoint {
            r: self.r,
            theta: self.theta + phi,
        }
    }
}

/// M(a,1,z) and its derivative by the ascending series.
fn m_series(a: C, z: C) -> (C, C) {
    let mut t = c(1.0, 0.0);
    let mut sum = t;
    let mut dsum = c(0.0, 0.0);
    let mut small = 0;
    let kmax = 60 + (4.0 * z.norm()) as usize;
    for k in 0..kmax {
        let kf = k as f64;
        // derivative term uses t_{k+1} (k+1) / z, written without dividing by z
        let dt = t * (a + kf) / (kf + 1.0);
        t = t * (a + kf) * z / ((kf + 1.0) * (kf + 1.0));
        sum += t;
        dsum += dt;
        if t.norm() <= 1e-17 * sum.norm()
            && dt.norm() <= 1e-17 * dsum.norm().max(1e-300)
            && kf > z.norm()
        {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        if t == c(0.0, 0.0) && dt == c(0.0, 0.0) {
            break;
        }
    }
    (sum, dsum)
}

/// M(a,1,z) and M'(a,1,z) for any finite z.
pub(crate) fn kummer_m(a: C, z: C) -> (C, C) {
    if z.re < 0.0 {
        let (m1, d1) = kummer_m(c(1.0, 0.0) - a, -z);
        let e = z.exp();
        return (e * m1, e * (m1 - d1));
    }
    if z.norm() - z.re <= M_SERIES_LOSS {
        return m_series(a, z);
    }
    // connection through U, choosing the rotation that stays principal
    let (sign, rot) = if z.im >= 0.0 { (-1.0, -PI) } else { (1.0, PI) };
    let p = SheetPoint::from_principal(z);
    let (u1, du1) = kummer_u_principal(a, p);
    let (u2, du2) = kummer_u_principal(c(1.0, 0.0) - a, p.rotate(rot));
    let e1 = (c(0.0, -sign * PI) * a).exp() * rgamma(c(1.0, 0.0) - a);
    let e2 = (c(0.0, sign * PI) * (c(1.0, 0.0) - a)).exp() * rgamma(a) * z.exp();
    // d/dz U(1−a,1,−z) = −U'(1−a,1,−z)
    (e1 * u1 + e2 * u2, e1 * du1 + e2 * (u2 - du2))
}

/// Ascending logarithmic series for U(a,1,z), valid on any sheet.
fn u_series(a: C, p: SheetPoint) -> (C, C) {
    let z = p.value();
    let lz = p.ln();
    let euler = -digamma(c(1.0, 0.0)).unwrap_or_default();
    // k = 0: rΓ(a)(ln z + ψ(a) − 2ψ(1)) with rΓ(a)ψ(a) finite at a = 0
    let p0 = rgamma(a);
    let mut sum = p0 * (lz + 2.0 * euler) + rgamma_digamma(a);
    let mut dsum = p0 / z;
    let mut pk = p0;
    let mut zk1 = c(1.0, 0.0); // z^{k-1}
    let psi_a1 = digamma(a + 1.0).unwrap_or_default();
    let mut psi_ak = psi_a1; // ψ(a + k) for k >= 1
    let mut harmonic = 0.0;
    let mut small = 0;
    let kmax = 60 + (4.0 * p.r) as usize;
    for k in 1..kmax {
        let kf = k as f64;
        pk = pk * (a + kf - 1.0) / (kf * kf);
        if k > 1 {
            psi_ak += (a + kf - 1.0).inv();
            zk1 *= z;
        }
        harmonic += 1.0 / kf;
        let psi_1k = harmonic - euler;
        let ck = lz + psi_ak - 2.0 * psi_1k;
        let term = pk * zk1 * z * ck;
        let dterm = pk * zk1 * (ck * kf + 1.0);
        sum += term;
        dsum += dterm;
        let scale = sum.norm() + dsum.norm() * p.r;
        if term.norm() + dterm.norm() * p.r <= 1e-17 * scale && kf > p.r {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (-sum, -dsum)
}

/// Large-|z| expansion U ~ z^{-a} Σ (a)_k² (−z)^{-k}/k!, for |θ| <= π.
fn u_asymptotic(a: C, p: SheetPoint) -> (C, C) {
    let z = p.value();
    let iz = z.inv();
    let mut t = c(1.0, 0.0);
    let mut sum = t;
    let mut last = f64::INFINITY;
    // derivative of z^{-a} Σ t_k with t_k ∝ z^{-k}: −z^{-a-1} Σ (a + k) t_k
    let mut dsum = a;
    for k in 0..200 {
        let kf = k as f64;
        let next = -t * (a + kf) * (a + kf) * iz / (kf + 1.0);
        let mag = next.norm();
        if mag > last || mag == 0.0 {
            break;
        }
        t = next;
        sum += t;
        dsum += t * (a + kf + 1.0);
        last = mag;
        if mag < 1e-18 * sum.norm() {
            break;
        }
    }
    let za = (-a * p.ln()).exp();
    (za * sum, -za * iz * dsum)
}

/// Advance a solution of z w'' + (1 − z) w' − a w = 0 from z0 to z0 + h.
fn kummer_step(a: C, z0: C, w: C, wp: C, h: C) -> (C, C) {
    let mut d0 = w;
    let mut d1 = wp * h;
    let mut val = d0 + d1;
    let mut der = d1;
    let mut small = 0;
    let h2 = h * h;
    for k in 0..500 {
        let kf = k as f64;
        let num = (a + kf) * d0 * h2 - (kf + 1.0) * (kf + 1.0 - z0) * d1 * h;
        let d2 = num / (z0 * (kf + 1.0) * (kf + 2.0));
        val += d2;
        der += d2 * (kf + 2.0);
        if d2.norm() * (kf + 3.0) <= 1e-18 * (val.norm() + der.norm()) {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        d0 = d1;
        d1 = d2;
    }
    (val, der / h)
}

/// Integrate along the ray of direction e^{iθ} from modulus r0 to r1.
fn kummer_march(a: C, theta: f64, r0: f64, r1: f64, mut w: C, mut wp: C) -> (C, C) {
    let dir = C::from_polar(1.0, theta);
    let mut r = r0;
    loop {
        let remaining = r1 - r;
        if remaining.abs() < 1e-15 * r1 {
            break;
        }
        let hmax = (0.4 * r).min(3.0);
        let hr = if remaining.abs() <= hmax {
            remaining
        } else {
            hmax * remaining.signum()
        };
        let (a1, b1) = kummer_step(a, dir * r, w, wp, dir * hr);
        w = a1;
        wp = b1;
        r += hr;
    }
    (w, wp)
}

/// U(a,1,z) and U'(a,1,z) for −π <= θ <= π.
pub(crate) fn kummer_u_principal(a: C, p: SheetPoint) -> (C, C) {
    if p.r <= SERIES_RADIUS {
        return u_series(a, p);
    }
    if p.r >= ASYMPTOTIC_RADIUS {
        return u_asymptotic(a, p);
    }
    if p.theta.cos() >= 0.0 {
        let start = SheetPoint::new(ASYMPTOTIC_RADIUS, p.theta);
        let (w, wp) = u_asymptotic(a, start);
        kummer_march(a, p.theta, ASYMPTOTIC_RADIUS, p.r, w, wp)
    } else {
        let start = SheetPoint::new(SERIES_RADIUS, p.theta);
        let (w, wp) = u_series(a, start);
        kummer_march(a, p.theta, SERIES_RADIUS, p.r, w, wp)
    }
}

/// U(a,1,z) and U'(a,1,z) on an arbitrary sheet of log z.
pub(crate) fn kummer_u(a: C, p: SheetPoint) -> (C, C) {
    let m = ((p.theta.abs() - PI) / (2.0 * PI)).ceil().max(0.0) * p.theta.signum();
    if m == 0.0 {
        return kummer_u_principal(a, p);
    }
    let pp = SheetPoint::new(p.r, p.theta - 2.0 * PI * m);
    let (u, du) = kummer_u_principal(a, pp);
    let (mm, dm) = kummer_m(a, pp.value());
    let k = c(0.0, 2.0 * PI * m) * rgamma(a);
    (u - k * mm, du - k * dm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminating_cases() {
        // M(0,1,z) = 1, U(0,1,z) = 1, M(1,1,z) = e^z, U(1,1,z) e^{-z} = E1-type, skip
        let z = c(3.0, 4.0);
        let (m, dm) = kummer_m(c(0.0, 0.0), z);
        assert!((m - 1.0).norm() < 1e-15 && dm.norm() < 1e-15);
        let (m, _) = kummer_m(c(1.0, 0.0), z);
        assert!((m - z.exp()).norm() < 1e-13 * z.exp().norm());
        let (u, du) = kummer_u(c(0.0, 0.0), SheetPoint::from_principal(z));
        assert!((u - 1.0).norm() < 1e-15 && du.norm() < 1e-15);
        let (u, _) = kummer_u(c(0.0, 0.0), SheetPoint::new(5.0, 2.5 * PI));
        assert!((u - 1.0).norm() < 1e-14);
    }

    #[test]
    fn wronskian_b1() {
        // W{M, U} = −Γ(1) z^{-1} e^z / Γ(a) for b = 1
        let a = c(0.5, -0.3);
        for &(r, th) in &[
            (0.5, 0.3),
            (1.9, -2.0),
            (5.0, 1.0),
            (12.0, 2.9),
            (20.0, -0.2),
            (40.0, 1.5),
        ] {
            let p = SheetPoint::new(r, th);
            let z = p.value();
            let (m, dm) = kummer_m(a, z);
            let (u, du) = kummer_u(a, p);
            let w = m * du - dm * u;
            let want = -rgamma(a) * z.exp() / z;
            let scale = want.norm().max((m * du).norm());
            assert!((w - want).norm() < 1e-12 * scale, "z={z}: {w} vs {want}");
        }
    }

    #[test]
    fn u_regions_overlap() {
        let a = c(1.0, 0.2);
        for &th in &[0.0, 0.7, 1.5, -1.2] {
            let p = SheetPoint::new(SERIES_RADIUS, th);
            let s = u_series(a, p);
            let (w, wp) = u_asymptotic(a, SheetPoint::new(ASYMPTOTIC_RADIUS, th));
            let m = kummer_march(a, th, ASYMPTOTIC_RADIUS, SERIES_RADIUS, w, wp);
            assert!((s.0 - m.0).norm() < 1e-13 * s.0.norm(), "th={th}");
            assert!((s.1 - m.1).norm() < 1e-13 * s.1.norm(), "th={th}");
        }
        for &th in &[2.0, 2.8, 3.1, -2.5] {
            let p = SheetPoint::new(ASYMPTOTIC_RADIUS, th);
            let s = u_asymptotic(a, p);
            let (w, wp) = u_series(a, SheetPoint::new(SERIES_RADIUS, th));
            let m = kummer_march(a, th, SERIES_RADIUS, ASYMPTOTIC_RADIUS, w, wp);
            assert!((s.0 - m.0).norm() < 1e-12 * s.0.norm(), "th={th}");
            assert!((s.1 - m.1).norm() < 1e-12 * s.1.norm(), "th={th}");
        }
    }

    #[test]
    fn m_matches_reference() {
        // 30-digit reference values of M(1/2 + 0.4i, 1, z) and its derivative
        let a = c(0.5, 0.4);
        let cases = [
            (
                c(6.0, 5.0),
                c(80.796415110579882, -16.506473930624462),
                c(81.277787735328291, -9.7762017128310725),
            ),
            (
                c(3.0, -7.0),
                c(1.7999674994640542, 8.8878112958969201),
                c(2.5340497814458245, 8.4951182592188986),
            ),
            (
                c(-4.0, 6.0),
                c(0.11596610478458656, -0.14796167289310664),
                c(0.013226108456167511, 0.012113938038983187),
            ),
            (
                c(0.5, 20.0),
                c(-0.047119300884474889, 0.042248851224575093),
                c(-0.095815546413334521, 0.12305325314487216),
            ),
            (
                c(-30.0, -10.0),
                c(-0.090929707411572691, -0.12963135889434702),
                c(-0.00081339835275066854, -0.0031690310197330818),
            ),
        ];
        for (z, m, d) in cases {
            let (m1, d1) = kummer_m(a, z);
            assert!((m1 - m).norm() < 1e-12 * m.norm(), "{z}: {m1} vs {m}");
            assert!((d1 - d).norm() < 1e-12 * d.norm(), "{z}: {d1} vs {d}");
        }
    }
}

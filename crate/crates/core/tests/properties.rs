use std::f64::consts::{LN_2, PI};

use airy_gap::asymptotics::{
    beta_from_s, log_e0_asym, log_e0_product_form, log_e_asym, log_e_m1, log_e_product_form,
    log_f_m1_s0, moment_asym, s_from_beta, sigma_cov, thinned_joint_tail_asym, var_interval_asym,
};
use airy_gap::fredholm::{airy_kernel, log_f, GapConfig};
use airy_gap::parametrix::{jump_residual, phi, Model};
use airy_gap::specfun::{digamma, gamma, log_barnes_g, log_gamma};
use airy_gap::Beta;
use num_complex::Complex64;
use proptest::prelude::*;

fn endpoints(m: usize) -> impl Strategy<Value = Vec<f64>> {
    (
        -12.0..-0.3f64,
        proptest::collection::vec(0.05..4.0f64, m - 1),
    )
        .prop_map(|(x1, steps)| {
            let mut x = vec![x1];
            for s in steps {
                let last = *x.last().unwrap();
                x.push(last - s);
            }
            x
        })
}

fn betas(m: usize) -> impl Strategy<Value = Vec<Beta>> {
    proptest::collection::vec((-0.5..0.5f64).prop_map(Beta::imag), m)
}

fn off_pole() -> impl Strategy<Value = Complex64> {
    (0.2..4.0f64, -3.0..3.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #[test]
    fn explicit_and_product_forms(
        (x, b) in (1usize..=5).prop_flat_map(|m| (endpoints(m), betas(m)))
    ) {
        let d = log_e_asym(&x, &b).unwrap().total - log_e_product_form(&x, &b).unwrap();
        prop_assert!(d.abs() < 1e-12);
    }

    #[test]
    fn explicit_and_product_forms_s1_zero(
        (x, b) in (2usize..=5).prop_flat_map(|m| (endpoints(m), betas(m - 1)))
    ) {
        let d = log_e0_asym(&x, &b).unwrap().total - log_e0_product_form(&x, &b).unwrap();
        prop_assert!(d.abs() < 1e-12);
    }

    #[test]
    fn vanishing_last_exponent_drops_out(x in endpoints(3), b in betas(2)) {
        let with = log_e_asym(&x, &[b[0], b[1], Beta::ZERO]).unwrap().total;
        let without = log_e_asym(&x[..2], &b).unwrap().total;
        prop_assert!((with - without).abs() < 1e-12);
    }

    #[test]
    fn covariance_is_scale_invariant(tk in -10.0..-0.1f64, gap in 0.01..10.0f64, lam in 0.1..50.0f64) {
        let tj = tk - gap;
        let a = sigma_cov(tk, tj).unwrap();
        let b = sigma_cov(lam * tk, lam * tj).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        prop_assert!(a > 0.0);
    }

    #[test]
    fn interval_variance_decomposition(r in 1.0..100.0f64, t1 in -5.0..-0.2f64, gap in 0.05..5.0f64) {
        let t2 = t1 - gap;
        let v = var_interval_asym(r, t1, t2).unwrap();
        let (_, v1) = moment_asym(r * t1).unwrap();
        let (_, v2) = moment_asym(r * t2).unwrap();
        let sig = sigma_cov(t1, t2).unwrap();
        prop_assert!((v - (v1 + v2 - 2.0 * sig)).abs() < 1e-12);
        let step = var_interval_asym(2.0 * r, t1, t2).unwrap() - v;
        prop_assert!((step - 3.0 * LN_2 / (2.0 * PI * PI)).abs() < 1e-12);
    }

    #[test]
    fn joint_tail_from_the_s1_zero_expansion(x in endpoints(2), b in -0.5..0.5f64) {
        let beta = Beta::imag(b);
        let lhs = thinned_joint_tail_asym(x[0], x[1], beta).unwrap();
        let rhs = log_f_m1_s0(x[0]).unwrap() + log_e0_asym(&x, &[beta]).unwrap().total;
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn single_point_expansion_is_even_in_the_barnes_part(x in -20.0..-0.3f64, b in 0.0..0.5f64) {
        // the drift is odd in b, everything else even
        let p = log_e_m1(x, Beta::imag(b)).unwrap();
        let m = log_e_m1(x, Beta::imag(-b)).unwrap();
        let drift = 2.0 * PI * b * (2.0 / (3.0 * PI)) * x.abs().powf(1.5);
        prop_assert!(((p - m) - 2.0 * drift).abs() < 1e-10 * drift.abs().max(1.0));
    }

    #[test]
    fn weights_and_exponents_round_trip(s in proptest::collection::vec(0.01..5.0f64, 1..6)) {
        let b = beta_from_s(&s).unwrap();
        let back = s_from_beta(&b).unwrap();
        for (u, v) in s.iter().zip(&back) {
            prop_assert!((u - v).abs() < 1e-12 * u);
        }
    }

    #[test]
    fn kernel_is_symmetric(u in -15.0..8.0f64, v in -15.0..8.0f64) {
        let a = airy_kernel(u, v).unwrap();
        let b = airy_kernel(v, u).unwrap();
        prop_assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn gamma_recurrences(z in off_pole()) {
        let lg = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
        let k = (lg.im / (2.0 * PI)).round();
        prop_assert!((lg - Complex64::new(0.0, 2.0 * PI * k)).norm() < 1e-12);
        let g = gamma(z + 1.0).unwrap() - z * gamma(z).unwrap();
        prop_assert!(g.norm() < 1e-12 * gamma(z + 1.0).unwrap().norm().max(1.0));
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
        prop_assert!(d.norm() < 1e-12);
    }

    #[test]
    fn digamma_is_the_derivative_of_log_gamma(z in off_pole()) {
        let h = 1e-5;
        let fd = (log_gamma(z + h).unwrap() - log_gamma(z - h).unwrap()) / (2.0 * h);
        prop_assert!((fd - digamma(z).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn barnes_recurrence(z in (0.3..3.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))) {
        let ratio = (log_barnes_g(z + 1.0).unwrap() - log_barnes_g(z).unwrap()).exp();
        let g = gamma(z).unwrap();
        prop_assert!((ratio - g).norm() < 1e-10 * g.norm().max(1.0));
    }

    #[test]
    fn parametrices_are_unimodular(r in 0.05..20.0f64, k in 0usize..64, b in -0.5..0.5f64) {
        // angles avoid every jump ray
        let theta = -PI + (k as f64 + 0.41) * 2.0 * PI / 64.0;
        let z = Complex64::from_polar(r, theta);
        for (model, beta) in [(Model::Airy, None), (Model::Bessel, None), (Model::Chg, Some(Beta::imag(b)))] {
            let s = phi(model, z, beta).unwrap();
            prop_assert!(s.det_residual() < 1e-7, "{model} at {z}: {}", s.det_residual());
        }
    }

    #[test]
    fn chg_jumps_hold(b in -0.5..0.5f64, ray in 1usize..=6, t in 0.2..5.0f64) {
        let res = jump_residual(Model::Chg, ray, t, Some(Beta::imag(b))).unwrap();
        prop_assert!(res < 1e-7, "ray {ray} t {t}: {res:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_is_a_probability_and_monotone(
        (x, s) in (1usize..=3).prop_flat_map(|m| (endpoints(m), proptest::collection::vec(0.02..0.98f64, m))),
        j in 0usize..3,
    ) {
        let c = GapConfig::new(x.clone(), s.clone()).unwrap();
        let l = log_f(&c).unwrap().log_f;
        prop_assert!(l <= 1e-14 && l.exp() > 0.0);
        let j = j % s.len();
        let mut up = s.clone();
        up[j] = (s[j] + 0.3).min(1.0);
        let lu = log_f(&GapConfig::new(x, up).unwrap()).unwrap().log_f;
        prop_assert!(lu > l);
    }
}

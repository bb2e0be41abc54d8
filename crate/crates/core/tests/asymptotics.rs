use std::f64::consts::PI;

use proptest::prelude::*;
use zeta_moments::asymptotics::{
    audit_section2, audit_section2_report, chi_threshold, classify_regime, default_audit_delta1_grid,
    default_audit_t_grid, dominance_region, dominance_region_with, default_eps_grid,
    error_envelope, g_expansion_check, g_function, identity_suite, main_term_eq3,
    main_term_eq3_symmetric, main_term_eq3_with, main_term_gonek, main_term_quadratic,
    main_term_thm2, sample_matching_points,
};
use zeta_moments::moments::ShiftParameter;
use zeta_moments::oracle::oracle_zeta;
use zeta_moments::{Complex64, Error};

fn oz(s: Complex64) -> Complex64 {
    oracle_zeta(s, 1e-14).unwrap()
}

fn oracle_log_deriv(s: Complex64) -> Complex64 {
    let h = 1e-5;
    (oz(s + h) - oz(s - h)) / (2.0 * h) / oz(s)
}

/// The conditional main term, term by term from the oracle series.
fn oracle_thm2(d1: f64, d2: f64, t: f64, a: f64) -> f64 {
    let x = t / (2.0 * PI);
    let l = x.ln();
    let d = Complex64::new(d1, d2);
    let one = Complex64::new(1.0, 0.0);
    let ind = if d1 >= -a / t.ln() && d1 < 0.25 { 1.0 } else { 0.0 };
    let z2 = oz(Complex64::new(1.0 + 2.0 * d1, 0.0)).re;
    let mut total = z2 * x * (l - 1.0);
    total += 2.0 * (oracle_log_deriv(one + d) * z2 * x).re;
    total -= 2.0 * (oz(one + d.conj()) * oz(one - d) / (one - d) * (-d * l).exp() * x).re;
    if ind == 1.0 {
        let m = 1.0 - 2.0 * d1;
        let common = oz(Complex64::new(m, 0.0)).re / m * x.powf(m);
        total += common * (l - 1.0 / m);
        total += 2.0 * (oracle_log_deriv(one - d.conj()) * common).re;
    }
    total
}

#[test]
fn thm2_matches_oracle_rederivation() {
    for (d1, d2, t) in [(0.26, 0.1, 1e4), (0.1, 0.05, 1e4), (-0.05, 0.3, 1e5), (0.45, -0.2, 1e6)] {
        let d = ShiftParameter::new(d1, d2).unwrap();
        let got = main_term_thm2(d, t).unwrap();
        let want = oracle_thm2(d1, d2, t, 1.0);
        let scale: f64 = got.terms().iter().map(|v| v.abs()).sum();
        assert!((got.total - want).abs() <= 1e-8 * scale, "δ = {d1}+{d2}i: {} vs {want}", got.total);
    }
    let b = main_term_thm2(ShiftParameter::new(0.3, 0.0).unwrap(), 1e4).unwrap();
    assert_eq!(b.term_secondary_main, 0.0);
    assert_eq!(b.term_logderiv_minus, 0.0);
}

fn admissible() -> impl Strategy<Value = (ShiftParameter, f64)> {
    (2.0f64..12.0, 0.0f64..1.0, -1.0f64..1.0).prop_filter_map("δ₁ near 0", |(e, u, d2)| {
        let t = 10f64.powf(e);
        let l = t.ln();
        let d1 = -1.0 / l + u * (0.5 + 2.0 / l);
        (d1.abs() > 1e-6 && (0.5 - d1).abs() > 1e-6)
            .then(|| (ShiftParameter::new(d1, d2).unwrap(), t))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn conjugation_and_breakdown((d, t) in admissible()) {
        let c = ShiftParameter { delta2: -d.delta2, ..d };
        let a = main_term_thm2(d, t).unwrap();
        let b = main_term_thm2(c, t).unwrap();
        prop_assert_eq!(a.total, b.total);
        prop_assert_eq!(main_term_eq3(d, t).unwrap().total, main_term_eq3(c, t).unwrap().total);
        prop_assert_eq!(g_function(d, t).unwrap().re, g_function(c, t).unwrap().re);
        let sum: f64 = a.terms().iter().sum();
        let scale: f64 = a.terms().iter().map(|v| v.abs()).sum();
        prop_assert!((a.total - sum).abs() <= 1e-12 * scale);
        let g = g_function(d, t).unwrap().re * t / (2.0 * PI);
        prop_assert!((g - a.total).abs() <= 1e-12 * a.total.abs().max(scale * 1e-3));
    }

    #[test]
    fn eq3_equals_thm2_when_cutoffs_agree((d, t) in admissible()) {
        let chi = d.delta1 <= chi_threshold(t);
        let ind = d.delta1 >= -1.0 / t.ln() && d.delta1 < 0.25;
        prop_assume!(chi == ind);
        let e = main_term_eq3(d, t).unwrap().total;
        let h = main_term_thm2(d, t).unwrap().total;
        prop_assert!((e - h).abs() <= 1e-12 * e.abs().max(h.abs()));
    }
}

#[test]
fn identity_suite_passes() {
    let r = identity_suite(1000, 7).unwrap();
    assert!(r.pass, "{r:?}");
    assert_eq!(sample_matching_points(50, 3), sample_matching_points(50, 3));
}

#[test]
fn limit_mode_matches_symmetric_average() {
    for (d2, t) in [(0.1, 1e4), (0.5, 1e6), (-0.3, 1e5)] {
        let lim = main_term_eq3_with(ShiftParameter::new(0.0, d2).unwrap(), t, true).unwrap().total;
        let avg = main_term_eq3_symmetric(d2, t, 1e-7).unwrap();
        assert!((lim - avg).abs() <= 1e-4 * lim.abs(), "δ₂ = {d2}: {lim} vs {avg}");
    }
    assert!(matches!(
        main_term_eq3(ShiftParameter::new(0.0, 0.1).unwrap(), 1e4),
        Err(Error::PoleUncancelled { .. })
    ));
}

#[test]
fn quadratic_and_gonek() {
    let d = ShiftParameter::new(0.01, 0.0).unwrap();
    assert!((main_term_quadratic(d, 1e4) - 95.442_455_844_465_28).abs() < 1e-9);
    let g = main_term_gonek(0.5, 1e4).unwrap();
    let direct = (1.0 - 4.0 / (PI * PI)) * 1e4 / (2.0 * PI) * 1e4f64.ln().powi(2);
    assert!((g - direct).abs() <= 1e-12 * g);
    assert_eq!(main_term_gonek(0.0, 1e4).unwrap(), 0.0);
}

#[test]
fn expansion_residual_bounded() {
    let mut worst: f64 = 0.0;
    for t in [1e4f64, 1e6, 1e8] {
        let l = t.ln();
        for k in 0..=12 {
            let scale = (1e-3 * 1e3f64.powf(k as f64 / 12.0)).min(0.999);
            for j in 0..12 {
                let phi = -PI + 2.0 * PI * (j as f64 + 0.5) / 12.0;
                let r = scale / l;
                let d = ShiftParameter::new(r * phi.cos(), r * phi.sin()).unwrap();
                if d.check_region(t).is_err() {
                    continue;
                }
                worst = worst.max(g_expansion_check(d, t).unwrap().residual);
            }
            let limit = ShiftParameter::new(0.0, scale / l).unwrap();
            worst = worst.max(g_expansion_check(limit, t).unwrap().residual);
        }
    }
    assert!(worst <= 20.0, "C_fit = {worst}");
}

#[test]
fn dominance_report_shape() {
    let eps = default_eps_grid();
    for t in [1e4, 1e6, 1e8] {
        let r = dominance_region(t, &eps).unwrap();
        assert!(r.eps0 >= 0.0 && r.eps0_without_floor <= r.eps0.max(r.eps0_without_floor));
        let dense = dominance_region_with(t, &eps, (64, 64), 1.0).unwrap();
        assert!(dense.eps0 <= r.eps0);
    }
    assert!(matches!(dominance_region(1e4, &[]), Err(Error::EmptyGrid)));
}

#[test]
fn section2_audit_and_boundary_ordering() {
    let r = audit_section2(&default_audit_t_grid(), &default_audit_delta1_grid()).unwrap();
    assert!(r.pass);
    assert!(!r.boundary.is_empty() && r.boundary.iter().all(|b| b.pass));
    let full = audit_section2_report(&[1e6, 1e7, 1e8, 1e10, 1e12], &default_audit_delta1_grid(), 1.0).unwrap();
    assert!(full.pass);
    assert!(matches!(
        audit_section2_report(&[1e3], &default_audit_delta1_grid(), 1.0),
        Err(Error::DomainTooSmall { .. })
    ));
    for t in [1e6f64, 1e9, 1e12] {
        assert!(error_envelope(0.1, t).unwrap() < t);
    }
}

#[test]
fn regime_examples() {
    let r = classify_regime(ShiftParameter::new(0.3, 0.0).unwrap(), 1e4);
    assert!(r.large_condition && !r.gap_zone);
    let t: f64 = 1e10;
    let r = classify_regime(ShiftParameter::new(t.powf(-0.4), 0.0).unwrap(), t);
    assert!(r.gap_zone);
}

mod common;

use common::*;
use num_complex::Complex64;
use std::f64::consts::PI;
use wedgebench::dispersion::*;
use wedgebench::numerics::GridFunction;

fn lorentzian_grid() -> GridFunction {
    GridFunction::from_fn(-50.0, 50.0, 4096, causal_lorentzian).unwrap()
}

#[test]
fn kk_reconstructs_lorentzian_real_part() {
    let a = lorentzian_grid();
    let kk = kk_real_from_imag(&a.imag_part()).unwrap();
    assert!(!kk.nondecaying || kk.end_ratio > 1e-2);
    let err = kk
        .real_part
        .points()
        .map(|(x, v)| (v.re - causal_lorentzian_re(x)).abs())
        .fold(0.0, f64::max);
    assert!(err < 1e-3, "max interior error {err}");
}

#[test]
fn kk_matches_direct_pv_quadrature_for_gaussian() {
    let gauss = |x: f64| (-x * x).exp();
    let im = GridFunction::from_real_fn(-10.0, 10.0, 2001, gauss).unwrap();
    let kk = kk_real_from_imag(&im).unwrap();
    assert!(!kk.nondecaying);
    for (x, v) in kk.real_part.points().step_by(97) {
        let oracle = -folded_pv(&gauss, x, 12.0) / PI;
        assert!((v.re - oracle).abs() < 1e-4, "ω={x}: {} vs {oracle}", v.re);
    }
}

#[test]
fn causal_and_anticausal_lorentzians_are_discriminated() {
    let a = lorentzian_grid();
    let conj = a.map(|_, v| v.conj());
    let c = causality_residual(&a, DEFAULT_CAUSALITY_THRESHOLD).unwrap();
    let n = causality_residual(&conj, DEFAULT_CAUSALITY_THRESHOLD).unwrap();
    assert_eq!(c.verdict, Verdict::Causal);
    assert_eq!(n.verdict, Verdict::Noncausal);
    assert!(c.negative_fraction < 1e-3, "{}", c.negative_fraction);
    assert!(n.negative_fraction > 0.99, "{}", n.negative_fraction);
    assert!(n.negative_fraction / c.negative_fraction > 1e3);
}

#[test]
fn raw_spectral_split_has_correct_orientation_only() {
    let a = lorentzian_grid();
    let raw = raw_negative_fraction(&a).unwrap().unwrap();
    let raw_conj = raw_negative_fraction(&a.map(|_, v| v.conj())).unwrap().unwrap();
    assert!(raw < 0.05 && raw_conj > 0.95);
}

#[test]
fn real_even_profile_is_not_causal() {
    let g = GridFunction::from_real_fn(-10.0, 10.0, 1024, |x| (-x * x).exp()).unwrap();
    let r = causality_residual(&g, DEFAULT_CAUSALITY_THRESHOLD).unwrap();
    assert_eq!(r.verdict, Verdict::Noncausal);
    assert!((r.negative_fraction - 0.5).abs() < 1e-6);
}

#[test]
fn kk_round_trip_stays_causal() {
    let a = GridFunction::from_fn(-40.0, 40.0, 2048, |x| {
        causal_lorentzian(x) + 2.0 / Complex64::new(-x + 3.0, -0.5)
    })
    .unwrap();
    assert_eq!(causality_residual(&a, 1e-2).unwrap().verdict, Verdict::Causal);
    let kk = kk_real_from_imag(&a.imag_part()).unwrap();
    let (lo, _) = kk.trusted;
    let rebuilt = kk.real_part.map(|x, re| {
        let i = lo + ((x - kk.real_part.x_min()) / kk.real_part.spacing()).round() as usize;
        Complex64::new(re.re, a.samples()[i].im)
    });
    let r = causality_residual(&rebuilt, 1e-2).unwrap();
    assert_eq!(r.verdict, Verdict::Causal, "{}", r.negative_fraction);
}

#[test]
fn dispersion_residual_and_subtraction() {
    let a = lorentzian_grid();
    let shifted = a.map(|_, v| v + 1.0);
    assert!(dispersion_residual(&a, Subtraction::None).unwrap() < 1e-3);
    let unsub = dispersion_residual(&shifted, Subtraction::None).unwrap();
    assert!((unsub - 1.0).abs() < 1e-3, "{unsub}");
    let once = Subtraction::Once { omega0: 0.0 };
    let r0 = dispersion_residual(&a, once).unwrap();
    let r1 = dispersion_residual(&shifted, once).unwrap();
    assert!(r1 < 1e-3, "{r1}");
    assert!((r1 - r0).abs() < 1e-10, "{r0} vs {r1}");
}

#[test]
fn subtraction_anchor_must_be_inside() {
    let a = lorentzian_grid();
    assert!(dispersion_residual(&a, Subtraction::Once { omega0: 80.0 }).is_err());
}

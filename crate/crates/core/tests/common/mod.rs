//! Independent oracles shared by integration tests. None of these call the
//! library routine they are used to check.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Causal reference amplitude `1/(−ω − i)`, analytic in the upper half plane.
pub fn causal_lorentzian(w: f64) -> Complex64 {
    Complex64::new(1.0, 0.0) / Complex64::new(-w, -1.0)
}

/// Closed-form real part of the causal Lorentzian.
pub fn causal_lorentzian_re(w: f64) -> f64 {
    -w / (w * w + 1.0)
}

/// Adaptive Simpson on a finite interval, written independently of the
/// library's Gauss-Kronrod.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `PV ∫ f(x)/(ω−x) dx` over the whole line written as the folded regular
/// integral `∫₀^∞ (f(ω−s) − f(ω+s))/s ds`, truncated at `s_max`.
pub fn folded_pv(f: &dyn Fn(f64) -> f64, omega: f64, s_max: f64) -> f64 {
    let g = |s: f64| {
        if s == 0.0 {
            // removable: −2 f′(ω), by a central difference
            let h = 1e-5;
            -(f(omega + h) - f(omega - h)) / h
        } else {
            (f(omega - s) - f(omega + s)) / s
        }
    };
    // Panels keep the adaptive rule honest on long tails.
    let mut acc = 0.0;
    let mut lo = 0.0;
    while lo < s_max {
        let hi = (lo + 1.0).min(s_max);
        acc += adaptive_simpson(&g, lo, hi, 1e-13);
        lo = hi;
    }
    acc
}

/// Plain trapezoid rule.
pub fn trapezoid(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / (n - 1) as f64;
    let mut s = 0.5 * (f(a) + f(b));
    for i in 1..n - 1 {
        s += f(a + i as f64 * h);
    }
    s * h
}

pub fn erf(x: f64) -> f64 {
    // straight from the defining integral
    let v = adaptive_simpson(&|t: f64| (-t * t).exp(), 0.0, x.abs(), 1e-15) * 2.0 / PI.sqrt();
    v.copysign(x)
}

pub mod dpi;
pub mod localization;
pub mod modular;
pub mod unitarization;
pub mod zf;

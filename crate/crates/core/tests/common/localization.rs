//! Position-space charge fluctuation by nested quadrature.

use super::adaptive_simpson;

/// Ramp density written from scratch: ρ = −d/ds ½(1 + cos πt), with t′
/// obtained by a centred difference of the step.
pub fn rho(s: f64) -> f64 {
    if s <= 1e-3 || s >= 1.0 - 1e-3 {
        return 0.0; // e^{−1000}
    }
    let t = |s: f64| {
        let a = (-1.0 / s).exp();
        let b = (-1.0 / (1.0 - s)).exp();
        a / (a + b)
    };
    let h = 1e-5;
    let dt = (t(s + h) - t(s - h)) / (2.0 * h);
    0.5 * std::f64::consts::PI * (std::f64::consts::PI * t(s)).sin() * dt
}

/// Position-space oracle for the chiral kernel (c = 1):
/// `2[∫∫ρρ ln(2L + s + s′) − ∫∫ρρ ln|s−s′|]`, nested adaptive Simpson with
/// the logarithm removed by `s′ = s ± w²`.
pub fn position_oracle(ratio: f64) -> f64 {
    let tol = 1e-10;
    let smooth = adaptive_simpson(
        &|s| rho(s) * adaptive_simpson(&|t| rho(t) * (2.0 * ratio + s + t).ln(), 0.0, 1.0, tol),
        0.0,
        1.0,
        tol,
    );
    let singular = adaptive_simpson(
        &|s| {
            if rho(s) == 0.0 {
                return 0.0;
            }
            let right = adaptive_simpson(
                &|w| 2.0 * w * rho(s + w * w) * if w == 0.0 { 0.0 } else { (w * w).ln() },
                0.0,
                (1.0 - s).sqrt(),
                tol,
            );
            let left = adaptive_simpson(
                &|w| 2.0 * w * rho(s - w * w) * if w == 0.0 { 0.0 } else { (w * w).ln() },
                0.0,
                s.sqrt(),
                tol,
            );
            rho(s) * (left + right)
        },
        0.0,
        1.0,
        tol,
    );
    2.0 * (smooth - singular)
}

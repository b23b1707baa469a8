//! Closed-form phase shift of the separable kernel.

use std::f64::consts::PI;

use super::adaptive_simpson;
use wedgebench::dpi::TwoParticleSystem;

/// Closed form for the separable kernel: `tan δ = −πρλg²/(1 − λ I(q))` with
/// `I(q) = PV ∫₀^∞ g(k)² k² dk/(E_q − E(k))`. The pole is removed by adding
/// `c/(k − q)`, `c = g(q)²q²/E′(q)`, whose PV integral is a logarithm.
pub fn separable_oracle(sys: &TwoParticleSystem, q: f64) -> f64 {
    let m = sys.m;
    let energy = |k: f64| 2.0 * (k * k + m * m).sqrt();
    let numer = |k: f64| (-k * k / (sys.mu * sys.mu)).exp() * k * k;
    let slope = 2.0 * q / (q * q + m * m).sqrt();
    let c = numer(q) / slope;
    let smooth = |k: f64| numer(k) / (energy(q) - energy(k)) + c / (k - q);
    let regular = |k: f64| {
        if (k - q).abs() < 1e-4 {
            0.5 * (smooth(q - 1e-4) + smooth(q + 1e-4))
        } else {
            smooth(k)
        }
    };
    let cut = 12.0;
    let mut integral = -c * ((cut - q) / q).ln();
    let mut lo = 0.0;
    while lo < cut {
        let hi = (lo + 0.5_f64).min(cut);
        integral += adaptive_simpson(&regular, lo, hi, 1e-10);
        lo = hi;
    }
    let rho = q * q / slope;
    let g2 = (-q * q / (sys.mu * sys.mu)).exp();
    (-PI * rho * sys.lambda * g2 / (1.0 - sys.lambda * integral)).atan()
}

//! Closed-form Gaussian overlaps for the modular checks.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `∫ exp(−A θ² + B θ + C) dθ = √(π/A) exp(B²/4A + C)`.
pub fn gaussian_integral(a: Complex64, b: Complex64, cc: Complex64) -> Complex64 {
    (Complex64::from(PI) / a).sqrt() * (b * b / (4.0 * a) + cc).exp()
}

/// Closed form of `∫ g₁(θ + i s) g₂(θ) dθ` for Gaussians of common width `w`.
pub fn shifted_gaussian_overlap(c1: f64, c2: f64, w: f64, s: f64) -> Complex64 {
    let a = Complex64::new(1.0 / (w * w), 0.0);
    let d1 = Complex64::new(c1, -s);
    let b = (d1 + c2) / (w * w);
    let cc = -(d1 * d1 + c2 * c2) / (2.0 * w * w);
    gaussian_integral(a, b, cc)
}

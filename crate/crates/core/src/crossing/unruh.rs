use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `W(z) = 1/(4 sinh²(a z/2))`: vacuum two-point function of a massless
/// field along a worldline of proper acceleration `a`, as a function of
/// complex proper-time difference.
pub fn unruh_correlator(a: f64, z: Complex64) -> Complex64 {
    let s = (a * z / 2.0).sinh();
    1.0 / (4.0 * s * s)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnruhSample {
    pub tau: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs − rhs|/|lhs|`
    pub difference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnruhReport {
    pub acceleration: f64,
    pub beta: f64,
    pub epsilon: f64,
    /// Largest relative difference.
    pub residual: f64,
    pub samples: Vec<UnruhSample>,
}

/// KMS periodicity of the accelerated correlator at inverse temperature
/// `beta`: compares `W(−τ − iε)` with `W(τ − iβ + iε)`, both boundary values
/// approached from inside the analyticity strip `−β < Im z < 0`, with
/// `ε = 1e−8/a`. For `β = 2π/a` the identity is exact.
pub fn unruh_kms_check(a: f64, beta: f64, taus: &[f64]) -> Result<UnruhReport> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("acceleration must be positive, got {a}")));
    }
    if !(beta > 0.0) {
        return Err(Error::domain(format!("β must be positive, got {beta}")));
    }
    let eps = 1e-8 / a;
    let mut samples = Vec::with_capacity(taus.len());
    let mut residual = 0.0f64;
    for &tau in taus {
        // sinh(aτ/2) vanishes at τ ∈ 2πi ℤ/a; on the real line only τ = 0.
        let period = 2.0 * PI / a;
        for k in [0.0, -1.0] {
            let pole = Complex64::new(0.0, k * period);
            for z in [Complex64::new(-tau, -eps), Complex64::new(tau, -beta + eps)] {
                let d = (z - pole).norm();
                if d < eps * 2.0 {
                    return Err(Error::Pole {
                        at: z,
                        pole,
                        distance: d,
                    });
                }
            }
        }
        let lhs = unruh_correlator(a, Complex64::new(-tau, -eps));
        let rhs = unruh_correlator(a, Complex64::new(tau, -beta + eps));
        let difference = (lhs - rhs).norm() / lhs.norm();
        residual = residual.max(difference);
        samples.push(UnruhSample {
            tau,
            lhs,
            rhs,
            difference,
        });
    }
    Ok(UnruhReport {
        acceleration: a,
        beta,
        epsilon: eps,
        residual,
        samples,
    })
}

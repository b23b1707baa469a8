//! Vacuum fluctuation of a smoothly localized partial charge of a chiral
//! current, and its logarithmic growth as the localization edge sharpens.
//!
//! With `⟨j(u)j(u′)⟩ = c/(u − u′ + iε)²` the fluctuation of
//! `Q = ∫ f(u) j(u) du` is, in momentum space,
//!
//! ```text
//! ‖QΩ‖² = c ∫₀^∞ p |f̂(p)|² dp,
//! f̂(p) = (2/p) ∫₀¹ ρ(s) sin(p (R + ΔR s)) ds
//! ```
//!
//! where the profile ramps from 1 to 0 on `R ≤ |u| ≤ R + ΔR` and
//! `ρ = −d(profile)/ds` is the ramp density on the unit interval. The kernel
//! `1/(u−u′)^n` generalizes the measure to `p^{n−1}` (up to normalization).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::quadrature::gauss_legendre;

/// Minimum number of quadrature points across the ramp.
pub const MIN_RAMP_POINTS: usize = 16;

/// Upper limit of the momentum integral in units of `1/ΔR`.
pub const K_MAX: f64 = 60.0;

/// Smooth step `t(s)`: 0 for `s ≤ 0`, 1 for `s ≥ 1`, C^∞.
pub fn ramp_step(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / s).exp();
    let b = (-1.0 / (1.0 - s)).exp();
    a / (a + b)
}

/// Profile on the ramp, `½(1 + cos πt(s))`: 1 at the plateau, 0 outside.
pub fn ramp_profile(s: f64) -> f64 {
    0.5 * (1.0 + (PI * ramp_step(s)).cos())
}

/// `ρ(s) = −d/ds ramp_profile(s)`, a smooth bump of unit mass on `[0, 1]`.
pub fn ramp_density(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / s).exp();
    let b = (-1.0 / (1.0 - s)).exp();
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let t = a / (a + b);
    // t′ = ab (1/s² + 1/(1−s)²) / (a+b)²
    let dt = a * b * (1.0 / (s * s) + 1.0 / ((1.0 - s) * (1.0 - s))) / ((a + b) * (a + b));
    0.5 * PI * (PI * t).sin() * dt
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmearingProfile {
    /// Plateau half-width.
    pub r: f64,
    /// Ramp width.
    pub dr: f64,
    /// Plateau value (1 for the partial charge).
    pub height: f64,
    /// Quadrature points across the ramp.
    pub ramp_points: usize,
}

impl SmearingProfile {
    pub fn new(r: f64, dr: f64) -> Result<Self> {
        let p = Self {
            r,
            dr,
            height: 1.0,
            ramp_points: 128,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dr > 0.0 && self.dr < self.r && self.r.is_finite()) {
            return Err(Error::domain(format!(
                "need 0 < ΔR < R, got R = {}, ΔR = {}",
                self.r, self.dr
            )));
        }
        if !self.height.is_finite() {
            return Err(Error::domain("profile height must be finite"));
        }
        if self.ramp_points < MIN_RAMP_POINTS {
            return Err(Error::Resolution(format!(
                "{} points across the ramp; at least {MIN_RAMP_POINTS} are needed",
                self.ramp_points
            )));
        }
        Ok(())
    }

    /// Profile value at position `u`.
    pub fn value(&self, u: f64) -> f64 {
        self.height * ramp_profile((u.abs() - self.r) / self.dr)
    }

    pub fn ratio(&self) -> f64 {
        self.r / self.dr
    }
}

/// Current two-point function `c/(u − u′ + iε)^n` with `D` components.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurrentModel {
    pub normalization: f64,
    pub components: usize,
    /// 2 for the chiral current; 4 is the negative control.
    pub kernel_power: u32,
}

impl Default for CurrentModel {
    fn default() -> Self {
        Self {
            normalization: 1.0,
            components: 1,
            kernel_power: 2,
        }
    }
}

impl CurrentModel {
    pub fn chiral() -> Self {
        Self::default()
    }

    pub fn with_kernel_power(kernel_power: u32) -> Self {
        Self {
            kernel_power,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.normalization > 0.0) {
            return Err(Error::domain("current normalization must be positive"));
        }
        if self.kernel_power < 2 || self.components == 0 {
            return Err(Error::domain("kernel power must be ≥ 2 and D ≥ 1"));
        }
        Ok(())
    }
}

const CHEB_DEGREE: usize = 20;

/// `ρ̂(k) = ∫₀¹ ρ(s) e^{iks} ds` on `[0, K_MAX]`, tabulated as Chebyshev
/// interpolants on unit blocks from a Gauss-Legendre rule across the ramp.
struct RampTransform {
    blocks: Vec<[Complex64; CHEB_DEGREE]>,
}

impl RampTransform {
    fn new(ramp_points: usize) -> Self {
        let (x, w) = gauss_legendre(ramp_points);
        let nodes: Vec<(f64, f64)> = x
            .iter()
            .zip(&w)
            .map(|(&x, &w)| {
                let s = 0.5 * (x + 1.0);
                (s, 0.5 * w * ramp_density(s))
            })
            .collect();
        let direct = |k: f64| -> Complex64 {
            nodes
                .iter()
                .map(|&(s, w)| Complex64::from_polar(w, k * s))
                .sum()
        };
        let m = CHEB_DEGREE;
        let blocks = (0..K_MAX as usize)
            .map(|b| {
                let centre = b as f64 + 0.5;
                let vals: Vec<Complex64> = (0..m)
                    .map(|j| {
                        let x = (PI * (j as f64 + 0.5) / m as f64).cos();
                        direct(centre + 0.5 * x)
                    })
                    .collect();
                let mut c = [Complex64::new(0.0, 0.0); CHEB_DEGREE];
                for (l, cl) in c.iter_mut().enumerate() {
                    let sum: Complex64 = vals
                        .iter()
                        .enumerate()
                        .map(|(j, v)| v * (PI * l as f64 * (j as f64 + 0.5) / m as f64).cos())
                        .sum();
                    *cl = sum * (2.0 / m as f64);
                }
                c[0] *= 0.5;
                c
            })
            .collect();
        Self { blocks }
    }

    fn eval(&self, k: f64) -> Complex64 {
        if !(0.0..K_MAX).contains(&k) {
            return Complex64::new(0.0, 0.0);
        }
        let b = k as usize;
        let x = 2.0 * (k - b as f64) - 1.0;
        let c = &self.blocks[b];
        // Clenshaw
        let (mut b1, mut b2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for cl in c.iter().skip(1).rev() {
            let t = cl + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = t;
        }
        c[0] + b1 * x - b2
    }
}

/// `‖Q_{R,ΔR}Ω‖²` in momentum space.
///
/// Substituting `k = pΔR` turns the integral into
/// `4c D ΔR^{2−n} ∫₀^{K_MAX} k^{n−3} (Im[e^{ikR/ΔR} ρ̂(k)])² dk`, integrated on
/// panels of width `π ΔR/R` (half a period of the plateau oscillation) with
/// a 12-point Gauss rule.
pub fn charge_fluctuation(profile: &SmearingProfile, model: &CurrentModel) -> Result<f64> {
    profile.validate()?;
    model.validate()?;
    if profile.height == 0.0 {
        return Ok(0.0);
    }
    let transform = RampTransform::new(profile.ramp_points);
    let ratio = profile.ratio();
    let power = model.kernel_power as i32 - 3;
    let (gx, gw) = gauss_legendre(12);
    let panel = PI / ratio;
    let panels = (K_MAX / panel).ceil() as usize;
    // collected before summing so the result does not depend on scheduling
    let panel_sums: Vec<f64> = (0..panels)
        .into_par_iter()
        .map(|j| {
            let a = j as f64 * panel;
            let half = 0.5 * panel.min(K_MAX - a);
            let mid = a + half;
            gx.iter()
                .zip(&gw)
                .map(|(&x, &w)| {
                    let k = mid + half * x;
                    let z = Complex64::from_polar(1.0, k * ratio) * transform.eval(k);
                    w * half * k.powi(power) * z.im * z.im
                })
                .sum::<f64>()
        })
        .collect();
    let integral: f64 = panel_sums.iter().sum();
    let value = 4.0
        * model.normalization
        * model.components as f64
        * profile.dr.powi(2 - model.kernel_power as i32)
        * profile.height
        * profile.height
        * integral;
    if !value.is_finite() {
        return Err(Error::numeric("charge fluctuation is not finite"));
    }
    Ok(value)
}

/// The same fluctuation from the position-space double integral (chiral
/// kernel only):
/// `2cD[∫∫ρρ ln(2R/ΔR + s + s′) − ∫∫ρρ ln|s − s′|]`. The singular term is
/// written through the autocorrelation of `ρ` with `|s − s′| = v²`.
pub fn charge_fluctuation_position(profile: &SmearingProfile, model: &CurrentModel) -> Result<f64> {
    profile.validate()?;
    model.validate()?;
    if model.kernel_power != 2 {
        return Err(Error::domain("position-space form is implemented for the 1/u² kernel"));
    }
    let n = profile.ramp_points;
    let (x, w) = gauss_legendre(n);
    let unit: Vec<(f64, f64)> = x.iter().zip(&w).map(|(&x, &w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
    let two_l = 2.0 * profile.ratio();
    let mut smooth = 0.0;
    for &(s, ws) in &unit {
        let rs = ramp_density(s);
        for &(t, wt) in &unit {
            smooth += ws * wt * rs * ramp_density(t) * (two_l + s + t).ln();
        }
    }
    // ∫∫ρρ ln|s−s′| = 2∫₀¹ ln(d) C(d) dd, C(d) = ∫₀^{1−d} ρ(s)ρ(s+d) ds, d = v².
    let mut singular = 0.0;
    for &(v, wv) in &unit {
        let d = v * v;
        let corr: f64 = unit
            .iter()
            .map(|&(u, wu)| {
                let s = u * (1.0 - d);
                wu * (1.0 - d) * ramp_density(s) * ramp_density(s + d)
            })
            .sum();
        singular += wv * 2.0 * v * d.ln() * corr;
    }
    singular *= 2.0;
    Ok(2.0
        * model.normalization
        * model.components as f64
        * profile.height
        * profile.height
        * (smooth - singular))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ScalingVerdict {
    LogLaw,
    PowerLaw,
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares `y ≈ slope·x + intercept`. Exactly fitted data
/// (including constant data) has `r² = 1`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Size("linear fit needs ≥ 2 paired samples".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("abscissae are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - slope * a - intercept).powi(2))
        .sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(LinearFit { slope, intercept, r2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    /// Fluctuation against `ln(R/ΔR)`.
    pub log: LinearFit,
    /// `ln(fluctuation)` against `ln(R/ΔR)`; absent unless all values are
    /// positive.
    pub power: Option<LinearFit>,
    pub verdict: ScalingVerdict,
}

/// Goodness threshold for the logarithmic law.
pub const LOG_LAW_R2: f64 = 0.999;

/// Fit `(ΔR, fluctuation)` samples at plateau `R` by a log law and a power
/// law. The verdict is `LOG_LAW` when the log fit has `r² > 0.999` and a
/// positive slope, `POWER_LAW` when the power fit is better, else `NEITHER`.
pub fn fit_scaling(r: f64, samples: &[(f64, f64)]) -> Result<ScalingFit> {
    let x: Vec<f64> = samples.iter().map(|&(dr, _)| (r / dr).ln()).collect();
    let y: Vec<f64> = samples.iter().map(|&(_, q)| q).collect();
    let log = linear_fit(&x, &y)?;
    let power = if y.iter().all(|&q| q > 0.0) {
        let ly: Vec<f64> = y.iter().map(|q| q.ln()).collect();
        Some(linear_fit(&x, &ly)?)
    } else {
        None
    };
    let verdict = if log.r2 > LOG_LAW_R2 && log.slope > 0.0 {
        ScalingVerdict::LogLaw
    } else if power.is_some_and(|p| p.r2 > log.r2 && p.slope > 0.0) {
        ScalingVerdict::PowerLaw
    } else {
        ScalingVerdict::Neither
    };
    Ok(ScalingFit { log, power, verdict })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyScaling {
    pub r: f64,
    /// `(ΔR, fluctuation)` pairs in input order.
    pub samples: Vec<(f64, f64)>,
    pub fit: ScalingFit,
}

/// `points` values from `max` down to `min`, geometrically spaced.
pub fn geometric_sequence(max: f64, min: f64, points: usize) -> Result<Vec<f64>> {
    if !(max > min && min > 0.0) || points < 2 {
        return Err(Error::domain("need max > min > 0 and at least 2 points"));
    }
    let ratio = (min / max).ln() / (points - 1) as f64;
    Ok((0..points).map(|i| max * (ratio * i as f64).exp()).collect())
}

/// Fluctuations over a decreasing geometric sequence of ramp widths
/// spanning at least two decades, and their scaling fit.
pub fn entropy_scaling_fit(
    r: f64,
    dr_list: &[f64],
    model: &CurrentModel,
    ramp_points: usize,
) -> Result<EntropyScaling> {
    if dr_list.len() < 3 {
        return Err(Error::domain("need at least 3 ramp widths"));
    }
    if dr_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::domain("ramp widths must be strictly decreasing"));
    }
    let first = (dr_list[1] / dr_list[0]).ln();
    if dr_list
        .windows(2)
        .any(|w| ((w[1] / w[0]).ln() - first).abs() > 1e-6 * first.abs())
    {
        return Err(Error::domain("ramp widths must form a geometric sequence"));
    }
    let span = (dr_list[0] / dr_list[dr_list.len() - 1]).log10();
    if span < 2.0 - 1e-9 {
        return Err(Error::domain(format!(
            "ramp widths span {span:.3} decades; at least 2 are needed"
        )));
    }
    let samples = dr_list
        .iter()
        .map(|&dr| {
            let profile = SmearingProfile {
                ramp_points,
                ..SmearingProfile::new(r, dr)?
            };
            Ok((dr, charge_fluctuation(&profile, model)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_scaling(r, &samples)?;
    Ok(EntropyScaling {
        r,
        samples,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramp_is_a_smooth_unit_step() {
        assert_eq!(ramp_profile(0.0), 1.0);
        assert_eq!(ramp_profile(1.0), 0.0);
        assert!((ramp_profile(0.5) - 0.5).abs() < 1e-15);
        let t = RampTransform::new(128);
        assert!((t.eval(0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // decays fast enough that the squared tail beyond the cutoff is negligible
        let edge = t.eval(K_MAX - 1e-9).norm();
        assert!(edge < 1e-4 && edge < 1e-2 * t.eval(20.0).norm(), "{edge}");
        assert_eq!(t.eval(K_MAX), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn chebyshev_table_matches_direct_sums() {
        let t = RampTransform::new(128);
        let (x, w) = gauss_legendre(200);
        for k in [0.3, 2.71, 9.99, 17.5, 41.2] {
            let direct: Complex64 = x
                .iter()
                .zip(&w)
                .map(|(&x, &w)| {
                    let s = 0.5 * (x + 1.0);
                    Complex64::from_polar(0.5 * w * ramp_density(s), k * s)
                })
                .sum();
            assert!((t.eval(k) - direct).norm() < 1e-12, "k={k}");
        }
    }
}

//! Modular wedge data of the free one-particle space in the rapidity
//! representation, and the identities that tie it to crossing:
//! KMS, wedge duality on vacuum expectation values, Watson's exchange
//! relations, form-factor crossing and Unruh periodicity.
//!
//! Conventions (one-particle, rapidity `θ`, measure `dθ`):
//!
//! ```text
//! φ(f)|0⟩ = f̂ on the real line,   φ(f) = ∫ f̂(θ) a*(θ) + f̂(θ+iπ) a(θ) dθ
//! Δ^{it} ψ(θ) = ψ(θ − 2πt)          (boost)
//! Δ^{s}  ψ(θ) = ψ(θ + 2πis)         (analytic continuation, s ≥ 0 inside the strip)
//! J ψ(z)      = conj ψ(conj z)
//! S_W = J Δ^{1/2}:  (S_W f̂)(θ) = conj f̂(θ + iπ)
//! ```

mod formfactor;
mod unruh;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::quadrature::trapezoid;
use crate::numerics::AnalyticSampler;

pub use formfactor::{crossing_check, watson_check, FormFactor, FormFactorModel, WatsonResiduals};
pub use unruh::{unruh_correlator, unruh_kms_check, UnruhReport, UnruhSample};

/// Uniform trapezoid rule on `[−half_width, half_width]` in rapidity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RapidityQuadrature {
    pub points: usize,
    pub half_width: f64,
}

impl Default for RapidityQuadrature {
    fn default() -> Self {
        Self {
            points: 2048,
            half_width: 16.0,
        }
    }
}

impl RapidityQuadrature {
    fn integrate(&self, f: impl Fn(f64) -> Result<Complex64>) -> Result<Complex64> {
        if self.points < 2 || !(self.half_width > 0.0) {
            return Err(Error::domain("quadrature needs ≥ 2 points and a positive width"));
        }
        let failure = std::cell::RefCell::new(None);
        let v = trapezoid(
            |x| match f(x) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            },
            -self.half_width,
            self.half_width,
            self.points,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::numeric("rapidity quadrature produced a non-finite value"));
        }
        Ok(v)
    }
}

/// Modular objects of the right wedge acting on strip-analytic one-particle
/// wave functions.
#[derive(Clone, Copy, Debug, Default)]
pub struct ModularData {
    pub quadrature: RapidityQuadrature,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl ModularData {
    pub fn new(quadrature: RapidityQuadrature) -> Self {
        Self { quadrature }
    }

    /// `Δ^{it}`: real rapidity shift by `−2πt`.
    pub fn boost(&self, psi: &AnalyticSampler, t: f64) -> AnalyticSampler {
        psi.shifted(real(-2.0 * PI * t))
    }

    /// `Δ^{s}` for real `s`: imaginary rapidity shift by `+2πis`.
    pub fn modular_power(&self, psi: &AnalyticSampler, s: f64) -> AnalyticSampler {
        psi.shifted(Complex64::new(0.0, 2.0 * PI * s))
    }

    /// `J`: antiunitary conjugation.
    pub fn conjugation(&self, psi: &AnalyticSampler) -> AnalyticSampler {
        psi.reflected()
    }

    /// `S_W = JΔ^{1/2}`.
    pub fn tomita(&self, psi: &AnalyticSampler) -> AnalyticSampler {
        self.conjugation(&self.modular_power(psi, 0.5))
    }

    /// `⟨ψ, χ⟩ = ∫ conj ψ(θ) χ(θ) dθ` on the real line.
    pub fn inner(&self, psi: &AnalyticSampler, chi: &AnalyticSampler) -> Result<Complex64> {
        self.quadrature
            .integrate(|t| Ok(psi.eval(real(t))?.conj() * chi.eval(real(t))?))
    }

    pub fn norm(&self, psi: &AnalyticSampler) -> Result<f64> {
        Ok(self.inner(psi, psi)?.re.sqrt())
    }

    /// `⟨0|φ(f)φ(g)|0⟩ = ∫ f̂(θ+iπ) ĝ(θ) dθ`.
    pub fn two_point(&self, f: &AnalyticSampler, g: &AnalyticSampler) -> Result<Complex64> {
        self.quadrature
            .integrate(|t| Ok(f.eval(Complex64::new(t, PI))? * g.eval(real(t))?))
    }
}

fn require_strip(f: &AnalyticSampler, name: &str) -> Result<()> {
    let (lo, hi) = f.strip();
    if lo > 0.0 || hi < PI {
        return Err(Error::domain(format!(
            "{name} must be analytic on 0 ≤ Im θ ≤ π, declared [{lo}, {hi}]"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KmsReport {
    /// `⟨0|φ(f)φ(g)|0⟩`
    pub lhs: Complex64,
    /// `⟨0|φ(g) Δ^{power} φ(f)|0⟩`
    pub rhs: Complex64,
    pub power: f64,
    pub residual: f64,
}

/// Share of `Δ^p` applied to `φ(g)*Ω` on the right-hand side of the KMS
/// check; the rest acts on `φ(f)Ω`.
pub const KMS_SPLIT: f64 = 1.0 / 3.0;

/// KMS condition of the wedge restricted vacuum with `Δ^{power}` in place of
/// `Δ` (`power = 1` is the genuine condition; other values are controls).
///
/// The right-hand side is evaluated as
/// `⟨Δ^{ap} φ(g)*Ω, Δ^{(1−a)p} φ(f)Ω⟩`, `a = KMS_SPLIT`, with
/// `ḡ(z) = conj ĝ(conj z + iπ)` the wave function of `φ(g)*Ω`. For `p = 1`
/// its integrand `ĝ(θ + iπ/3) f̂(θ + 4πi/3)` matches the left side
/// `ĝ(θ) f̂(θ + iπ)` only after a contour shift (an even split would
/// reproduce it node by node). `f̂` must be analytic on
/// `0 ≤ Im θ ≤ 2π(1−a)p`.
pub fn kms_check_with_power(
    m: &ModularData,
    f: &AnalyticSampler,
    g: &AnalyticSampler,
    power: f64,
) -> Result<KmsReport> {
    require_strip(f, "f̂")?;
    require_strip(g, "ĝ")?;
    if !(0.0..=1.0).contains(&power) {
        return Err(Error::domain(format!("Δ power {power} outside [0, 1]")));
    }
    let f_share = (1.0 - KMS_SPLIT) * power;
    if f.strip().1 < 2.0 * PI * f_share {
        return Err(Error::domain(format!(
            "f̂ must be analytic on 0 ≤ Im θ ≤ {:.4} to lie in the domain of Δ^{f_share:.4}",
            2.0 * PI * f_share
        )));
    }
    let lhs = m.two_point(f, g)?;
    let g_adjoint = m.conjugation(&g.shifted(Complex64::new(0.0, PI)));
    let left = m.modular_power(&g_adjoint, KMS_SPLIT * power);
    let right = m.modular_power(f, f_share);
    let rhs = m.inner(&left, &right)?;
    Ok(KmsReport {
        lhs,
        rhs,
        power,
        residual: (lhs - rhs).norm(),
    })
}

/// `|⟨0|φ(f)φ(g)|0⟩ − ⟨0|φ(g)Δφ(f)|0⟩|` for the free field.
pub fn kms_check_free(m: &ModularData, f: &AnalyticSampler, g: &AnalyticSampler) -> Result<KmsReport> {
    kms_check_with_power(m, f, g, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    /// `⟨0|φ(f) Jφ(g)J|0⟩ = ∫ f̂(θ+iπ) conj ĝ(θ) dθ`
    pub forward: Complex64,
    /// `⟨0|Jφ(g)J φ(f)|0⟩ = ∫ conj ĝ(θ+iπ) f̂(θ) dθ`
    pub backward: Complex64,
    pub residual: f64,
}

/// Vacuum expectation of `[φ(f), Jφ(g)J]`. For wave functions analytic on
/// the strip both integrals are the same contour integral on the two edges
/// of the strip, so the commutator vanishes. The wave functions are
/// evaluated through their declared strips; a function that is not really
/// analytic (e.g. a hard cutoff) makes the two sides differ.
pub fn wedge_duality_vacuum_check(
    m: &ModularData,
    f: &AnalyticSampler,
    g: &AnalyticSampler,
) -> Result<DualityReport> {
    require_strip(f, "f̂")?;
    require_strip(g, "ĝ")?;
    let q = m.quadrature;
    let forward =
        q.integrate(|t| Ok(f.eval(Complex64::new(t, PI))? * g.eval(real(t))?.conj()))?;
    let backward =
        q.integrate(|t| Ok(g.eval(Complex64::new(t, PI))?.conj() * f.eval(real(t))?))?;
    Ok(DualityReport {
        forward,
        backward,
        residual: (forward - backward).norm(),
    })
}

/// Gaussian wave function `exp(−(θ−c)²/(2w²))`, entire in `θ`.
pub fn gaussian_wave(center: f64, width: f64) -> AnalyticSampler {
    AnalyticSampler::gaussian(real(1.0), center, width)
}

/// Gaussian multiplied by the indicator of `|Re θ − c| < cut`: declared on
/// the strip but not analytic. Used as a negative control.
pub fn hard_cutoff_wave(center: f64, width: f64, cut: f64) -> AnalyticSampler {
    let g = gaussian_wave(center, width);
    AnalyticSampler::new("hard-cutoff gaussian", f64::NEG_INFINITY, f64::INFINITY, move |z| {
        if (z.re - center).abs() < cut {
            g.eval(z).expect("entire")
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .expect("valid strip")
}

//! Kramers-Kronig transforms and causality tests.
//!
//! Convention: an amplitude `a(ω)` is causal when it is the boundary value of
//! a function analytic in the upper half plane, equivalently when its Fourier
//! transform is supported on `t ≥ 0`. With that convention
//!
//! ```text
//! Re a(ω) = −(1/π) PV ∫ Im a(ω′) / (ω − ω′) dω′
//! ```
//!
//! and the reference pair is `a(ω) = 1/(−ω − i)`:
//! `Im a = 1/(ω²+1)`, `Re a = −ω/(ω²+1)`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::GridFunction;

/// Default decision threshold for [`causality_residual`].
pub const DEFAULT_CAUSALITY_THRESHOLD: f64 = 1e-2;

/// Relative end-value size above which input is flagged as non-decaying.
pub const DECAY_WARNING_RATIO: f64 = 1e-2;

/// Output of [`kk_real_from_imag`].
#[derive(Clone, Debug)]
pub struct KkTransform {
    /// Reconstructed real part on the trusted interior window.
    pub real_part: GridFunction,
    /// Index range `[lo, hi)` of the trusted window in the input grid.
    pub trusted: (usize, usize),
    /// Set when the input does not decay toward the grid ends; the transform
    /// is still returned but truncation error is not controlled.
    pub nondecaying: bool,
    pub end_ratio: f64,
}

/// Index window covering the central 80% of an `n`-point grid.
pub fn interior_window(n: usize) -> (usize, usize) {
    let last = (n - 1) as f64;
    let lo = (0.1 * last).ceil() as usize;
    let hi = (0.9 * last).floor() as usize + 1;
    (lo, hi.max(lo + 2).min(n))
}

/// Reconstruct `Re a` from `Im a` on the interior 80% of the grid.
pub fn kk_real_from_imag(im_part: &GridFunction) -> Result<KkTransform> {
    if !im_part.is_real() {
        return Err(Error::domain(
            "kk_real_from_imag expects real samples of the absorptive part",
        ));
    }
    let n = im_part.len();
    if n < 5 {
        return Err(Error::Size(format!("need at least 5 samples, got {n}")));
    }
    let (lo, hi) = interior_window(n);
    let values: Vec<Complex64> = (lo..hi)
        .into_par_iter()
        .map(|i| {
            im_part
                .pv_integral(im_part.abscissa(i))
                .map(|pv| Complex64::new(-pv / PI, 0.0))
        })
        .collect::<Result<_>>()?;
    let end_ratio = im_part.end_ratio();
    Ok(KkTransform {
        real_part: GridFunction::new(im_part.abscissa(lo), im_part.abscissa(hi - 1), values)?,
        trusted: (lo, hi),
        nondecaying: end_ratio > DECAY_WARNING_RATIO,
        end_ratio,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Causal,
    Noncausal,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Causal => "CAUSAL",
            Verdict::Noncausal => "NONCAUSAL",
            Verdict::Indeterminate => "INDETERMINATE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CausalityReport {
    pub negative_fraction: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

/// Fraction of the discrete spectral weight of `a` at negative times,
/// without any correction for the finite window.
///
/// Truncating a slowly decaying amplitude such as `1/ω` to a window is a
/// jump in the periodic extension, which leaks a few percent of the weight
/// into the wrong half regardless of causality. [`causality_residual`]
/// removes that leak; this raw figure is kept for diagnostics.
pub fn raw_negative_fraction(a: &GridFunction) -> Result<Option<f64>> {
    let split = a.fourier_support_split()?;
    let total = split.total();
    Ok((total > 0.0).then(|| split.negative_time_norm / total))
}

/// Causal reference fitted to the window ends:
/// `c₀ + α/(ω − c + iγ) + β/(ω − c + iγ)²` with `c` the window centre and
/// `γ` one eighth of its width. Every term is analytic in the upper half
/// plane, so subtracting it never removes acausal content from the interior,
/// but it does remove the slowly decaying tails that wrap around the window.
fn tail_reference(a: &GridFunction) -> Result<Vec<Complex64>> {
    let n = a.len();
    let centre = 0.5 * (a.x_min() + a.x_max());
    let gamma = (a.x_max() - a.x_min()) / 8.0;
    let basis = |x: f64| {
        let b = Complex64::new(1.0, 0.0) / Complex64::new(x - centre, gamma);
        [Complex64::new(1.0, 0.0), b, b * b]
    };
    let k = (n / 100).max(2).min(n / 2);
    let idx: Vec<usize> = (0..k).chain(n - k..n).collect();
    let design = DMatrix::from_fn(idx.len(), 3, |r, c| basis(a.abscissa(idx[r]))[c]);
    let rhs = DVector::from_iterator(idx.len(), idx.iter().map(|&i| a.samples()[i]));
    let coef = design
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|e| Error::numeric(format!("tail fit failed: {e}")))?;
    Ok(a.abscissae()
        .map(|x| {
            let b = basis(x);
            b[0] * coef[0] + b[1] * coef[1] + b[2] * coef[2]
        })
        .collect())
}

/// Causality test by Fourier support: the negative-time weight of `a`,
/// after removal of a fitted causal tail reference, relative to the discrete
/// Parseval norm of `a`. Zero input gives an indeterminate verdict.
pub fn causality_residual(a: &GridFunction, threshold: f64) -> Result<CausalityReport> {
    if !(threshold > 0.0) {
        return Err(Error::domain("causality threshold must be positive"));
    }
    if a.len() < 8 {
        return Err(Error::Size(format!(
            "causality test needs at least 8 samples, got {}",
            a.len()
        )));
    }
    let total = a.parseval_norm();
    if total == 0.0 || !total.is_finite() {
        return Ok(CausalityReport {
            negative_fraction: 0.0,
            threshold,
            verdict: Verdict::Indeterminate,
        });
    }
    let reference = tail_reference(a)?;
    let remainder = GridFunction::new(
        a.x_min(),
        a.x_max(),
        a.samples().iter().zip(&reference).map(|(s, r)| s - r).collect(),
    )?;
    let split = remainder.fourier_support_split()?;
    // The remainder of a strongly acausal input can carry slightly more
    // weight than the input itself; the fraction is capped at 1.
    let negative_fraction = (split.negative_time_norm / total).min(1.0);
    let verdict = if negative_fraction < threshold {
        Verdict::Causal
    } else {
        Verdict::Noncausal
    };
    Ok(CausalityReport {
        negative_fraction,
        threshold,
        verdict,
    })
}

/// Number of subtractions in the dispersion relation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subtractions", rename_all = "lowercase")]
pub enum Subtraction {
    None,
    /// Once subtracted at the anchor `omega0`.
    Once { omega0: f64 },
}

/// Sup-norm over the interior window of the mismatch between `Re a` and its
/// Kramers-Kronig reconstruction from `Im a`.
///
/// With one subtraction the compared quantities are
/// `Re a(ω) − Re a(ω₀)` and `KK(ω) − KK(ω₀)`, which makes the residual blind
/// to real constants added to `a`. `Re a(ω₀)` and `KK(ω₀)` are evaluated
/// directly at `ω₀` (cubic interpolation and a PV integral), so `ω₀` need not
/// be a grid node.
pub fn dispersion_residual(a: &GridFunction, subtraction: Subtraction) -> Result<f64> {
    let im = a.imag_part();
    let kk = kk_real_from_imag(&im)?;
    let (lo, _) = kk.trusted;
    let (re_anchor, kk_anchor) = match subtraction {
        Subtraction::None => (0.0, 0.0),
        Subtraction::Once { omega0 } => {
            if !(omega0 > a.x_min() && omega0 < a.x_max()) {
                return Err(Error::domain(format!(
                    "subtraction point {omega0} is not inside the grid"
                )));
            }
            (
                a.interpolate(omega0)?.re,
                -im.pv_integral(omega0)? / PI,
            )
        }
    };
    Ok(kk
        .real_part
        .samples()
        .iter()
        .enumerate()
        .map(|(j, k)| {
            let re = a.samples()[lo + j].re;
            ((re - re_anchor) - (k.re - kk_anchor)).abs()
        })
        .fold(0.0, f64::max))
}

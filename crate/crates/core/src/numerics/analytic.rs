use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A closed-form function of one complex variable together with the
/// horizontal strip `lower ≤ Im z ≤ upper` on which it is declared analytic.
///
/// Evaluation inside the strip always succeeds; outside it is a domain error,
/// so contour-shifted quadratures cannot silently leave the analyticity region.
#[derive(Clone)]
pub struct AnalyticSampler {
    eval: Evaluator,
    lower: f64,
    upper: f64,
    label: String,
}

impl fmt::Debug for AnalyticSampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticSampler")
            .field("label", &self.label)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .finish()
    }
}

/// Slack for strip membership so that boundary evaluations computed as
/// `θ + iπ` are not rejected because of rounding.
const STRIP_SLACK: f64 = 1e-12;

impl AnalyticSampler {
    pub fn new(
        label: impl Into<String>,
        lower: f64,
        upper: f64,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(lower <= upper) {
            return Err(Error::domain(format!("empty strip [{lower}, {upper}]")));
        }
        Ok(Self {
            eval: Arc::new(f),
            lower,
            upper,
            label: label.into(),
        })
    }

    /// Entire function (strip is the whole plane).
    pub fn entire(
        label: impl Into<String>,
        f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(label, f64::NEG_INFINITY, f64::INFINITY, f).expect("whole plane is a valid strip")
    }

    /// Gaussian `amplitude · exp(−(z−center)²/(2 width²))`, entire.
    pub fn gaussian(amplitude: Complex64, center: f64, width: f64) -> Self {
        Self::entire(format!("gaussian(c={center}, w={width})"), move |z| {
            let u = (z - center) / width;
            amplitude * (-0.5 * u * u).exp()
        })
    }

    pub fn zero() -> Self {
        Self::entire("zero", |_| Complex64::new(0.0, 0.0))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn strip(&self) -> (f64, f64) {
        (self.lower, self.upper)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.im >= self.lower - STRIP_SLACK && z.im <= self.upper + STRIP_SLACK
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !self.contains(z) {
            return Err(Error::domain(format!(
                "{} evaluated at {z}, outside its analyticity strip [{}, {}]",
                self.label, self.lower, self.upper
            )));
        }
        Ok((self.eval)(z))
    }

    /// `z ↦ f(z + shift)`; the strip moves by `−Im shift`.
    pub fn shifted(&self, shift: Complex64) -> Self {
        let inner = self.eval.clone();
        Self {
            eval: Arc::new(move |z| inner(z + shift)),
            lower: self.lower - shift.im,
            upper: self.upper - shift.im,
            label: format!("{}∘(z+{shift})", self.label),
        }
    }

    /// `z ↦ conj f(conj z)`; the strip is reflected.
    pub fn reflected(&self) -> Self {
        let inner = self.eval.clone();
        Self {
            eval: Arc::new(move |z: Complex64| inner(z.conj()).conj()),
            lower: -self.upper,
            upper: -self.lower,
            label: format!("conj∘{}∘conj", self.label),
        }
    }

    /// Pointwise product; the strip is the intersection.
    pub fn product(&self, other: &AnalyticSampler) -> Result<Self> {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Self::new(
            format!("{}·{}", self.label, other.label),
            self.lower.max(other.lower),
            self.upper.min(other.upper),
            move |z| a(z) * b(z),
        )
    }
}

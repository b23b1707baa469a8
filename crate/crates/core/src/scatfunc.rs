//! Two-particle scattering functions of factorizing models and checks of the
//! bootstrap axioms (unitarity, crossing, real analyticity) plus an
//! argument-principle scan for poles in the physical strip `0 < Im θ < π`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance to a declared pole below which evaluation is refused.
pub const POLE_GUARD: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Model specification. All shipped models are `2πi`-periodic in `θ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum Model {
    /// `S ≡ 1`.
    Free,
    /// `S ≡ −1`.
    Ising,
    /// `S(θ) = (sinh θ − i sin(πB/2)) / (sinh θ + i sin(πB/2))`, `0 < B < 2`.
    SinhGordon {
        #[serde(rename = "B")]
        b: f64,
    },
    /// CDD factor `(sinh θ + i sin α)/(sinh θ − i sin α)`; for `0 < α < π`
    /// it has simple poles at `iα` and `i(π − α)`.
    Cdd { alpha: f64 },
    Product { factors: Vec<Model> },
    /// `S(θ)·e^{rate·θ}`: violates unitarity and crossing on purpose.
    /// Used as a negative control.
    Tilted { base: Box<Model>, rate: f64 },
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Free => write!(f, "free"),
            Model::Ising => write!(f, "ising"),
            Model::SinhGordon { b } => write!(f, "sinh-gordon(B={b})"),
            Model::Cdd { alpha } => write!(f, "cdd(α={alpha})"),
            Model::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|m| m.to_string()).collect();
                write!(f, "{}", parts.join("×"))
            }
            Model::Tilted { base, rate } => write!(f, "{base}·exp({rate}θ)"),
        }
    }
}

/// `(sinh θ + i s)/(sinh θ − i s)`.
fn cdd_value(theta: Complex64, s: f64) -> Complex64 {
    let sh = theta.sinh();
    (sh + I * s) / (sh - I * s)
}

/// Poles of `cdd_value(·, sin α)` modulo `2πi`, as imaginary parts in `[0, 2π)`.
fn cdd_pole_heights(alpha: f64) -> Vec<f64> {
    // sinh θ = i sin α ⇔ θ = iα or θ = i(π − α) (mod 2πi) for real θ-part 0.
    let wrap = |y: f64| y.rem_euclid(2.0 * PI);
    let (a, b) = (wrap(alpha), wrap(PI - alpha));
    if (a - b).abs() < 1e-15 {
        vec![a]
    } else {
        vec![a, b]
    }
}

/// A meromorphic two-particle scattering function.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringFunction {
    model: Model,
    /// Pole heights (imaginary parts, real part 0) modulo 2πi.
    pole_heights: Vec<f64>,
}

impl ScatteringFunction {
    pub fn new(model: Model) -> Result<Self> {
        let mut pole_heights = Vec::new();
        collect_poles(&model, &mut pole_heights)?;
        pole_heights.sort_by(f64::total_cmp);
        pole_heights.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        Ok(Self {
            model,
            pole_heights,
        })
    }

    pub fn free() -> Self {
        Self::new(Model::Free).expect("free model")
    }

    pub fn ising() -> Self {
        Self::new(Model::Ising).expect("ising model")
    }

    pub fn sinh_gordon(b: f64) -> Result<Self> {
        Self::new(Model::SinhGordon { b })
    }

    pub fn cdd(alpha: f64) -> Result<Self> {
        Self::new(Model::Cdd { alpha })
    }

    pub fn product(factors: Vec<ScatteringFunction>) -> Self {
        let models = factors.into_iter().map(|f| f.model).collect();
        Self::new(Model::Product { factors: models }).expect("factors already validated")
    }

    /// `self · e^{rate·θ}`, a deliberately broken model.
    pub fn tilted(&self, rate: f64) -> Self {
        Self::new(Model::Tilted {
            base: Box::new(self.model.clone()),
            rate,
        })
        .expect("base already validated")
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    /// Declared poles inside the open physical strip `0 < Im θ < π`.
    pub fn strip_poles(&self) -> Vec<Complex64> {
        self.pole_heights
            .iter()
            .filter(|&&y| y > 0.0 && y < PI)
            .map(|&y| Complex64::new(0.0, y))
            .collect()
    }

    /// Value at complex rapidity `θ`; refuses points within [`POLE_GUARD`]
    /// of a declared pole (any `2πi` translate).
    pub fn eval(&self, theta: Complex64) -> Result<Complex64> {
        if !(theta.re.is_finite() && theta.im.is_finite()) {
            return Err(Error::domain(format!("non-finite rapidity {theta}")));
        }
        for &y in &self.pole_heights {
            let k = ((theta.im - y) / (2.0 * PI)).round();
            let pole = Complex64::new(0.0, y + 2.0 * PI * k);
            let distance = (theta - pole).norm();
            if distance < POLE_GUARD {
                return Err(Error::Pole {
                    at: theta,
                    pole,
                    distance,
                });
            }
        }
        Ok(self.value(theta))
    }

    pub fn eval_real(&self, theta: f64) -> Result<Complex64> {
        self.eval(Complex64::new(theta, 0.0))
    }

    /// Raw evaluation without the pole guard.
    pub(crate) fn value(&self, theta: Complex64) -> Complex64 {
        model_value(&self.model, theta)
    }
}

fn collect_poles(model: &Model, out: &mut Vec<f64>) -> Result<()> {
    match model {
        Model::Free | Model::Ising => {}
        Model::SinhGordon { b } => {
            if !(*b > 0.0 && *b < 2.0) {
                return Err(Error::domain(format!(
                    "sinh-Gordon coupling B must lie in (0, 2), got {b}"
                )));
            }
            out.extend(cdd_pole_heights(-PI * b / 2.0));
        }
        Model::Cdd { alpha } => {
            if !alpha.is_finite() || (alpha.sin()).abs() < 1e-15 {
                return Err(Error::domain(format!(
                    "CDD parameter α={alpha} gives a trivial or undefined factor"
                )));
            }
            out.extend(cdd_pole_heights(*alpha));
        }
        Model::Product { factors } => {
            for f in factors {
                collect_poles(f, out)?;
            }
        }
        Model::Tilted { base, rate } => {
            if !rate.is_finite() {
                return Err(Error::domain("non-finite tilt rate"));
            }
            collect_poles(base, out)?;
        }
    }
    Ok(())
}

fn model_value(model: &Model, theta: Complex64) -> Complex64 {
    match model {
        Model::Free => Complex64::new(1.0, 0.0),
        Model::Ising => Complex64::new(-1.0, 0.0),
        Model::SinhGordon { b } => cdd_value(theta, -(PI * b / 2.0).sin()),
        Model::Cdd { alpha } => cdd_value(theta, alpha.sin()),
        Model::Product { factors } => factors
            .iter()
            .map(|m| model_value(m, theta))
            .product(),
        Model::Tilted { base, rate } => model_value(base, theta) * (theta * *rate).exp(),
    }
}

/// Sup-norm residuals of the bootstrap axioms over real samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResiduals {
    /// `sup |S(θ)S(−θ) − 1|`
    pub unitarity: f64,
    /// `sup |S(θ) − S(iπ − θ)|`
    pub crossing: f64,
    /// `sup |conj S(conj θ) − S(−θ)|`
    pub real_analyticity: f64,
}

impl BootstrapResiduals {
    pub fn max(&self) -> f64 {
        self.unitarity.max(self.crossing).max(self.real_analyticity)
    }
}

pub fn bootstrap_residuals(s: &ScatteringFunction, samples: &[f64]) -> Result<BootstrapResiduals> {
    let mut r = BootstrapResiduals {
        unitarity: 0.0,
        crossing: 0.0,
        real_analyticity: 0.0,
    };
    for &t in samples {
        let theta = Complex64::new(t, 0.0);
        let st = s.eval(theta)?;
        let sm = s.eval(-theta)?;
        let sc = s.eval(I * PI - theta)?;
        let sbar = s.eval(theta.conj())?.conj();
        r.unitarity = r.unitarity.max((st * sm - 1.0).norm());
        r.crossing = r.crossing.max((st - sc).norm());
        r.real_analyticity = r.real_analyticity.max((sbar - sm).norm());
    }
    Ok(r)
}

/// `n` equally spaced samples on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5 * (lo + hi)],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Rectangle scanned by [`pole_scan`]. The default is slightly off-centre so
/// that poles on the imaginary axis never sit on a cell boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanWindow {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub cells_re: usize,
    pub cells_im: usize,
}

impl ScanWindow {
    pub fn strip(cells: usize) -> Self {
        Self {
            re_min: -4.9,
            re_max: 5.1,
            im_min: 0.0,
            im_max: PI,
            cells_re: cells,
            cells_im: cells,
        }
    }

    pub fn refined(&self) -> Self {
        Self {
            cells_re: 2 * self.cells_re,
            cells_im: 2 * self.cells_im,
            ..*self
        }
    }

    fn cell_size(&self) -> (f64, f64) {
        (
            (self.re_max - self.re_min) / self.cells_re as f64,
            (self.im_max - self.im_min) / self.cells_im as f64,
        )
    }

    fn node(&self, i: usize, j: usize) -> Complex64 {
        let (dx, dy) = self.cell_size();
        Complex64::new(self.re_min + i as f64 * dx, self.im_min + j as f64 * dy)
    }
}

/// Zeros and poles located by the scan, reported as cell centres.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleScan {
    pub poles: Vec<Complex64>,
    pub zeros: Vec<Complex64>,
    pub cell_re: f64,
    pub cell_im: f64,
}

impl PoleScan {
    /// Whether some reported pole lies in the cell containing `z`.
    pub fn has_pole_near(&self, z: Complex64) -> bool {
        self.poles.iter().any(|p| {
            (p.re - z.re).abs() <= 0.5 * self.cell_re && (p.im - z.im).abs() <= 0.5 * self.cell_im
        })
    }
}

/// Change of `arg S` along the segment `a → b`, by adaptive bisection until
/// each step turns by less than π/4.
fn arg_change(s: &ScatteringFunction, a: Complex64, b: Complex64) -> Result<f64> {
    fn rec(
        s: &ScatteringFunction,
        a: Complex64,
        fa: Complex64,
        b: Complex64,
        fb: Complex64,
        depth: u32,
    ) -> Result<f64> {
        let step = (fb / fa).arg();
        if step.abs() < PI / 4.0 {
            return Ok(step);
        }
        if depth == 0 {
            return Err(Error::Resolution(format!(
                "argument of S not resolved between {a} and {b}"
            )));
        }
        let m = 0.5 * (a + b);
        let fm = s.eval(m)?;
        Ok(rec(s, a, fa, m, fm, depth - 1)? + rec(s, m, fm, b, fb, depth - 1)?)
    }
    let (fa, fb) = (s.eval(a)?, s.eval(b)?);
    if fa.norm() == 0.0 || fb.norm() == 0.0 {
        return Err(Error::Resolution(format!(
            "S vanishes on the scan contour near {a}"
        )));
    }
    rec(s, a, fa, b, fb, 40)
}

/// Argument-principle scan: for each cell the winding number of `S` around
/// its boundary equals (zeros − poles) inside. Cells with winding `−1` are
/// reported as poles, `+1` as zeros.
pub fn pole_scan(s: &ScatteringFunction, window: ScanWindow) -> Result<PoleScan> {
    if window.cells_re * window.cells_im < 64 * 64 {
        return Err(Error::Resolution(format!(
            "pole scan needs at least 64×64 cells, got {}×{}",
            window.cells_re, window.cells_im
        )));
    }
    let (nx, ny) = (window.cells_re, window.cells_im);
    // horizontal[j][i]: node (i,j) → (i+1,j); vertical[i][j]: (i,j) → (i,j+1)
    let mut horizontal = vec![vec![0.0; nx]; ny + 1];
    for (j, row) in horizontal.iter_mut().enumerate() {
        for (i, h) in row.iter_mut().enumerate() {
            *h = arg_change(s, window.node(i, j), window.node(i + 1, j))?;
        }
    }
    let mut vertical = vec![vec![0.0; ny]; nx + 1];
    for (i, col) in vertical.iter_mut().enumerate() {
        for (j, v) in col.iter_mut().enumerate() {
            *v = arg_change(s, window.node(i, j), window.node(i, j + 1))?;
        }
    }
    let (dx, dy) = window.cell_size();
    let mut scan = PoleScan {
        poles: vec![],
        zeros: vec![],
        cell_re: dx,
        cell_im: dy,
    };
    for j in 0..ny {
        for i in 0..nx {
            let total = horizontal[j][i] + vertical[i + 1][j] - horizontal[j + 1][i] - vertical[i][j];
            let w = total / (2.0 * PI);
            let k = w.round();
            if (w - k).abs() > 1e-3 {
                return Err(Error::Resolution(format!(
                    "non-integer winding {w} in cell ({i}, {j})"
                )));
            }
            let centre = window.node(i, j) + Complex64::new(0.5 * dx, 0.5 * dy);
            match k as i64 {
                0 => {}
                1 => scan.zeros.push(centre),
                -1 => scan.poles.push(centre),
                other => {
                    return Err(Error::Resolution(format!(
                        "winding {other} in cell ({i}, {j}); refine the scan"
                    )))
                }
            }
        }
    }
    Ok(scan)
}

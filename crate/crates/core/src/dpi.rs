//! Relativistic two-body scattering with a direct interaction added to the
//! mass operator (Bakamjian-Thomas construction).
//!
//! Relative momentum `p` (s-wave, measure `p² dp`), free mass
//! `M₀ = E(p) = 2√(p² + m²)`, interaction `M = M₀ + V` with the separable
//! invariant kernel `v(p, p′) = λ g(p) g(p′)`, `g(p) = exp(−p²/(2μ²))`.
//! Phase shifts follow from the principal-value K-matrix equation
//!
//! ```text
//! K(p, q) = v(p, q) + PV ∫ v(p, k) K(k, q) k² dk / (E(q) − E(k))
//! tan δ(q) = −π ρ(q) K(q, q),   ρ(q) = q² / E′(q)
//! ```

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::bessel_j_sequence;
use crate::numerics::quadrature::gauss_legendre;

/// Largest accepted relative residual of the K-matrix linear solve.
pub const SOLVE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoParticleSystem {
    pub m: f64,
    pub lambda: f64,
    pub mu: f64,
    /// Gauss-Legendre nodes of the K-matrix quadrature.
    pub grid_n: usize,
    /// Upper end of the K-matrix momentum grid.
    pub p_max: f64,
}

impl Default for TwoParticleSystem {
    fn default() -> Self {
        Self {
            m: 1.0,
            lambda: 0.5,
            mu: 1.0,
            grid_n: 96,
            p_max: 10.0,
        }
    }
}

impl TwoParticleSystem {
    pub fn with_coupling(lambda: f64) -> Self {
        Self {
            lambda,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0 && self.mu > 0.0 && self.p_max > 0.0) || !self.lambda.is_finite() {
            return Err(Error::domain("need m > 0, μ > 0, p_max > 0 and finite λ"));
        }
        if self.grid_n < 8 {
            return Err(Error::domain("K-matrix grid needs at least 8 nodes"));
        }
        Ok(())
    }

    pub fn form_factor(&self, p: f64) -> f64 {
        (-p * p / (2.0 * self.mu * self.mu)).exp()
    }

    pub fn kernel(&self, p: f64, q: f64) -> f64 {
        self.lambda * self.form_factor(p) * self.form_factor(q)
    }

    pub fn energy(&self, p: f64) -> f64 {
        2.0 * (p * p + self.m * self.m).sqrt()
    }

    pub fn energy_slope(&self, p: f64) -> f64 {
        2.0 * p / (p * p + self.m * self.m).sqrt()
    }

    /// `ρ(p) = p²/E′(p)`.
    pub fn density(&self, p: f64) -> f64 {
        p * p / self.energy_slope(p)
    }

    /// First Born approximation `δ ≈ −π ρ(p) v(p, p)`.
    pub fn born_phase(&self, p: f64) -> f64 {
        -PI * self.density(p) * self.kernel(p, p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseShift {
    pub p: f64,
    pub delta: f64,
    pub tan_delta: f64,
    /// Relative residual `‖A x − b‖/‖b‖` of the linear solve.
    pub solve_residual: f64,
}

/// Phase shift in partial wave `l` at on-shell momentum `p_on` from the
/// Haftel-Tabakin discretization of the K-matrix equation: the principal
/// value is subtracted as `F(k) − F(q)E′(k)/E′(q)` and the subtracted term
/// integrated exactly, `PV ∫ E′ dk/(E_q − E) = ln((E_q − E(0))/(E(p_max) − E_q))`.
///
/// The kernel depends only on `|p|`, so every wave but `l = 0` has `δ = 0`.
pub fn phase_shift(sys: &TwoParticleSystem, l: u32, p_on: f64) -> Result<PhaseShift> {
    sys.validate()?;
    if !(p_on > 0.0 && p_on < sys.p_max) {
        return Err(Error::domain(format!(
            "on-shell momentum {p_on} outside the open grid range (0, {})",
            sys.p_max
        )));
    }
    if l > 0 {
        return Ok(PhaseShift {
            p: p_on,
            delta: 0.0,
            tan_delta: 0.0,
            solve_residual: 0.0,
        });
    }
    let (x, w) = gauss_legendre(sys.grid_n);
    let nodes: Vec<(f64, f64)> = x
        .iter()
        .zip(&w)
        .map(|(&x, &w)| (0.5 * sys.p_max * (x + 1.0), 0.5 * sys.p_max * w))
        .collect();
    let q = p_on;
    let eq = sys.energy(q);
    if nodes.iter().any(|&(k, _)| (sys.energy(k) - eq).abs() < 1e-12 * eq) {
        return Err(Error::domain(format!("on-shell momentum {q} coincides with a node")));
    }
    let n = nodes.len();
    let mut d = Vec::with_capacity(n + 1);
    let mut subtraction = 0.0;
    for &(k, wk) in &nodes {
        let gap = eq - sys.energy(k);
        d.push(wk * k * k / gap);
        subtraction += wk * sys.energy_slope(k) / gap;
    }
    let log = ((eq - sys.energy(0.0)) / (sys.energy(sys.p_max) - eq)).ln();
    d.push(q * q * (log - subtraction) / sys.energy_slope(q));
    let points: Vec<f64> = nodes.iter().map(|&(k, _)| k).chain([q]).collect();
    let a = DMatrix::from_fn(n + 1, n + 1, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - sys.kernel(points[i], points[j]) * d[j]
    });
    let b = DVector::from_iterator(n + 1, points.iter().map(|&p| sys.kernel(p, q)));
    let sol = a
        .clone()
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::numeric("K-matrix system is singular"))?;
    let solve_residual = (&a * &sol - &b).norm() / b.norm().max(f64::MIN_POSITIVE);
    if !(solve_residual <= SOLVE_TOLERANCE) {
        return Err(Error::numeric(format!(
            "K-matrix solve residual {solve_residual:e} exceeds {SOLVE_TOLERANCE:e}"
        )));
    }
    let tan_delta = -PI * sys.density(q) * sol[n];
    Ok(PhaseShift {
        p: q,
        delta: tan_delta.atan(),
        tan_delta,
        solve_residual,
    })
}

/// Phase shifts along a sweep, unwrapped by multiples of π so that `δ` is
/// continuous in `p`.
pub fn phase_shift_sweep(sys: &TwoParticleSystem, momenta: &[f64]) -> Result<Vec<PhaseShift>> {
    let mut out: Vec<PhaseShift> = momenta
        .par_iter()
        .map(|&p| phase_shift(sys, 0, p))
        .collect::<Result<_>>()?;
    for i in 1..out.len() {
        let prev = out[i - 1].delta;
        let jump = ((out[i].delta - prev) / PI).round();
        out[i].delta -= jump * PI;
    }
    Ok(out)
}

/// `max_p |S(p) − 1| = max_p 2|sin δ(p)|` for each coupling.
pub fn cluster_limit(
    sys: &TwoParticleSystem,
    couplings: &[f64],
    momenta: &[f64],
) -> Result<Vec<(f64, f64)>> {
    couplings
        .iter()
        .map(|&lambda| {
            let s = TwoParticleSystem { lambda, ..*sys };
            let worst = momenta
                .iter()
                .map(|&p| Ok(2.0 * phase_shift(&s, 0, p)?.delta.sin().abs()))
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok((lambda, worst))
        })
        .collect()
}

/// In-place application of a Hermitian operator.
type Apply<'a> = dyn Fn(&[Complex64], &mut [Complex64]) + Sync + 'a;

/// Time-evolution oracle: uniform midpoint grid in relative momentum on
/// which `M = diag(E) + λ h hᵀ`, `h_i = g(k_i) k_i √Δk`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WavepacketConfig {
    pub n: usize,
    pub p_max: f64,
    /// Packet width in momentum; `None` picks `min(0.1, p/6)`.
    pub width: Option<f64>,
    /// Evolution time in units of the packet crossing time `1/(σ E′(p))`.
    pub time_factor: f64,
}

impl Default for WavepacketConfig {
    fn default() -> Self {
        Self {
            n: 3000,
            p_max: 4.0,
            width: None,
            time_factor: 20.0,
        }
    }
}

/// Which pair of mass operators drives the evolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    /// `(M, M₀)` for time `T`.
    Mass,
    /// `(M², M₀²)` for time `T/(2E(p))`.
    MassSquared,
}

struct PacketGrid {
    energy: Vec<f64>,
    h: Vec<f64>,
    lambda: f64,
    k: Vec<f64>,
}

impl PacketGrid {
    fn new(sys: &TwoParticleSystem, cfg: &WavepacketConfig) -> Self {
        let dk = cfg.p_max / cfg.n as f64;
        let k: Vec<f64> = (0..cfg.n).map(|i| (i as f64 + 0.5) * dk).collect();
        Self {
            energy: k.iter().map(|&k| sys.energy(k)).collect(),
            h: k.iter().map(|&k| sys.form_factor(k) * k * dk.sqrt()).collect(),
            lambda: sys.lambda,
            k,
        }
    }

    fn apply_mass(&self, x: &[Complex64], out: &mut [Complex64]) {
        let overlap: Complex64 = self.h.iter().zip(x).map(|(h, x)| x * h).sum();
        let c = overlap * self.lambda;
        for i in 0..x.len() {
            out[i] = x[i] * self.energy[i] + c * self.h[i];
        }
    }

    /// Weyl bounds on the spectrum of `M`.
    fn mass_bounds(&self) -> (f64, f64) {
        let hh: f64 = self.h.iter().map(|h| h * h).sum();
        let lo = self.energy.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = self.energy.iter().cloned().fold(0.0, f64::max);
        (lo + (self.lambda * hh).min(0.0), hi + (self.lambda * hh).max(0.0))
    }
}

/// `e^{−iHt} x` by Chebyshev expansion for `H` with spectrum in `[lo, hi]`.
fn chebyshev_propagate(
    apply: &dyn Fn(&[Complex64], &mut [Complex64]),
    bounds: (f64, f64),
    t: f64,
    x: &[Complex64],
) -> Vec<Complex64> {
    let (lo, hi) = bounds;
    let a = 0.5 * (hi - lo) * (1.0 + 1e-9) + 1e-12;
    let b = 0.5 * (hi + lo);
    let z = a * t.abs();
    let terms = (z + 20.0 * z.cbrt() + 40.0) as usize;
    let j = bessel_j_sequence(z, terms);
    let n = x.len();
    let scaled = |v: &[Complex64], out: &mut [Complex64]| {
        apply(v, out);
        for i in 0..n {
            out[i] = (out[i] - v[i] * b) / a;
        }
    };
    let sign = if t >= 0.0 { -1.0 } else { 1.0 };
    let mut prev = x.to_vec();
    let mut cur = vec![Complex64::new(0.0, 0.0); n];
    scaled(&prev, &mut cur);
    let mut acc: Vec<Complex64> = prev.iter().map(|v| v * j[0]).collect();
    let mut phase = Complex64::new(0.0, sign);
    for i in 0..n {
        acc[i] += cur[i] * (phase * 2.0 * j[1]);
    }
    let mut next = vec![Complex64::new(0.0, 0.0); n];
    for (k, &jk) in j.iter().enumerate().skip(2) {
        scaled(&cur, &mut next);
        for i in 0..n {
            next[i] = next[i] * 2.0 - prev[i];
        }
        phase *= Complex64::new(0.0, sign);
        let coef = phase * 2.0 * jk;
        for i in 0..n {
            acc[i] += next[i] * coef;
        }
        std::mem::swap(&mut prev, &mut cur);
        std::mem::swap(&mut cur, &mut next);
        let _ = k;
    }
    let global = Complex64::from_polar(1.0, sign * b * t.abs());
    acc.iter().map(|v| v * global).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WavepacketPhase {
    pub p: f64,
    pub delta: f64,
    /// `|⟨ψ|S|ψ⟩|/‖ψ‖²`, below 1 by the spread of `e^{2iδ}` over the packet.
    pub amplitude: f64,
    pub time: f64,
    pub width: f64,
}

/// `δ(p)` from `⟨ψ| e^{iA₀T} e^{−2iAT} e^{iA₀T} |ψ⟩ ≈ ⟨ψ|S|ψ⟩ ≈ e^{2iδ(p)}`
/// for a Gaussian packet centred at `p`, with `(A, A₀)` the chosen pipeline.
/// The evolution time `T = time_factor/(σE′(p))` (scaled by `1/(2E)` for
/// the squared pipeline) lets the packet cross the interaction region many
/// times its own width; the σ² bias of the packet average is removed by
/// Richardson extrapolation between widths `σ` and `σ/√2`.
pub fn wavepacket_phase(
    sys: &TwoParticleSystem,
    cfg: &WavepacketConfig,
    pipeline: Pipeline,
    p: f64,
) -> Result<WavepacketPhase> {
    sys.validate()?;
    if !(p > 0.0 && p < cfg.p_max) || cfg.n < 16 || !(cfg.time_factor > 0.0) {
        return Err(Error::domain("wavepacket momentum outside the grid or bad config"));
    }
    let sigma = cfg.width.unwrap_or_else(|| (0.1f64).min(p / 6.0));
    if !(sigma > 0.0) || p - 6.0 * sigma < -1e-12 || p + 6.0 * sigma >= cfg.p_max {
        return Err(Error::domain(format!(
            "packet of width {sigma} at {p} does not fit inside (0, {})",
            cfg.p_max
        )));
    }
    let grid = PacketGrid::new(sys, cfg);
    let dk = cfg.p_max / cfg.n as f64;
    if sigma < 10.0 * dk {
        return Err(Error::Resolution(format!("packet width {sigma} below 10 grid steps")));
    }
    let base_time = cfg.time_factor / (sigma * sys.energy_slope(p));
    let single = |width: f64| -> Result<(Complex64, f64)> {
        let time = base_time * sigma / width;
        let psi: Vec<Complex64> = grid
            .k
            .iter()
            .map(|&k| Complex64::new((-(k - p) * (k - p) / (2.0 * width * width)).exp(), 0.0))
            .collect();
        let norm: f64 = psi.iter().map(|v| v.norm_sqr()).sum();
        let (free, evolve, bounds, t): (Vec<f64>, Box<Apply>, (f64, f64), f64) =
            match pipeline {
                Pipeline::Mass => (
                    grid.energy.clone(),
                    Box::new(|x: &[Complex64], out: &mut [Complex64]| grid.apply_mass(x, out)),
                    grid.mass_bounds(),
                    time,
                ),
                Pipeline::MassSquared => {
                    let (lo, hi) = grid.mass_bounds();
                    if lo <= 0.0 {
                        return Err(Error::domain(
                            "M is not positive on the grid; M² is not an increasing function of it",
                        ));
                    }
                    (
                        grid.energy.iter().map(|e| e * e).collect(),
                        Box::new(|x: &[Complex64], out: &mut [Complex64]| {
                            let mut tmp = vec![Complex64::new(0.0, 0.0); x.len()];
                            grid.apply_mass(x, &mut tmp);
                            grid.apply_mass(&tmp, out);
                        }),
                        (lo * lo, hi * hi),
                        time / (2.0 * sys.energy(p)),
                    )
                }
            };
        let back: Vec<Complex64> = psi
            .iter()
            .zip(&free)
            .map(|(v, e)| v * Complex64::from_polar(1.0, e * t))
            .collect();
        let evolved = chebyshev_propagate(&*evolve, bounds, 2.0 * t, &back);
        let amp: Complex64 = psi
            .iter()
            .zip(evolved.iter().zip(&free))
            .map(|(v, (x, e))| v.conj() * x * Complex64::from_polar(1.0, e * t))
            .sum::<Complex64>()
            / norm;
        Ok((amp, time))
    };
    let (wide, time) = single(sigma)?;
    let (narrow, _) = single(sigma / 2f64.sqrt())?;
    let d_wide = 0.5 * wide.arg();
    let mut d_narrow = 0.5 * narrow.arg();
    d_narrow -= PI * ((d_narrow - d_wide) / PI).round();
    Ok(WavepacketPhase {
        p,
        delta: 2.0 * d_narrow - d_wide,
        amplitude: narrow.norm(),
        time,
        width: sigma,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub p: f64,
    pub delta_m: f64,
    pub delta_m2: f64,
    pub discrepancy: f64,
}

/// `|δ_M − δ_{M²}|`: the scattering operator of a positive function of the
/// mass operator is the same.
pub fn function_of_m_equivalence(
    sys: &TwoParticleSystem,
    cfg: &WavepacketConfig,
    p: f64,
) -> Result<EquivalenceReport> {
    let a = wavepacket_phase(sys, cfg, Pipeline::Mass, p)?;
    let b = wavepacket_phase(sys, cfg, Pipeline::MassSquared, p)?;
    let mut d = (a.delta - b.delta).abs();
    d = d.min((d - PI).abs());
    Ok(EquivalenceReport {
        p,
        delta_m: a.delta,
        delta_m2: b.delta,
        discrepancy: d,
    })
}

/// Grid for the Bakamjian-Thomas generators in 1+1 dimensions: total
/// momentum `P` (periodic, spectral derivative) × relative momentum `p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BtGrid {
    pub n_total: usize,
    pub n_relative: usize,
    /// `P ∈ [−P_max, P_max)`.
    pub total_max: f64,
    /// `p ∈ [−p_max, p_max]`, midpoint rule.
    pub relative_max: f64,
}

impl Default for BtGrid {
    fn default() -> Self {
        Self {
            n_total: 256,
            n_relative: 256,
            total_max: 16.0,
            relative_max: 8.0,
        }
    }
}

impl BtGrid {
    pub fn doubled(&self) -> Self {
        Self {
            n_total: 2 * self.n_total,
            n_relative: 2 * self.n_relative,
            ..*self
        }
    }

    pub fn total_momenta(&self) -> Vec<f64> {
        let d = 2.0 * self.total_max / self.n_total as f64;
        (0..self.n_total).map(|i| -self.total_max + i as f64 * d).collect()
    }

    pub fn relative_momenta(&self) -> Vec<f64> {
        let d = 2.0 * self.relative_max / self.n_relative as f64;
        (0..self.n_relative)
            .map(|i| -self.relative_max + (i as f64 + 0.5) * d)
            .collect()
    }
}

/// Discretized `P`, `M`, `H = √(P² + M²)` and `K = ½(X₀H + HX₀)` with
/// `X₀ = i∂/∂P`. States are row-major `ψ[iP · n_relative + ip]`.
pub struct BtGenerators {
    grid: BtGrid,
    total: Vec<f64>,
    mass_eigenvalues: Vec<f64>,
    mass_vectors: DMatrix<f64>,
}

impl BtGenerators {
    /// Assemble on `grid` with the 1+1 kernel `λ g(p)g(p′)` (measure `dp`).
    pub fn assemble(sys: &TwoParticleSystem, grid: BtGrid) -> Result<Self> {
        sys.validate()?;
        if grid.n_total < 8 || grid.n_relative < 4 || !grid.n_total.is_multiple_of(2) {
            return Err(Error::domain("BT grid needs an even n_total ≥ 8 and n_relative ≥ 4"));
        }
        let p = grid.relative_momenta();
        let dp = 2.0 * grid.relative_max / grid.n_relative as f64;
        let m = DMatrix::from_fn(grid.n_relative, grid.n_relative, |i, j| {
            let diag = if i == j { sys.energy(p[i]) } else { 0.0 };
            diag + sys.kernel(p[i], p[j]) * dp
        });
        let eig = m.symmetric_eigen();
        if eig.eigenvalues.iter().any(|&e| e <= 0.0) {
            return Err(Error::domain("mass operator is not positive on the grid"));
        }
        Ok(Self {
            grid,
            total: grid.total_momenta(),
            mass_eigenvalues: eig.eigenvalues.iter().cloned().collect(),
            mass_vectors: eig.eigenvectors,
        })
    }

    pub fn grid(&self) -> BtGrid {
        self.grid
    }

    fn len(&self) -> usize {
        self.grid.n_total * self.grid.n_relative
    }

    pub fn apply_p(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let nr = self.grid.n_relative;
        psi.iter()
            .enumerate()
            .map(|(i, v)| v * self.total[i / nr])
            .collect()
    }

    /// `H = U √(P² + Λ²) Uᵀ` on every `P` row.
    pub fn apply_h(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let nr = self.grid.n_relative;
        let u = &self.mass_vectors;
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (row, p_total) in self.total.iter().enumerate() {
            let x = &psi[row * nr..(row + 1) * nr];
            let coeffs: Vec<Complex64> = (0..nr)
                .map(|e| {
                    let c: Complex64 = (0..nr).map(|i| x[i] * u[(i, e)]).sum();
                    c * (p_total * p_total + self.mass_eigenvalues[e].powi(2)).sqrt()
                })
                .collect();
            for i in 0..nr {
                out[row * nr + i] = (0..nr).map(|e| coeffs[e] * u[(i, e)]).sum();
            }
        }
        out
    }

    /// `X₀ = i ∂/∂P` by FFT along the periodic `P` axis.
    pub fn apply_x0(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let (nt, nr) = (self.grid.n_total, self.grid.n_relative);
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(nt);
        let inv = planner.plan_fft_inverse(nt);
        let length = 2.0 * self.grid.total_max;
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        let mut column = vec![Complex64::new(0.0, 0.0); nt];
        for c in 0..nr {
            for r in 0..nt {
                column[r] = psi[r * nr + c];
            }
            fwd.process(&mut column);
            for (j, v) in column.iter_mut().enumerate() {
                let freq = if j < nt / 2 {
                    j as f64
                } else if j == nt / 2 {
                    0.0
                } else {
                    j as f64 - nt as f64
                };
                let kf = 2.0 * PI * freq / length;
                // i · (i kf) = −kf
                *v *= -kf / nt as f64;
            }
            inv.process(&mut column);
            for r in 0..nt {
                out[r * nr + c] = column[r];
            }
        }
        out
    }

    pub fn apply_k(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let a = self.apply_x0(&self.apply_h(psi));
        let b = self.apply_h(&self.apply_x0(psi));
        a.iter().zip(&b).map(|(x, y)| (x + y) * 0.5).collect()
    }

    /// Gaussian test state centred at `(0, p0)`.
    pub fn gaussian_state(&self, width_total: f64, p0: f64, width_relative: f64) -> Vec<Complex64> {
        let p = self.grid.relative_momenta();
        let mut out = Vec::with_capacity(self.len());
        for &pt in &self.total {
            for &pr in &p {
                let v = (-pt * pt / (2.0 * width_total * width_total)
                    - (pr - p0) * (pr - p0) / (2.0 * width_relative * width_relative))
                    .exp();
                out.push(Complex64::new(v, 0.0));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BtResiduals {
    /// `‖([K, P] − iH)ψ‖/‖ψ‖`
    pub r1: f64,
    /// `‖([K, H] − iP)ψ‖/‖ψ‖`
    pub r2: f64,
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Boost commutation relations `[K, P] = iH`, `[K, H] = iP` on a test state.
pub fn bt_commutator_residual(gen: &BtGenerators, psi: &[Complex64]) -> Result<BtResiduals> {
    let (nt, nr) = (gen.grid.n_total, gen.grid.n_relative);
    if psi.len() != nt * nr {
        return Err(Error::domain("test state does not match the grid"));
    }
    let norm = l2(psi);
    if norm == 0.0 {
        return Ok(BtResiduals { r1: 0.0, r2: 0.0 });
    }
    let peak = psi.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let edge = (0..nr)
        .flat_map(|c| [psi[c], psi[(nt - 1) * nr + c]])
        .chain((0..nt).flat_map(|r| [psi[r * nr], psi[r * nr + nr - 1]]))
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if edge > 1e-12 * peak {
        return Err(Error::domain(format!(
            "test state reaches the grid boundary (edge/peak = {:e})",
            edge / peak
        )));
    }
    let i = Complex64::new(0.0, 1.0);
    let hp = gen.apply_h(psi);
    let pp = gen.apply_p(psi);
    let kp = gen.apply_k(psi);
    let k_p = gen.apply_k(&pp);
    let p_k = gen.apply_p(&kp);
    let r1: Vec<Complex64> = (0..psi.len()).map(|j| k_p[j] - p_k[j] - i * hp[j]).collect();
    let k_h = gen.apply_k(&hp);
    let h_k = gen.apply_h(&kp);
    let r2: Vec<Complex64> = (0..psi.len()).map(|j| k_h[j] - h_k[j] - i * pp[j]).collect();
    Ok(BtResiduals {
        r1: l2(&r1) / norm,
        r2: l2(&r2) / norm,
    })
}

use std::io::{Read, Write};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};

/// A complex-valued function sampled on a uniform abscissa `x_min..=x_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    x_min: f64,
    x_max: f64,
    samples: Vec<Complex64>,
}

/// Squared norms of the positive- and negative-time halves of a discrete
/// Fourier transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupportSplit {
    pub positive_time_norm: f64,
    pub negative_time_norm: f64,
}

impl SupportSplit {
    pub fn total(&self) -> f64 {
        self.positive_time_norm + self.negative_time_norm
    }
}

impl GridFunction {
    pub fn new(x_min: f64, x_max: f64, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Size(format!(
                "a grid function needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::domain(format!(
                "grid bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if samples.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::domain("grid samples must be finite"));
        }
        Ok(Self {
            x_min,
            x_max,
            samples,
        })
    }

    pub fn from_fn(x_min: f64, x_max: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Size(format!("need n >= 2, got {n}")));
        }
        let h = (x_max - x_min) / (n - 1) as f64;
        let samples = (0..n).map(|i| f(x_min + i as f64 * h)).collect();
        Self::new(x_min, x_max, samples)
    }

    pub fn from_real_fn(x_min: f64, x_max: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(x_min, x_max, n, |x| Complex64::new(f(x), 0.0))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.len() - 1) as f64
    }

    pub fn abscissa(&self, i: usize) -> f64 {
        if i + 1 == self.len() {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn abscissae(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.abscissa(i))
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &z)| (self.abscissa(i), z))
    }

    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        Self {
            x_min: self.x_min,
            x_max: self.x_max,
            samples: self.points().map(|(x, z)| f(x, z)).collect(),
        }
    }

    /// Real part, stored as a real-valued grid function.
    pub fn real_part(&self) -> Self {
        self.map(|_, z| Complex64::new(z.re, 0.0))
    }

    /// Imaginary part, stored as a real-valued grid function.
    pub fn imag_part(&self) -> Self {
        self.map(|_, z| Complex64::new(z.im, 0.0))
    }

    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|z| z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest end-point magnitude relative to the largest sample, the
    /// decay diagnostic used to decide whether truncation at the grid ends
    /// can be trusted. Zero functions report 0.
    pub fn end_ratio(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let ends = self.samples[0].norm().max(self.samples[self.len() - 1].norm());
        ends / peak
    }

    /// Sub-grid covering sample indices `lo..hi`.
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Self> {
        if hi > self.len() || hi < lo + 2 {
            return Err(Error::Size(format!(
                "slice {lo}..{hi} of a {}-point grid",
                self.len()
            )));
        }
        Self::new(
            self.abscissa(lo),
            self.abscissa(hi - 1),
            self.samples[lo..hi].to_vec(),
        )
    }

    fn check_interior(&self, x: f64) -> Result<()> {
        if !(x > self.x_min && x < self.x_max) {
            return Err(Error::domain(format!(
                "{x} is not strictly inside the grid [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        Ok(())
    }

    /// Four-point Lagrange stencil around `x`: first index and the weights
    /// for the value and the first derivative.
    fn stencil(&self, x: f64) -> (usize, [f64; 4], [f64; 4]) {
        let h = self.spacing();
        let n = self.len();
        let t = (x - self.x_min) / h;
        let base = if n < 4 {
            0
        } else {
            (t.floor() as isize - 1).clamp(0, n as isize - 4) as usize
        };
        let m = n.min(4);
        let nodes: Vec<f64> = (0..m).map(|k| (base + k) as f64).collect();
        let mut w = [0.0; 4];
        let mut dw = [0.0; 4];
        for j in 0..m {
            let mut num = 1.0;
            let mut den = 1.0;
            for k in 0..m {
                if k != j {
                    num *= t - nodes[k];
                    den *= nodes[j] - nodes[k];
                }
            }
            w[j] = num / den;
            let mut d = 0.0;
            for skip in 0..m {
                if skip == j {
                    continue;
                }
                let mut prod = 1.0;
                for (k, &x) in nodes.iter().enumerate().take(m) {
                    if k != j && k != skip {
                        prod *= t - x;
                    }
                }
                d += prod;
            }
            dw[j] = d / den / h;
        }
        (base, w, dw)
    }

    /// Local cubic interpolation; `x` must lie inside the closed grid range.
    pub fn interpolate(&self, x: f64) -> Result<Complex64> {
        if !(x >= self.x_min && x <= self.x_max) {
            return Err(Error::domain(format!(
                "{x} lies outside the grid [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        let (base, w, _) = self.stencil(x);
        Ok((0..self.len().min(4))
            .map(|k| self.samples[base + k] * w[k])
            .sum())
    }

    fn interpolate_with_derivative(&self, x: f64) -> (Complex64, Complex64) {
        let (base, w, dw) = self.stencil(x);
        let m = self.len().min(4);
        let v = (0..m).map(|k| self.samples[base + k] * w[k]).sum();
        let d = (0..m).map(|k| self.samples[base + k] * dw[k]).sum();
        (v, d)
    }

    /// Principal value of `∫ f(x′)/(ω − x′) dx′` over the grid range.
    ///
    /// Uses singularity subtraction: the smooth remainder
    /// `(f(x′) − f(ω))/(ω − x′)` is integrated with composite Simpson weights and
    /// `f(ω)·ln((ω − x_min)/(x_max − ω))` is added back analytically. `f(ω)` and
    /// the removable limit `−f′(ω)` come from the local cubic interpolant.
    /// Imaginary parts of the samples are rejected.
    pub fn pv_integral(&self, omega: f64) -> Result<f64> {
        if !self.is_real() {
            return Err(Error::domain("pv_integral expects real-valued samples"));
        }
        Ok(self.pv_integral_complex(omega)?.re)
    }

    /// Complex-valued variant of [`GridFunction::pv_integral`].
    pub fn pv_integral_complex(&self, omega: f64) -> Result<Complex64> {
        self.check_interior(omega)?;
        let h = self.spacing();
        let (f0, mut df0) = self.interpolate_with_derivative(omega);
        // On a node the 4-point stencil is one-sided; the removable limit
        // needs the centred fourth-order difference instead.
        let t = (omega - self.x_min) / h;
        let node = t.round() as usize;
        if (t - node as f64).abs() < 1e-6 && node >= 2 && node + 2 < self.len() {
            let f = &self.samples;
            df0 = (f[node - 2] - f[node - 1] * 8.0 + f[node + 1] * 8.0 - f[node + 2]) / (12.0 * h);
        }
        let weights = simpson_weights(self.len(), h);
        let near = 1e-6 * h;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, (&wi, &fi)) in weights.iter().zip(&self.samples).enumerate() {
            let d = omega - self.abscissa(i);
            let g = if d.abs() < near { -df0 } else { (fi - f0) / d };
            acc += g * wi;
        }
        let log_term = ((omega - self.x_min) / (self.x_max - omega)).ln();
        Ok(acc + f0 * log_term)
    }

    /// Discrete Fourier transform split into positive- and negative-time halves.
    ///
    /// Bin `m` of the forward transform `Σ_k f_k e^{−2πikm/n}` corresponds to
    /// time `t_m = 2πm/(n h)` for `m < n/2` and to negative times for the upper
    /// half. The `t = 0` bin, and the Nyquist bin for even `n`, are split evenly
    /// between the halves. Norms are scaled by `1/n` so that they add up to the
    /// discrete Parseval norm `Σ|f_k|²`.
    pub fn fourier_support_split(&self) -> Result<SupportSplit> {
        let n = self.len();
        if n < 4 {
            return Err(Error::Size(format!(
                "fourier_support_split needs at least 4 samples, got {n}"
            )));
        }
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let power: Vec<f64> = buf.iter().map(|z| z.norm_sqr() / n as f64).collect();
        let mut pos = 0.5 * power[0];
        let mut neg = 0.5 * power[0];
        let half = n / 2;
        for (m, &p) in power.iter().enumerate().skip(1) {
            if n.is_multiple_of(2) && m == half {
                pos += 0.5 * p;
                neg += 0.5 * p;
            } else if m <= half {
                pos += p;
            } else {
                neg += p;
            }
        }
        Ok(SupportSplit {
            positive_time_norm: pos,
            negative_time_norm: neg,
        })
    }

    pub fn parseval_norm(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Writes `x,re` (real-valued) or `x,re,im` rows with a header.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let real = self.is_real();
        if real {
            w.write_record(["x", "re"])?;
        } else {
            w.write_record(["x", "re", "im"])?;
        }
        for (x, z) in self.points() {
            if real {
                w.write_record([x.to_string(), z.re.to_string()])?;
            } else {
                w.write_record([x.to_string(), z.re.to_string(), z.im.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the two- or three-column layout written by [`GridFunction::write_csv`].
    /// The abscissa must be uniform to a relative tolerance of `1e−9`.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = r.headers()?.clone();
        let cols = header.len();
        if !(cols == 2 || cols == 3) || &header[0] != "x" || &header[1] != "re" {
            return Err(Error::domain(format!(
                "expected header `x,re` or `x,re,im`, got `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            )));
        }
        if cols == 3 && &header[2] != "im" {
            return Err(Error::domain("third column must be `im`"));
        }
        let parse = |s: &str, line: u64| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|e| Error::domain(format!("line {line}: cannot parse `{s}`: {e}")))
        };
        let mut xs = Vec::new();
        let mut samples = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let line = rec.position().map(|p| p.line()).unwrap_or(0);
            if rec.len() != cols {
                return Err(Error::domain(format!(
                    "line {line}: expected {cols} columns, got {}",
                    rec.len()
                )));
            }
            xs.push(parse(&rec[0], line)?);
            let im = if cols == 3 { parse(&rec[2], line)? } else { 0.0 };
            samples.push(Complex64::new(parse(&rec[1], line)?, im));
        }
        if xs.len() < 2 {
            return Err(Error::Size("CSV grid needs at least 2 rows".into()));
        }
        let (x_min, x_max) = (xs[0], xs[xs.len() - 1]);
        let h = (x_max - x_min) / (xs.len() - 1) as f64;
        for (i, &x) in xs.iter().enumerate() {
            let expect = x_min + i as f64 * h;
            if (x - expect).abs() > 1e-9 * (x_max - x_min).abs().max(1.0) {
                return Err(Error::domain(format!(
                    "abscissa is not uniform: row {i} has x = {x}, expected {expect}"
                )));
            }
        }
        Self::new(x_min, x_max, samples)
    }
}

/// Composite Simpson weights on `n` uniformly spaced points; when the number
/// of intervals is odd the last three intervals use the 3/8 rule. Two points
/// fall back to the trapezoid rule.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n];
    match n {
        0 | 1 => return w,
        2 => {
            w[0] = h / 2.0;
            w[1] = h / 2.0;
            return w;
        }
        3 => {
            w[0] = h / 3.0;
            w[1] = 4.0 * h / 3.0;
            w[2] = h / 3.0;
            return w;
        }
        4 => {
            w[0] = 3.0 * h / 8.0;
            w[1] = 9.0 * h / 8.0;
            w[2] = 9.0 * h / 8.0;
            w[3] = 3.0 * h / 8.0;
            return w;
        }
        _ => {}
    }
    let intervals = n - 1;
    let simpson_end = if intervals.is_multiple_of(2) { n - 1 } else { n - 4 };
    for i in (0..simpson_end).step_by(2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if simpson_end != n - 1 {
        let s = simpson_end;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lorentzian(x: f64) -> Complex64 {
        Complex64::new(1.0, 0.0) / Complex64::new(-x, -1.0)
    }

    #[test]
    fn construction_rejects_degenerate_grids() {
        assert!(GridFunction::new(0.0, 1.0, vec![Complex64::new(0.0, 0.0)]).is_err());
        assert!(GridFunction::new(1.0, 1.0, vec![Complex64::new(0.0, 0.0); 3]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![Complex64::new(f64::NAN, 0.0); 3]).is_err());
    }

    #[test]
    fn simpson_weights_integrate_cubics_exactly() {
        for n in [5, 6, 7, 8, 33, 64] {
            let h = 2.0 / (n - 1) as f64;
            let w = simpson_weights(n, h);
            let s: f64 = (0..n)
                .map(|i| {
                    let x = -1.0 + i as f64 * h;
                    w[i] * (x * x * x + 2.0 * x * x + 1.0)
                })
                .sum();
            assert!((s - (4.0 / 3.0 + 2.0)).abs() < 1e-12, "n = {n}: {s}");
        }
    }

    #[test]
    fn pv_of_zero_is_zero() {
        let f = GridFunction::from_real_fn(-5.0, 5.0, 101, |_| 0.0).unwrap();
        assert_eq!(f.pv_integral(0.3).unwrap(), 0.0);
    }

    #[test]
    fn pv_cancels_for_profiles_even_about_the_evaluation_point() {
        // f(ω+t) = f(ω−t) makes f(ω′)/(ω−ω′) odd in t, so the principal value
        // vanishes. An odd profile does not cancel; it gives −∫ g(t)/t dt.
        let w = 0.37;
        let even = GridFunction::from_real_fn(w - 10.0, w + 10.0, 2001, |x| {
            (-(x - w) * (x - w)).exp()
        })
        .unwrap();
        let v = even.pv_integral(w).unwrap();
        assert!(v.abs() < 1e-12, "{v}");

        let odd = GridFunction::from_real_fn(w - 10.0, w + 10.0, 2001, |x| {
            let t = x - w;
            t * (-t * t).exp()
        })
        .unwrap();
        let expect = -std::f64::consts::PI.sqrt();
        let v = odd.pv_integral(w).unwrap();
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");
    }

    #[test]
    fn pv_of_real_lorentzian_at_origin_vanishes() {
        let f = GridFunction::from_real_fn(-50.0, 50.0, 4096, |x| 1.0 / (x * x + 1.0)).unwrap();
        // 0 falls between nodes here and the odd interval count puts a 3/8
        // panel at one end, so the cancellation is only to quadrature order.
        let v = f.pv_integral(0.0).unwrap();
        assert!(v.abs() < 1e-6, "{v}");
    }

    #[test]
    fn pv_on_and_off_grid_points_agree_with_closed_form() {
        // PV ∫ 1/((x′²+1)(ω−x′)) dx′ = π ω/(ω²+1) on the full line; the
        // truncation to [−60, 60] shifts this by less than 1e−4 at |ω| ≤ 3.
        let f = GridFunction::from_real_fn(-60.0, 60.0, 6001, |x| 1.0 / (x * x + 1.0)).unwrap();
        for omega in [0.48, 0.5, 1.0, -2.25, 2.9] {
            let exact = std::f64::consts::PI * omega / (omega * omega + 1.0);
            let got = f.pv_integral(omega).unwrap();
            assert!((got - exact).abs() < 2e-4, "ω={omega}: {got} vs {exact}");
        }
    }

    #[test]
    fn pv_rejects_points_outside_interior() {
        let f = GridFunction::from_real_fn(-1.0, 1.0, 11, |x| x).unwrap();
        assert!(matches!(f.pv_integral(1.0), Err(Error::Domain(_))));
        assert!(matches!(f.pv_integral(-3.0), Err(Error::Domain(_))));
    }

    #[test]
    fn fourier_split_edge_cases() {
        let zero = GridFunction::from_real_fn(-1.0, 1.0, 16, |_| 0.0).unwrap();
        let s = zero.fourier_support_split().unwrap();
        assert_eq!((s.positive_time_norm, s.negative_time_norm), (0.0, 0.0));

        let even = GridFunction::from_real_fn(-4.0, 4.0, 64, |x| (-x * x).exp()).unwrap();
        let s = even.fourier_support_split().unwrap();
        assert!((s.positive_time_norm - s.negative_time_norm).abs() < 1e-12 * s.total());

        let tiny = GridFunction::from_real_fn(-1.0, 1.0, 3, |x| x).unwrap();
        assert!(matches!(tiny.fourier_support_split(), Err(Error::Size(_))));
    }

    #[test]
    fn raw_fourier_split_orients_lorentzian_by_analyticity_half_plane() {
        let causal = GridFunction::from_fn(-50.0, 50.0, 4096, lorentzian).unwrap();
        let anti = causal.map(|_, z| z.conj());
        let c = causal.fourier_support_split().unwrap();
        let a = anti.fourier_support_split().unwrap();
        // The plain transform leaks the truncated 1/ω tail into both halves;
        // the orientation is still unambiguous.
        assert!(c.negative_time_norm / c.total() < 0.05);
        assert!(a.negative_time_norm / a.total() > 0.95);
    }

    #[test]
    fn interpolation_is_exact_for_cubics() {
        let f = GridFunction::from_real_fn(0.0, 3.0, 13, |x| x * x * x - x).unwrap();
        for x in [0.0, 0.1, 1.37, 2.99, 3.0] {
            let v = f.interpolate(x).unwrap().re;
            assert!((v - (x * x * x - x)).abs() < 1e-12);
        }
        assert!(f.interpolate(3.5).is_err());
    }

    #[test]
    fn csv_round_trip_and_header_checks() {
        let f = GridFunction::from_fn(-1.0, 1.0, 5, |x| Complex64::new(x, x * x)).unwrap();
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("x,re,im\n"));
        let g = GridFunction::read_csv(buf.as_slice()).unwrap();
        assert_eq!(g.len(), 5);
        for (a, b) in f.samples().iter().zip(g.samples()) {
            assert!((a - b).norm() < 1e-15);
        }

        let real = "x,re\n0,1\n0.5,2\n1,3\n";
        let g = GridFunction::read_csv(real.as_bytes()).unwrap();
        assert!(g.is_real());
        assert_eq!(g.spacing(), 0.5);

        assert!(GridFunction::read_csv("0,1\n1,2\n".as_bytes()).is_err());
        assert!(GridFunction::read_csv("x,re\n0,1\n0.2,2\n1,3\n".as_bytes()).is_err());
    }
}

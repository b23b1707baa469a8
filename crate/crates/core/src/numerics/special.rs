//! Bessel functions of the first kind for Chebyshev time propagation.

/// `J_0(z) … J_kmax(z)` for real `z ≥ 0` by Miller's backward recurrence,
/// normalized with `J_0 + 2 Σ_k J_{2k} = 1`.
pub fn bessel_j_sequence(z: f64, kmax: usize) -> Vec<f64> {
    assert!(z >= 0.0 && z.is_finite(), "bessel_j_sequence needs finite z ≥ 0");
    let mut out = vec![0.0; kmax + 1];
    if z == 0.0 {
        out[0] = 1.0;
        return out;
    }
    // Start well past both kmax and the turning point k ≈ z.
    let start = kmax.max(z as usize) + 40 + (10.0 * z.cbrt()) as usize;
    let start = start + start % 2;
    let mut values = vec![0.0; start + 2];
    values[start] = 1e-300;
    let mut norm = 0.0;
    for n in (1..=start).rev() {
        let prev = 2.0 * n as f64 / z * values[n] - values[n + 1];
        values[n - 1] = prev;
        if prev.abs() > 1e250 {
            for v in values[n - 1..].iter_mut() {
                *v *= 1e-250;
            }
            norm *= 1e-250;
        }
        if n % 2 == 0 {
            norm += 2.0 * values[n];
        }
    }
    norm += values[0];
    for (k, o) in out.iter_mut().enumerate() {
        *o = values[k] / norm;
    }
    out
}

//! Modular (KMS) condition and wedge duality for the free field, and the
//! Unruh periodicity of the accelerated correlator.

use std::f64::consts::PI;

use wedgebench::crossing::*;
use wedgebench::scatfunc::linspace;

fn main() -> wedgebench::Result<()> {
    let m = ModularData::default();
    let (f, g) = (gaussian_wave(0.4, 0.8), gaussian_wave(-0.3, 0.8));
    let r = kms_check_free(&m, &f, &g)?;
    println!("KMS: lhs {:.8} rhs {:.8} residual {:.1e}", r.lhs, r.rhs, r.residual);
    println!("with Δ^(1/2) instead of Δ: {:.1e}", kms_check_with_power(&m, &f, &g, 0.5)?.residual);

    let d = wedge_duality_vacuum_check(&m, &f, &g)?;
    println!("wedge duality commutator {:.1e}", d.residual);
    let cut = wedge_duality_vacuum_check(&m, &f, &hard_cutoff_wave(-0.3, 0.8, 0.5))?;
    println!("with a hard rapidity cutoff:  {:.1e}", cut.residual);

    let a = 0.7;
    let taus = linspace(0.1, 3.0, 20);
    let beta = 2.0 * PI / a;
    println!("Unruh β = 2π/a: {:.1e}", unruh_kms_check(a, beta, &taus)?.residual);
    println!("Unruh β × 0.9:  {:.1e}", unruh_kms_check(a, 0.9 * beta, &taus)?.residual);
    Ok(())
}

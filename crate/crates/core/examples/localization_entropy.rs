//! Growth of the partial-charge fluctuation as the smearing edge shrinks:
//! logarithmic for a conformal current, not for a quartic kernel.

use wedgebench::localization::*;

fn main() -> wedgebench::Result<()> {
    let widths = geometric_sequence(1e-2, 1e-4, 9)?;
    let chiral = entropy_scaling_fit(1.0, &widths, &CurrentModel::chiral(), 128)?;
    for (dr, q) in &chiral.samples {
        println!("ΔR/R = {dr:.1e}   fluctuation = {q:.6}");
    }
    let log = chiral.fit.log;
    println!("log law: slope {:.4}, r² {:.6}, verdict {:?}", log.slope, log.r2, chiral.fit.verdict);

    let quartic = entropy_scaling_fit(1.0, &widths, &CurrentModel::with_kernel_power(4), 128)?;
    println!("quartic kernel: r² {:.4}, verdict {:?}", quartic.fit.log.r2, quartic.fit.verdict);

    let p = SmearingProfile::new(1.0, 1e-2)?;
    println!(
        "momentum vs position space: {:.10} / {:.10}",
        charge_fluctuation(&p, &CurrentModel::chiral())?,
        charge_fluctuation_position(&p, &CurrentModel::chiral())?
    );
    Ok(())
}

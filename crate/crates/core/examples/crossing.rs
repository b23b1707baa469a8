//! Watson equations and the crossing continuation for the Ising energy
//! form factor.

use num_complex::Complex64;
use wedgebench::crossing::{crossing_check, watson_check, FormFactor};
use wedgebench::scatfunc::{linspace, ScatteringFunction};

fn main() -> wedgebench::Result<()> {
    let f = FormFactor::ising_energy();
    println!("F(1) = {:.6}", f.eval_difference(Complex64::new(1.0, 0.0))?);
    let samples = linspace(-3.0, 3.0, 50);
    let w = watson_check(&f, &ScatteringFunction::ising(), &samples)?;
    println!("exchange {:.1e}, 2πi periodicity {:.1e}", w.exchange, w.periodicity);

    let tuples: Vec<Vec<f64>> = samples.iter().map(|&t| vec![t + 0.5, t - 0.5]).collect();
    println!("one-particle crossing residual {:.1e}", crossing_check(&f, 1, &tuples)?);
    match crossing_check(&f, 1, &[vec![0.2, 0.9]]) {
        Err(e) => println!("ascending rapidities rejected: {e}"),
        Ok(_) => println!("ascending rapidities unexpectedly accepted"),
    }
    Ok(())
}

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scatfunc::ScatteringFunction;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum FormFactorModel {
    /// Constant form factors of a field linear in the free creation and
    /// annihilation operators (`S = 1`).
    FreeFieldLinear,
    /// Two-particle form factor of the Ising energy density,
    /// `F(θ₁, θ₂) = −i sinh((θ₁−θ₂)/2)` (`S = −1`).
    IsingEnergy,
    /// `IsingEnergy + ε cosh((θ₁−θ₂)/2)`: breaks exchange and crossing.
    IsingEnergyPerturbed { epsilon: f64 },
    /// `F(θ₁, θ₂) = θ₁ − θ₂`: satisfies exchange with `S = −1` but not
    /// `2πi` periodicity.
    Linear,
}

/// `⟨0|B|θ₁…θₙ⟩` for a closed-form model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormFactor {
    pub model: FormFactorModel,
    pub n: usize,
}

impl FormFactor {
    pub fn new(model: FormFactorModel, n: usize) -> Result<Self> {
        match model {
            FormFactorModel::FreeFieldLinear if n >= 1 => {}
            FormFactorModel::FreeFieldLinear => {
                return Err(Error::domain("free-field form factor needs n ≥ 1"))
            }
            _ if n != 2 => {
                return Err(Error::domain(format!("{model:?} is a two-particle form factor")))
            }
            _ => {}
        }
        Ok(Self { model, n })
    }

    pub fn ising_energy() -> Self {
        Self::new(FormFactorModel::IsingEnergy, 2).expect("n = 2")
    }

    pub fn eval(&self, theta: &[Complex64]) -> Result<Complex64> {
        if theta.len() != self.n {
            return Err(Error::domain(format!(
                "form factor takes {} rapidities, got {}",
                self.n,
                theta.len()
            )));
        }
        Ok(match self.model {
            FormFactorModel::FreeFieldLinear => Complex64::new(1.0, 0.0),
            FormFactorModel::IsingEnergy => -I * ((theta[0] - theta[1]) / 2.0).sinh(),
            FormFactorModel::IsingEnergyPerturbed { epsilon } => {
                let x = (theta[0] - theta[1]) / 2.0;
                -I * x.sinh() + epsilon * x.cosh()
            }
            FormFactorModel::Linear => theta[0] - theta[1],
        })
    }

    /// Difference form `F(θ) = F(θ, 0)` of a two-particle form factor.
    pub fn eval_difference(&self, theta: Complex64) -> Result<Complex64> {
        self.eval(&[theta, Complex64::new(0.0, 0.0)])
    }

    /// `⟨θ′₁…θ′ₘ|B|θ₁…θₖ⟩` (connected part) from its own closed form, used
    /// as the independent side of the crossing identity. Outgoing rapidities
    /// may be complex (continued). Models without a separately known matrix
    /// element return a domain error.
    pub fn matrix_element(&self, out: &[Complex64], inc: &[Complex64]) -> Result<Complex64> {
        if out.len() + inc.len() != self.n {
            return Err(Error::domain("matrix element particle count mismatch"));
        }
        match self.model {
            FormFactorModel::FreeFieldLinear => Ok(Complex64::new(1.0, 0.0)),
            FormFactorModel::IsingEnergy | FormFactorModel::IsingEnergyPerturbed { .. } => {
                if out.len() != 1 {
                    return Err(Error::domain(
                        "Ising energy crossing is implemented for one outgoing particle",
                    ));
                }
                // ⟨θ′|ε|θ⟩ = cosh((θ − θ′)/2); the perturbed model keeps the
                // unperturbed matrix element, which its form factor no longer
                // reproduces.
                Ok(((inc[0] - out[0]) / 2.0).cosh())
            }
            FormFactorModel::Linear => Err(Error::domain(
                "the linear control model has no independent matrix element",
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WatsonResiduals {
    /// `sup |F(θ) − S(θ)F(−θ)|`
    pub exchange: f64,
    /// `sup |F(θ + 2πi) − F(−θ)|`
    pub periodicity: f64,
}

pub fn watson_check(f: &FormFactor, s: &ScatteringFunction, samples: &[f64]) -> Result<WatsonResiduals> {
    if f.n != 2 {
        return Err(Error::domain("Watson's equations are checked on two-particle form factors"));
    }
    let mut r = WatsonResiduals {
        exchange: 0.0,
        periodicity: 0.0,
    };
    for &t in samples {
        let th = Complex64::new(t, 0.0);
        let f_t = f.eval_difference(th)?;
        let f_m = f.eval_difference(-th)?;
        r.exchange = r.exchange.max((f_t - s.eval(th)? * f_m).norm());
        let f_p = f.eval_difference(th + Complex64::new(0.0, 2.0 * PI))?;
        r.periodicity = r.periodicity.max((f_p - f_m).norm());
    }
    Ok(r)
}

/// Crossing: `F(θ₁…θₙ) = ⟨θ_{k+1}+iπ … θₙ+iπ | B | θ₁…θₖ⟩` for each sample
/// tuple, which must be strictly descending (only the smaller rapidities may
/// be crossed to the outgoing side). Returns the sup residual.
pub fn crossing_check(f: &FormFactor, k: usize, samples: &[Vec<f64>]) -> Result<f64> {
    if k > f.n {
        return Err(Error::domain(format!("cannot cross {k} of {} particles", f.n)));
    }
    let mut worst = 0.0f64;
    for theta in samples {
        if theta.len() != f.n {
            return Err(Error::domain("sample length differs from particle count"));
        }
        if let Some(w) = theta.windows(2).find(|w| !(w[0] > w[1])) {
            return Err(Error::Ordering(format!(
                "rapidities must be strictly descending; {} is followed by {}",
                w[0], w[1]
            )));
        }
        let z: Vec<Complex64> = theta.iter().map(|&t| Complex64::new(t, 0.0)).collect();
        let direct = f.eval(&z)?;
        let out: Vec<Complex64> = z[k..].iter().map(|t| t + Complex64::new(0.0, PI)).collect();
        let crossed = f.matrix_element(&out, &z[..k])?;
        worst = worst.max((direct - crossed).norm());
    }
    Ok(worst)
}

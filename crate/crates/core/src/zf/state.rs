use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{normal_order, Atom, Coefficient, DeltaMode, Expression, Generator, Kind, Term, Word, I_PI};
use crate::error::{Error, Result};
use crate::numerics::quadrature::integrate;
use crate::numerics::AnalyticSampler;
use crate::scatfunc::ScatteringFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateTag {
    In,
    Out,
}

/// Multi-particle scattering state. Rapidities are stored in natural order
/// `θ₁ > … > θₙ`; the tag decides the order of the creators:
/// `|θ₁…θₙ⟩_in = Z*(θ₁)…Z*(θₙ)|0⟩`, `|θ₁…θₙ⟩_out = Z*(θₙ)…Z*(θ₁)|0⟩`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParticleState {
    rapidities: Vec<f64>,
    tag: StateTag,
}

impl ParticleState {
    pub fn vacuum() -> Self {
        Self {
            rapidities: vec![],
            tag: StateTag::In,
        }
    }

    pub fn rapidities(&self) -> &[f64] {
        &self.rapidities
    }

    pub fn tag(&self) -> StateTag {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.rapidities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rapidities.is_empty()
    }

    /// Creators in the order they act on the vacuum.
    pub fn word(&self) -> Vec<Generator> {
        let mut g: Vec<Generator> = self.rapidities.iter().map(|&t| Generator::creator(t)).collect();
        if self.tag == StateTag::Out {
            g.reverse();
        }
        g
    }

    /// The state written in the normal-ordered (in-ordered) basis.
    pub fn expression(&self) -> Result<Expression> {
        Ok(normal_order(&Word::numeric(self.word()))?.on_vacuum())
    }

    fn require_in(&self) -> Result<()> {
        if self.tag != StateTag::In {
            return Err(Error::domain("operation needs an in-state"));
        }
        Ok(())
    }

    fn without(&self, k: usize) -> Self {
        let mut r = self.rapidities.clone();
        r.remove(k);
        Self {
            rapidities: r,
            tag: self.tag,
        }
    }

    fn with_inserted(&self, slot: usize, theta: f64) -> Self {
        let mut r = self.rapidities.clone();
        r.insert(slot, theta);
        Self {
            rapidities: r,
            tag: self.tag,
        }
    }
}

/// Build an in- or out-state from distinct rapidities (any input order).
pub fn build_state(rapidities: &[f64], tag: StateTag) -> Result<ParticleState> {
    if let Some(x) = rapidities.iter().find(|x| !x.is_finite()) {
        return Err(Error::domain(format!("non-finite rapidity {x}")));
    }
    let mut r = rapidities.to_vec();
    r.sort_by(|a, b| b.total_cmp(a));
    if let Some(w) = r.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Coincidence(format!("rapidity {} appears twice", w[0])));
    }
    Ok(ParticleState { rapidities: r, tag })
}

/// Weighted state in a numeric state sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateTerm {
    pub weight: Complex64,
    pub state: ParticleState,
}

fn slot_of(theta: f64, state: &ParticleState) -> usize {
    state.rapidities.iter().take_while(|&&t| t > theta).count()
}

/// Grazing-shot factor `Π_{i≤j} S(ϑ − θᵢ + shift)` over the first `j`
/// rapidities.
fn grazing_factor(
    s: &ScatteringFunction,
    theta: Complex64,
    rapidities: &[f64],
    j: usize,
) -> Result<Complex64> {
    rapidities[..j]
        .iter()
        .map(|&t| s.eval(theta - t))
        .product()
}

/// `Z*(ϑ)|θ₁…θₙ⟩_in`: the creator is commuted to its slot `j` (the number of
/// `θᵢ > ϑ`), collecting `S(ϑ−θ₁)…S(ϑ−θⱼ)`.
pub fn apply_creator(
    s: &ScatteringFunction,
    theta: f64,
    state: &ParticleState,
) -> Result<(Complex64, ParticleState)> {
    state.require_in()?;
    if state.rapidities.contains(&theta) {
        return Err(Error::Coincidence(format!(
            "created rapidity {theta} is already occupied"
        )));
    }
    let j = slot_of(theta, state);
    let factor = grazing_factor(s, Complex64::new(theta, 0.0), &state.rapidities, j)?;
    Ok((factor, state.with_inserted(j, theta)))
}

/// `Z(ϑ)|θ₁…θₙ⟩_in` with deltas resolved discretely: if `ϑ = θ_{j+1}`
/// exactly, the single contact term `S(ϑ−θ₁+iπ)…S(ϑ−θⱼ+iπ)·|…θ̂_{j+1}…⟩`;
/// otherwise zero.
pub fn apply_annihilator(
    s: &ScatteringFunction,
    theta: f64,
    state: &ParticleState,
) -> Result<Vec<StateTerm>> {
    state.require_in()?;
    let Some(k) = state.rapidities.iter().position(|&t| t == theta) else {
        return Ok(vec![]);
    };
    let weight = grazing_factor(s, Complex64::new(theta, 0.0) + I_PI, &state.rapidities, k)?;
    Ok(vec![StateTerm {
        weight,
        state: state.without(k),
    }])
}

/// Symbolic form of `Z(ϑ)|θ₁…θₙ⟩_in`:
/// `Σⱼ δ(ϑ−θ_{j+1}) S(ϑ−θ₁+iπ)…S(ϑ−θⱼ+iπ) |…θ̂_{j+1}…⟩`.
/// Site 0 is `Z(ϑ)`, site `i ≥ 1` is `Z*(θᵢ)`.
pub fn apply_annihilator_symbolic(theta: f64, state: &ParticleState) -> Result<Expression> {
    state.require_in()?;
    let mut generators = vec![Generator::annihilator(theta)];
    generators.extend(state.word());
    let sites = Word::numeric(generators);
    let n = state.len();
    let terms = (0..n)
        .map(|j| {
            let mut c = Coefficient::one().times(Atom::Delta {
                annihilator: 0,
                creator: j + 1,
            });
            for i in 1..=j {
                c = c.times(Atom::S {
                    left: 0,
                    right: i,
                    crossed: true,
                });
            }
            Term {
                coefficient: c,
                word: (1..=n).filter(|&i| i != j + 1).collect(),
            }
        })
        .collect();
    Ok(Expression { sites, terms })
}

/// Creator part of an emulat in one slot: the `(n+1)`-particle in-state with
/// the new rapidity `ϑ ∈ (lower, upper)` inserted at position `slot`, with
/// amplitude `f̂(ϑ)·S(ϑ−θ₁)…S(ϑ−θ_slot)`; `weight` is its integral over ϑ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlotComponent {
    pub slot: usize,
    pub lower: f64,
    pub upper: f64,
    pub weight: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmulatResult {
    pub creator: Vec<SlotComponent>,
    pub annihilator: Vec<StateTerm>,
}

impl EmulatResult {
    pub fn is_zero(&self) -> bool {
        self.creator.iter().all(|c| c.weight.norm() == 0.0)
            && self.annihilator.iter().all(|t| t.weight.norm() == 0.0)
    }
}

fn integrate_slot(f: &dyn Fn(f64) -> Result<Complex64>, lower: f64, upper: f64) -> Result<Complex64> {
    const TOL: f64 = 1e-13;
    let failure = std::cell::RefCell::new(None);
    let guarded = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    // semi-infinite ends mapped to [0, 1) by x = a ± t/(1−t)
    let est = match (lower.is_finite(), upper.is_finite()) {
        (true, true) => integrate(guarded, lower, upper, TOL, TOL),
        (true, false) => integrate(
            |t| guarded(lower + t / (1.0 - t)) / ((1.0 - t) * (1.0 - t)),
            0.0,
            1.0,
            TOL,
            TOL,
        ),
        (false, true) => integrate(
            |t| guarded(upper - t / (1.0 - t)) / ((1.0 - t) * (1.0 - t)),
            0.0,
            1.0,
            TOL,
            TOL,
        ),
        (false, false) => {
            let right = integrate_slot(f, 0.0, f64::INFINITY)?;
            let left = integrate_slot(f, f64::NEG_INFINITY, 0.0)?;
            return Ok(left + right);
        }
    };
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(est?.value)
}

/// Emulat `∫ f̂(θ) Z*(θ) dθ + ∫ f̂(θ+iπ) Z(θ) dθ` (the strip contour
/// integral) applied to an in-state. The creator integral is split at the
/// state's rapidities; the annihilator integral collapses on the deltas.
pub fn apply_emulat(
    s: &ScatteringFunction,
    f: &AnalyticSampler,
    state: &ParticleState,
) -> Result<EmulatResult> {
    state.require_in()?;
    let (lo, hi) = f.strip();
    if lo > 0.0 || hi < std::f64::consts::PI {
        return Err(Error::domain(format!(
            "emulat wave function must be analytic on the strip 0 ≤ Im θ ≤ π, declared [{lo}, {hi}]"
        )));
    }
    let r = &state.rapidities;
    let n = r.len();
    let mut creator = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let upper = if j == 0 { f64::INFINITY } else { r[j - 1] };
        let lower = if j == n { f64::NEG_INFINITY } else { r[j] };
        let density = |x: f64| -> Result<Complex64> {
            let z = Complex64::new(x, 0.0);
            Ok(f.eval(z)? * grazing_factor(s, z, r, j)?)
        };
        creator.push(SlotComponent {
            slot: j,
            lower,
            upper,
            weight: integrate_slot(&density, lower, upper)?,
        });
    }
    let mut annihilator = Vec::with_capacity(n);
    for k in 0..n {
        let z = Complex64::new(r[k], 0.0) + I_PI;
        annihilator.push(StateTerm {
            weight: f.eval(z)? * grazing_factor(s, z, r, k)?,
            state: state.without(k),
        });
    }
    Ok(EmulatResult {
        creator,
        annihilator,
    })
}

/// Coefficient of one delta pairing in a vacuum contraction: out-particle
/// `j` (natural order) is paired with in-particle `sigma[j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pairing {
    pub sigma: Vec<usize>,
    pub weight: Complex64,
}

/// `out⟨χ₁…χₙ|θ₁…θₙ⟩_in = ⟨0|Z(χ₁)…Z(χₙ) Z*(θ₁)…Z*(θₙ)|0⟩`, reduced to a
/// sum over delta pairings. Each weight is evaluated on the support of its
/// deltas. For `σ = id` all contraction lines cross and the weight is the
/// full two-particle product; other pairings collect fewer factors.
pub fn smatrix_element(
    s: &ScatteringFunction,
    out: &ParticleState,
    inc: &ParticleState,
) -> Result<Vec<Pairing>> {
    if out.tag != StateTag::Out || inc.tag != StateTag::In {
        return Err(Error::domain("smatrix_element takes an out-state and an in-state"));
    }
    let n = inc.len();
    if out.len() != n {
        return Err(Error::domain(format!(
            "elastic amplitude needs equal particle numbers, got {} out and {n} in",
            out.len()
        )));
    }
    let mut generators: Vec<Generator> = out.rapidities.iter().map(|&t| Generator::annihilator(t)).collect();
    generators.extend(inc.word());
    let word = Word::numeric(generators);
    let values = normal_order(&word)?
        .vacuum_expectation()
        .evaluate(s, DeltaMode::OnSupport, &[])?;
    let mut pairings: Vec<Pairing> = values
        .into_iter()
        .map(|((deltas, _), weight)| {
            let mut sigma = vec![0; n];
            for (a, c) in deltas {
                debug_assert_eq!(word.generators[a].kind, Kind::Annihilator);
                sigma[a] = c - n;
            }
            Pairing { sigma, weight }
        })
        .collect();
    pairings.sort_by(|a, b| a.sigma.cmp(&b.sigma));
    Ok(pairings)
}

//! Zamolodchikov-Faddeev algebra for a single species with diagonal
//! scattering function `S`:
//!
//! ```text
//! Z(θ) Z*(θ′)  = δ(θ − θ′) + S(θ − θ′ + iπ) Z*(θ′) Z(θ)
//! Z*(θ) Z*(θ′) = S(θ − θ′) Z*(θ′) Z*(θ)
//! Z(θ) Z(θ′)   = S(θ − θ′) Z(θ′) Z(θ)
//! ```
//!
//! Words are rewritten symbolically; `S`-factors and deltas stay atoms that
//! refer to generator sites of the original word, and are only turned into
//! numbers by [`Expression::evaluate`].

mod parse;
mod rewrite;
mod state;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scatfunc::ScatteringFunction;

pub use parse::{parse_word, print_word};
pub use rewrite::{
    confluence_defect, normal_order, normal_order_with, redexes, rewrite_at, RewriteStrategy,
};
pub use state::{
    apply_annihilator, apply_annihilator_symbolic, apply_creator, apply_emulat, build_state,
    smatrix_element, EmulatResult, Pairing, ParticleState, SlotComponent, StateTag, StateTerm,
};

const I_PI: Complex64 = Complex64::new(0.0, std::f64::consts::PI);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Rapidity {
    Numeric(f64),
    /// Index into the declared alphabet of the expression.
    Symbol(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// `Z*(θ)`
    Creator,
    /// `Z(θ)`
    Annihilator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub kind: Kind,
    pub rapidity: Rapidity,
}

impl Generator {
    pub fn creator(theta: f64) -> Self {
        Self {
            kind: Kind::Creator,
            rapidity: Rapidity::Numeric(theta),
        }
    }

    pub fn annihilator(theta: f64) -> Self {
        Self {
            kind: Kind::Annihilator,
            rapidity: Rapidity::Numeric(theta),
        }
    }

    pub fn symbolic(kind: Kind, symbol: usize) -> Self {
        Self {
            kind,
            rapidity: Rapidity::Symbol(symbol),
        }
    }
}

/// A word together with the alphabet its symbolic rapidities refer to.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Word {
    pub generators: Vec<Generator>,
    pub alphabet: Vec<String>,
}

impl Word {
    pub fn numeric(generators: Vec<Generator>) -> Self {
        Self {
            generators,
            alphabet: vec![],
        }
    }

    pub fn new(generators: Vec<Generator>, alphabet: Vec<String>) -> Result<Self> {
        for g in &generators {
            match g.rapidity {
                Rapidity::Numeric(x) if !x.is_finite() => {
                    return Err(Error::domain(format!("non-finite rapidity {x}")))
                }
                Rapidity::Symbol(k) if k >= alphabet.len() => {
                    return Err(Error::domain(format!(
                        "symbol index {k} outside an alphabet of {}",
                        alphabet.len()
                    )))
                }
                _ => {}
            }
        }
        Ok(Self {
            generators,
            alphabet,
        })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Canonical order of rapidities inside a normal-ordered block: numeric
/// rapidities first, larger values first; then symbols in alphabet order.
/// Creators are arranged in increasing key order (θ descending, the natural
/// in-state order), annihilators in decreasing key order.
pub(crate) fn rapidity_key_cmp(a: &Rapidity, b: &Rapidity) -> Ordering {
    match (a, b) {
        (Rapidity::Numeric(x), Rapidity::Numeric(y)) => y.total_cmp(x),
        (Rapidity::Numeric(_), Rapidity::Symbol(_)) => Ordering::Less,
        (Rapidity::Symbol(_), Rapidity::Numeric(_)) => Ordering::Greater,
        (Rapidity::Symbol(i), Rapidity::Symbol(j)) => i.cmp(j),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Atom {
    /// `S(θ_left − θ_right [+ iπ])`, sites of the original word.
    S {
        left: usize,
        right: usize,
        crossed: bool,
    },
    /// `δ(θ_annihilator − θ_creator)`.
    Delta { annihilator: usize, creator: usize },
}

/// Scalar times a commuting product of atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub scalar: Complex64,
    pub atoms: Vec<Atom>,
}

impl Coefficient {
    pub fn one() -> Self {
        Self {
            scalar: Complex64::new(1.0, 0.0),
            atoms: vec![],
        }
    }

    pub fn times(&self, atom: Atom) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.push(atom);
        atoms.sort();
        Self {
            scalar: self.scalar,
            atoms,
        }
    }

    pub fn mul(&self, other: &Coefficient) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&other.atoms);
        atoms.sort();
        Self {
            scalar: self.scalar * other.scalar,
            atoms,
        }
    }

    /// Delta atoms as `(annihilator, creator)` pairs, sorted.
    pub fn deltas(&self) -> Vec<(usize, usize)> {
        self.atoms
            .iter()
            .filter_map(|a| match *a {
                Atom::Delta {
                    annihilator,
                    creator,
                } => Some((annihilator, creator)),
                _ => None,
            })
            .collect()
    }
}

/// One summand: coefficient times a normal-ordered word of sites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: Coefficient,
    pub word: Vec<usize>,
}

/// Formal sum of normal-ordered words over the sites of a source word.
#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    pub sites: Word,
    pub terms: Vec<Term>,
}

/// How delta atoms are turned into numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    /// Deltas are kept as the key of the term; every other atom is evaluated
    /// on the support of the deltas (annihilator rapidity replaced by its
    /// creator partner's).
    OnSupport,
    /// A delta counts as 1 when the two numeric rapidities are identical and
    /// as 0 otherwise; keys carry no deltas.
    Discrete,
}

/// Numeric value of an expression, keyed by (delta pairs, remaining word).
pub type NumericExpression = BTreeMap<(Vec<(usize, usize)>, Vec<usize>), Complex64>;

impl Expression {
    pub fn zero(sites: Word) -> Self {
        Self {
            sites,
            terms: vec![],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms that survive acting on the vacuum `|0⟩` (no annihilator left).
    pub fn on_vacuum(&self) -> Self {
        Self {
            sites: self.sites.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| {
                    t.word
                        .iter()
                        .all(|&s| self.sites.generators[s].kind == Kind::Creator)
                })
                .cloned()
                .collect(),
        }
    }

    /// Vacuum expectation value: terms with an empty word.
    pub fn vacuum_expectation(&self) -> Self {
        Self {
            sites: self.sites.clone(),
            terms: self.terms.iter().filter(|t| t.word.is_empty()).cloned().collect(),
        }
    }

    fn numeric_rapidity(&self, site: usize, bindings: &[f64]) -> Result<f64> {
        match self.sites.generators[site].rapidity {
            Rapidity::Numeric(x) => Ok(x),
            Rapidity::Symbol(k) => bindings.get(k).copied().ok_or_else(|| {
                Error::domain(format!(
                    "no value bound for symbol '{}'",
                    self.sites.alphabet[k]
                ))
            }),
        }
    }

    /// Numeric value of every term. `bindings[k]` is the value of alphabet
    /// symbol `k`; terms with identical keys are summed.
    pub fn evaluate(
        &self,
        s: &ScatteringFunction,
        mode: DeltaMode,
        bindings: &[f64],
    ) -> Result<NumericExpression> {
        let mut out = NumericExpression::new();
        for term in &self.terms {
            let deltas = term.coefficient.deltas();
            let mut theta: Vec<f64> = (0..self.sites.len())
                .map(|i| self.numeric_rapidity(i, bindings))
                .collect::<Result<_>>()?;
            let mut value = term.coefficient.scalar;
            match mode {
                DeltaMode::OnSupport => {
                    for &(a, c) in &deltas {
                        theta[a] = theta[c];
                    }
                }
                DeltaMode::Discrete => {
                    if deltas.iter().any(|&(a, c)| theta[a] != theta[c]) {
                        continue;
                    }
                }
            }
            for atom in &term.coefficient.atoms {
                if let Atom::S {
                    left,
                    right,
                    crossed,
                } = *atom
                {
                    let mut arg = Complex64::new(theta[left] - theta[right], 0.0);
                    if crossed {
                        arg += I_PI;
                    }
                    value *= s.eval(arg)?;
                }
            }
            let key = match mode {
                DeltaMode::OnSupport => (deltas, term.word.clone()),
                DeltaMode::Discrete => (vec![], term.word.clone()),
            };
            *out.entry(key).or_insert(Complex64::new(0.0, 0.0)) += value;
        }
        Ok(out)
    }
}

/// Largest absolute difference between two numeric expressions over the
/// union of their keys.
pub fn max_difference(a: &NumericExpression, b: &NumericExpression) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).norm())
        .fold(0.0, f64::max)
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::print_expression(self))
    }
}

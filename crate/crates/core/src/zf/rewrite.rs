use std::cmp::Ordering;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{max_difference, rapidity_key_cmp, Atom, Coefficient, DeltaMode, Expression, Kind, Term, Word};
use crate::error::{Error, Result};
use crate::scatfunc::ScatteringFunction;

/// Positions `p` where the adjacent pair `(p, p+1)` is not in normal order.
pub fn redexes(sites: &Word, word: &[usize]) -> Vec<usize> {
    (0..word.len().saturating_sub(1))
        .filter(|&p| needs_rewrite(sites, word[p], word[p + 1]))
        .collect()
}

fn needs_rewrite(sites: &Word, x: usize, y: usize) -> bool {
    let (gx, gy) = (&sites.generators[x], &sites.generators[y]);
    match (gx.kind, gy.kind) {
        (Kind::Annihilator, Kind::Creator) => true,
        (Kind::Creator, Kind::Annihilator) => false,
        (Kind::Creator, Kind::Creator) => {
            rapidity_key_cmp(&gx.rapidity, &gy.rapidity) == Ordering::Greater
        }
        (Kind::Annihilator, Kind::Annihilator) => {
            rapidity_key_cmp(&gx.rapidity, &gy.rapidity) == Ordering::Less
        }
    }
}

/// Apply the exchange relation to the pair at position `p` of `term`.
pub fn rewrite_at(sites: &Word, term: &Term, p: usize) -> Vec<Term> {
    let (x, y) = (term.word[p], term.word[p + 1]);
    let mut swapped = term.word.clone();
    swapped.swap(p, p + 1);
    match (sites.generators[x].kind, sites.generators[y].kind) {
        (Kind::Annihilator, Kind::Creator) => {
            let mut contracted = term.word.clone();
            contracted.drain(p..p + 2);
            vec![
                Term {
                    coefficient: term.coefficient.times(Atom::Delta {
                        annihilator: x,
                        creator: y,
                    }),
                    word: contracted,
                },
                Term {
                    coefficient: term.coefficient.times(Atom::S {
                        left: x,
                        right: y,
                        crossed: true,
                    }),
                    word: swapped,
                },
            ]
        }
        _ => vec![Term {
            coefficient: term.coefficient.times(Atom::S {
                left: x,
                right: y,
                crossed: false,
            }),
            word: swapped,
        }],
    }
}

fn check_coincidences(word: &Word) -> Result<()> {
    let g = &word.generators;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if g[i].kind == g[j].kind && g[i].rapidity == g[j].rapidity {
                let kind = match g[i].kind {
                    Kind::Creator => "creators",
                    Kind::Annihilator => "annihilators",
                };
                return Err(Error::Coincidence(format!(
                    "{kind} at positions {i} and {j} share a rapidity; their exchange weight is ill-defined"
                )));
            }
        }
    }
    Ok(())
}

/// Which out-of-order pair is rewritten at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
    /// Uniformly random redex, seeded.
    Random(u64),
}

/// Rewrite a word into normal order (all creators left of all annihilators,
/// each block in canonical order) by exhaustive application of the exchange
/// relations, always at the leftmost out-of-order pair. Identical
/// (coefficient atoms, word) terms are merged.
pub fn normal_order(word: &Word) -> Result<Expression> {
    normal_order_with(word, RewriteStrategy::Leftmost)
}

/// [`normal_order`] with an explicit redex choice.
pub fn normal_order_with(word: &Word, strategy: RewriteStrategy) -> Result<Expression> {
    check_coincidences(word)?;
    let mut rng = match strategy {
        RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let start = Term {
        coefficient: Coefficient::one(),
        word: (0..word.len()).collect(),
    };
    let mut pending = vec![start];
    let mut done: Vec<Term> = Vec::new();
    while let Some(term) = pending.pop() {
        let choices = redexes(word, &term.word);
        if choices.is_empty() {
            done.push(term);
            continue;
        }
        let p = match (&mut rng, strategy) {
            (Some(rng), _) => choices[rng.random_range(0..choices.len())],
            (None, RewriteStrategy::Rightmost) => choices[choices.len() - 1],
            (None, _) => choices[0],
        };
        pending.extend(rewrite_at(word, &term, p));
    }
    Ok(Expression {
        sites: word.clone(),
        terms: merge(done),
    })
}

/// Largest on-support disagreement between the leftmost normal form and
/// the rightmost and `random_paths` seeded random rewrite orders.
pub fn confluence_defect(
    word: &Word,
    s: &ScatteringFunction,
    random_paths: usize,
    seed: u64,
) -> Result<f64> {
    let reference = normal_order(word)?.evaluate(s, DeltaMode::OnSupport, &[])?;
    let strategies = std::iter::once(RewriteStrategy::Rightmost)
        .chain((0..random_paths as u64).map(|i| RewriteStrategy::Random(seed.wrapping_add(i))));
    let mut worst = 0.0f64;
    for strategy in strategies {
        let v = normal_order_with(word, strategy)?.evaluate(s, DeltaMode::OnSupport, &[])?;
        worst = worst.max(max_difference(&reference, &v));
    }
    Ok(worst)
}

pub(crate) fn merge(mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_by(|a, b| {
        (&a.word, &a.coefficient.atoms).cmp(&(&b.word, &b.coefficient.atoms))
    });
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last)
                if last.word == t.word && last.coefficient.atoms == t.coefficient.atoms =>
            {
                last.coefficient.scalar += t.coefficient.scalar;
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coefficient.scalar != Complex64::new(0.0, 0.0));
    out
}

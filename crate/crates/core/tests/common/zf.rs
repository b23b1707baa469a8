//! Brute-force oracles for the ZF rewriting: every admissible rewrite order,
//! and explicit two-particle product formulas.

use std::collections::HashMap;

use num_complex::Complex64;
use wedgebench::scatfunc::ScatteringFunction;
use wedgebench::zf::*;

/// Explore every rewrite order of `word`. At each reachable word, every
/// redex choice is reduced (recursively, memoised) and the resulting sums are
/// compared after on-support evaluation. Returns the normal form reached via
/// the first choice and the largest disagreement seen anywhere.
pub fn exhaustive_normal_form(word: &Word, s: &ScatteringFunction) -> (Expression, f64) {
    let mut memo: HashMap<Vec<usize>, Vec<Term>> = HashMap::new();
    let mut worst = 0.0f64;
    let start: Vec<usize> = (0..word.len()).collect();
    let terms = reduce(word, &start, s, &mut memo, &mut worst);
    (
        Expression {
            sites: word.clone(),
            terms,
        },
        worst,
    )
}

fn reduce(
    word: &Word,
    w: &[usize],
    s: &ScatteringFunction,
    memo: &mut HashMap<Vec<usize>, Vec<Term>>,
    worst: &mut f64,
) -> Vec<Term> {
    if let Some(t) = memo.get(w) {
        return t.clone();
    }
    let choices = redexes(word, w);
    let result = if choices.is_empty() {
        vec![Term {
            coefficient: Coefficient::one(),
            word: w.to_vec(),
        }]
    } else {
        let mut first: Option<(Vec<Term>, NumericExpression)> = None;
        for p in choices {
            let seed = Term {
                coefficient: Coefficient::one(),
                word: w.to_vec(),
            };
            let mut sum = Vec::new();
            for t in rewrite_at(word, &seed, p) {
                for u in reduce(word, &t.word, s, memo, worst) {
                    sum.push(Term {
                        coefficient: t.coefficient.mul(&u.coefficient),
                        word: u.word,
                    });
                }
            }
            let value = Expression {
                sites: word.clone(),
                terms: sum.clone(),
            }
            .evaluate(s, DeltaMode::OnSupport, &[])
            .expect("evaluation off poles");
            match &first {
                None => first = Some((sum, value)),
                Some((_, v0)) => *worst = worst.max(max_difference(v0, &value)),
            }
        }
        first.unwrap().0
    };
    memo.insert(w.to_vec(), result.clone());
    result
}

/// Explicit factorized weight of pairing `sigma` (out j ↔ in sigma[j]) for
/// in-rapidities `theta` (descending): one factor S(θ_j − θ_k), j < k, for
/// every pair of contraction lines that cross.
pub fn pairing_product(s: &ScatteringFunction, theta: &[f64], sigma: &[usize]) -> Complex64 {
    let n = theta.len();
    let mut pos = vec![0; n]; // bra position of in-particle k
    for (j, &k) in sigma.iter().enumerate() {
        pos[k] = j;
    }
    let mut w = Complex64::new(1.0, 0.0);
    for j in 0..n {
        for k in j + 1..n {
            if pos[j] < pos[k] {
                w *= s.eval_real(theta[j] - theta[k]).unwrap();
            }
        }
    }
    w
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

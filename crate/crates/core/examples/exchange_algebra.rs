//! Normal-order words in the exchange algebra, act on particle states and
//! read off the factorized S-matrix pairings.

use wedgebench::scatfunc::ScatteringFunction;
use wedgebench::zf::*;

fn main() -> wedgebench::Result<()> {
    let s = ScatteringFunction::sinh_gordon(0.4)?;
    for text in ["Z(2.0) Z*(1.0)", "Z*(0.5) Z*(1.5)", "Z(0.3) Z(1.0) Z*(1.0) Z*(0.3)"] {
        let word = Word::numeric(parse_word(text)?);
        println!("{text}  =  {}", normal_order(&word)?);
        println!("  rewrite-order defect {:.1e}", confluence_defect(&word, &s, 4, 1)?);
    }

    let state = build_state(&[2.0, 1.0], StateTag::In)?;
    let (weight, next) = apply_creator(&s, 1.5, &state)?;
    println!("Z*(1.5)|2, 1⟩ = {weight:.6} |{:?}⟩", next.rapidities());
    for t in apply_annihilator(&s, 1.0, &state)? {
        println!("Z(1.0)|2, 1⟩ ∋ {:.6} |{:?}⟩", t.weight, t.state.rapidities());
    }

    let theta = [1.7, 0.2, -0.9];
    let pairings = smatrix_element(&s, &build_state(&theta, StateTag::Out)?, &build_state(&theta, StateTag::In)?)?;
    for p in pairings {
        println!("pairing {:?}: {:.6}", p.sigma, p.weight);
    }
    Ok(())
}

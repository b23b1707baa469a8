//! Acceptance gate: every criterion prints one PASS/FAIL line with the
//! measured figures; the process fails if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::dpi::separable_oracle;
use common::localization::position_oracle;
use common::modular::shifted_gaussian_overlap;
use common::unitarization::cluster_oracle;
use common::zf::{exhaustive_normal_form, pairing_product, permutations};
use common::{causal_lorentzian, causal_lorentzian_re};
use wedgebench::cli::{run_suite, RunConfig, THREADS_ENV};
use wedgebench::crossing::*;
use wedgebench::dispersion::*;
use wedgebench::dpi::*;
use wedgebench::localization::*;
use wedgebench::numerics::GridFunction;
use wedgebench::scatfunc::{bootstrap_residuals, linspace, ScatteringFunction};
use wedgebench::unitarization::*;
use wedgebench::zf::*;
use wedgebench::Error;

type Outcome = wedgebench::Result<Gate>;
type Criterion = (&'static str, fn() -> Outcome);

/// Named measurements of one criterion, each against its bound.
#[derive(Default)]
struct Gate {
    items: Vec<(String, bool)>,
}

impl Gate {
    fn below(&mut self, name: &str, value: f64, bound: f64) -> &mut Self {
        self.items.push((format!("{name}={value:.3e}<{bound:e}"), value < bound));
        self
    }

    fn above(&mut self, name: &str, value: f64, bound: f64) -> &mut Self {
        self.items.push((format!("{name}={value:.3e}>{bound:e}"), value > bound));
        self
    }

    fn holds(&mut self, name: &str, ok: bool) -> &mut Self {
        self.items.push((name.to_string(), ok));
        self
    }

    fn take(&mut self) -> Gate {
        std::mem::take(self)
    }

    fn passed(&self) -> bool {
        self.items.iter().all(|(_, ok)| *ok)
    }

    fn summary(&self) -> String {
        self.items
            .iter()
            .map(|(s, ok)| if *ok { s.clone() } else { format!("!{s}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn distinct(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    while out.len() < n {
        let x = rng.random_range(-3.0..3.0);
        if out.iter().all(|&y| (x - y).abs() > 1e-3) {
            out.push(x);
        }
    }
    out
}

fn kramers_kronig() -> Outcome {
    let start = Instant::now();
    let a = GridFunction::from_fn(-50.0, 50.0, 4096, causal_lorentzian)?;
    let t = kk_real_from_imag(&a.imag_part())?;
    let err = t
        .real_part
        .points()
        .map(|(w, v)| (v.re - causal_lorentzian_re(w)).abs())
        .fold(0.0, f64::max);
    let causal = causality_residual(&a, DEFAULT_CAUSALITY_THRESHOLD)?;
    let anti = causality_residual(&a.map(|_, v| v.conj()), DEFAULT_CAUSALITY_THRESHOLD)?;
    let elapsed = start.elapsed().as_secs_f64();
    let factor = anti.negative_fraction / causal.negative_fraction;
    Ok(Gate::default()
        .below("interior_err", err, 1e-3)
        .above("discrimination", factor, 1e3)
        .below("seconds", elapsed, 2.0)
        .take())
}

fn subtraction_invariance() -> Outcome {
    let a = GridFunction::from_fn(-50.0, 50.0, 4096, causal_lorentzian)?;
    let once = Subtraction::Once { omega0: 0.5 };
    let base = dispersion_residual(&a, once)?;
    let mut worst = 0.0f64;
    for shift in [1.0, -3.7, 250.0] {
        let shifted = dispersion_residual(&a.map(|_, v| v + shift), once)?;
        worst = worst.max((shifted - base).abs());
    }
    Ok(Gate::default().below("change", worst, 1e-10).take())
}

fn bootstrap() -> Outcome {
    let samples = linspace(-5.0, 5.0, 100);
    let mut gate = Gate::default();
    let mut worst = 0.0f64;
    for b in [0.2, 0.4, 0.9] {
        let s = ScatteringFunction::sinh_gordon(b)?;
        worst = worst.max(bootstrap_residuals(&s, &samples)?.max());
        // closed form, written out here
        let k = (PI * b / 2.0).sin();
        for &t in &samples {
            let oracle = c(t.sinh(), -k) / c(t.sinh(), k);
            gate.holds("", (s.eval_real(t)? - oracle).norm() < 1e-14);
        }
    }
    for s in [ScatteringFunction::free(), ScatteringFunction::ising()] {
        worst = worst.max(bootstrap_residuals(&s, &samples)?.max());
    }
    let closed_forms = gate.passed();
    let control = bootstrap_residuals(&ScatteringFunction::sinh_gordon(0.4)?.tilted(0.01), &samples)?.max();
    Ok(Gate::default()
        .below("axioms", worst, 1e-12)
        .holds("sinh-gordon_closed_form", closed_forms)
        .above("tilted_control", control, 1e-3)
        .take())
}

/// Vacuum components of a normal-ordered word, keyed by the rapidities of
/// the surviving creators.
fn components(e: &Expression, s: &ScatteringFunction) -> Vec<(Vec<f64>, Complex64)> {
    e.on_vacuum()
        .evaluate(s, DeltaMode::Discrete, &[])
        .unwrap()
        .into_iter()
        .map(|((_, w), v)| {
            let r = w
                .iter()
                .map(|&k| match e.sites.generators[k].rapidity {
                    Rapidity::Numeric(x) => x,
                    Rapidity::Symbol(_) => unreachable!(),
                })
                .collect();
            (r, v)
        })
        .collect()
}

fn component_distance(a: &[(Vec<f64>, Complex64)], b: &[(Vec<f64>, Complex64)]) -> f64 {
    let get = |set: &[(Vec<f64>, Complex64)], key: &Vec<f64>| -> Complex64 {
        set.iter().filter(|(k, _)| k == key).map(|(_, v)| *v).sum()
    };
    a.iter().chain(b).map(|(k, _)| (get(a, k) - get(b, k)).norm()).fold(0.0, f64::max)
}

fn zf_confluence() -> Outcome {
    let s = ScatteringFunction::sinh_gordon(0.4)?;
    let (mut orders, mut library, mut words) = (0.0f64, 0.0f64, 0usize);
    for seed in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for len in 1..=6 {
            for pattern in 0..1u32 << len {
                let gens = distinct(&mut rng, len)
                    .into_iter()
                    .enumerate()
                    .map(|(i, x)| {
                        if pattern >> i & 1 == 1 {
                            Generator::creator(x)
                        } else {
                            Generator::annihilator(x)
                        }
                    })
                    .collect();
                let w = Word::numeric(gens);
                let (oracle, worst) = exhaustive_normal_form(&w, &s);
                orders = orders.max(worst);
                library = library.max(max_difference(
                    &normal_order(&w)?.evaluate(&s, DeltaMode::OnSupport, &[])?,
                    &oracle.evaluate(&s, DeltaMode::OnSupport, &[])?,
                ));
                words += 1;
            }
        }
    }

    // a non-unitary S makes the result depend on the rewrite order
    let broken = s.tilted(0.05);
    let mut control = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for pattern in 0..1u32 << 4 {
        let gens = distinct(&mut rng, 4)
            .into_iter()
            .enumerate()
            .map(|(i, x)| if pattern >> i & 1 == 1 { Generator::creator(x) } else { Generator::annihilator(x) })
            .collect();
        control = control.max(exhaustive_normal_form(&Word::numeric(gens), &broken).1);
    }

    let mut actions = 0.0f64;
    for s in [ScatteringFunction::ising(), ScatteringFunction::sinh_gordon(0.4)?] {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=4 {
            for _ in 0..10 {
                let r = distinct(&mut rng, n + 1);
                if n < 4 {
                    let state = build_state(&r[..n], StateTag::In)?;
                    let (weight, next) = apply_creator(&s, r[n], &state)?;
                    let mut gens = vec![Generator::creator(r[n])];
                    gens.extend(state.word());
                    let (brute, _) = exhaustive_normal_form(&Word::numeric(gens), &s);
                    actions = actions.max(component_distance(
                        &[(next.rapidities().to_vec(), weight)],
                        &components(&brute, &s),
                    ));
                }
                if n >= 1 {
                    let state = build_state(&r[..n], StateTag::In)?;
                    let hit = state.rapidities()[rng.random_range(0..n)];
                    for theta in [hit, r[n]] {
                        let direct: Vec<_> = apply_annihilator(&s, theta, &state)?
                            .into_iter()
                            .map(|t| (t.state.rapidities().to_vec(), t.weight))
                            .collect();
                        let mut gens = vec![Generator::annihilator(theta)];
                        gens.extend(state.word());
                        let (brute, _) = exhaustive_normal_form(&Word::numeric(gens), &s);
                        actions = actions.max(component_distance(&direct, &components(&brute, &s)));
                    }
                }
            }
        }
    }
    Ok(Gate::default()
        .holds(&format!("words={words}"), words == 10 * 126)
        .below("across_orders", orders, 1e-12)
        .below("normal_order", library, 1e-12)
        .above("broken_s_control", control, 1e-3)
        .below("state_actions", actions, 1e-12)
        .take())
}

fn factorization() -> Outcome {
    let mut worst = 0.0f64;
    let mut complete = true;
    for s in [ScatteringFunction::ising(), ScatteringFunction::sinh_gordon(0.4)?] {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=3 {
            for _ in 0..10 {
                let mut theta = distinct(&mut rng, n);
                theta.sort_by(|a, b| b.total_cmp(a));
                let p = smatrix_element(
                    &s,
                    &build_state(&theta, StateTag::Out)?,
                    &build_state(&theta, StateTag::In)?,
                )?;
                for sigma in permutations(n) {
                    match p.iter().find(|x| x.sigma == sigma) {
                        Some(x) => worst = worst.max((x.weight - pairing_product(&s, &theta, &sigma)).norm()),
                        None => complete = false,
                    }
                }
                complete &= p.len() == permutations(n).len();
            }
        }
    }
    Ok(Gate::default()
        .holds("all_pairings", complete)
        .below("product", worst, 1e-12)
        .take())
}

fn watson_crossing() -> Outcome {
    let f = FormFactor::ising_energy();
    let ising = ScatteringFunction::ising();
    let samples = linspace(-3.0, 3.0, 50);
    let w = watson_check(&f, &ising, &samples)?;

    // F(θ) = −i sinh(θ/2); exchange F(θ) = S(θ)F(−θ), S = −1; F(θ + 2πi) = F(−θ)
    let oracle = |z: Complex64| c(0.0, -1.0) * (z / 2.0).sinh();
    let (mut closed, mut exchange, mut period) = (0.0f64, 0.0f64, 0.0f64);
    for &t in &samples {
        for im in [0.0, 0.7, PI] {
            let z = c(t, im);
            closed = closed.max((f.eval_difference(z)? - oracle(z)).norm());
        }
        let v = f.eval_difference(c(t, 0.0))?;
        exchange = exchange.max((v + f.eval_difference(c(-t, 0.0))?).norm());
        period = period.max((f.eval_difference(c(t, 2.0 * PI))? - f.eval_difference(c(-t, 0.0))?).norm());
    }

    let tuples: Vec<Vec<f64>> = samples.iter().map(|&t| vec![t + 0.05 + 0.3 * t.abs(), t - 0.7]).collect();
    let cross = crossing_check(&f, 1, &tuples)?;
    // ⟨θ′|ε|θ⟩ = cosh((θ − θ′)/2) against the continued form factor
    let mut continued = 0.0f64;
    for t in &tuples {
        let v = f.eval(&[c(t[1], PI), c(t[0], 0.0)])?;
        continued = continued.max((v - ((t[0] - t[1]) / 2.0).cosh()).norm());
    }
    let ascending = matches!(crossing_check(&f, 1, &[vec![0.2, 0.9]]), Err(Error::Ordering(_)));
    let equal = matches!(crossing_check(&f, 1, &[vec![0.5, 0.5]]), Err(Error::Ordering(_)));
    Ok(Gate::default()
        .below("closed_form", closed, 1e-14)
        .below("exchange", w.exchange.max(exchange), 1e-12)
        .below("periodicity", w.periodicity.max(period), 1e-12)
        .below("crossing", cross.max(continued), 1e-12)
        .holds("ordering_enforced", ascending && equal)
        .take())
}

const PAIRS: [(f64, f64, f64); 3] = [(0.0, 0.0, 1.0), (0.4, -0.3, 0.8), (-1.0, 0.5, 1.2)];

fn modular_kms() -> Outcome {
    let m = ModularData::default();
    let (mut kms, mut oracle, mut half, mut boost) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    for (c1, c2, w) in PAIRS {
        let (f, g) = (gaussian_wave(c1, w), gaussian_wave(c2, w));
        let r = kms_check_free(&m, &f, &g)?;
        kms = kms.max(r.residual);
        let exact = shifted_gaussian_overlap(c1, c2, w, PI);
        oracle = oracle.max((r.lhs - exact).norm().max((r.rhs - exact).norm()) / exact.norm());
        half = half.min(kms_check_with_power(&m, &f, &g, 0.5)?.residual);
        let b = kms_check_free(&m, &m.boost(&f, 0.3), &m.boost(&g, 0.3))?;
        boost = boost.max((b.residual - r.residual).abs());
    }
    Ok(Gate::default()
        .holds(&format!("points={}", m.quadrature.points), m.quadrature.points == 2048)
        .below("residual", kms, 1e-6)
        .below("closed_form", oracle, 1e-9)
        .above("half_power_control", half, 1e-2)
        .below("boost_change", boost, 1e-8)
        .take())
}

fn unruh() -> Outcome {
    let taus = linspace(0.1, 3.0, 20);
    let mut gate = Gate::default();
    for a in [0.7, 1.0, 2.5] {
        let beta = 2.0 * PI / a;
        let r = unruh_kms_check(a, beta, &taus)?;
        let detuned = unruh_kms_check(a, 0.9 * beta, &taus)?;
        let oracle = r
            .samples
            .iter()
            .map(|x| {
                let exact = 1.0 / (4.0 * (a * x.tau / 2.0).sinh().powi(2));
                (x.lhs - exact).norm() / exact
            })
            .fold(0.0, f64::max);
        gate.holds(&format!("a={a}:samples={}", r.samples.len()), r.samples.len() == 20)
            .below("residual", r.residual, 1e-12)
            .below("closed_form", oracle, 1e-6)
            .above("detuned_control", detuned.residual, 1e-2);
    }
    Ok(gate)
}

fn wedge_duality() -> Outcome {
    let m = ModularData::default();
    let mut worst = 0.0f64;
    let mut oracle = 0.0f64;
    for (c1, c2, w) in PAIRS {
        let r = wedge_duality_vacuum_check(&m, &gaussian_wave(c1, w), &gaussian_wave(c2, w))?;
        worst = worst.max(r.residual);
        // ∫ f̂(θ + iπ) conj ĝ(θ) dθ, real Gaussians
        let exact = shifted_gaussian_overlap(c1, c2, w, PI);
        oracle = oracle.max((r.forward - exact).norm() / exact.norm());
    }
    let mut cutoff = f64::INFINITY;
    for (cf, wf, cg, wg) in [(0.2, 1.0, -0.4, 0.9), (-0.5, 0.8, 0.6, 1.1)] {
        let r = wedge_duality_vacuum_check(&m, &gaussian_wave(cf, wf), &hard_cutoff_wave(cg, wg, 0.5))?;
        cutoff = cutoff.min(r.residual);
    }
    Ok(Gate::default()
        .below("commutator", worst, 1e-6)
        .below("closed_form", oracle, 1e-9)
        .above("hard_cutoff_control", cutoff, 1e-3)
        .take())
}

fn localization_entropy() -> Outcome {
    let widths = geometric_sequence(1e-2, 1e-4, 9)?;
    let chiral = entropy_scaling_fit(1.0, &widths, &CurrentModel::chiral(), 128)?;
    let quartic = entropy_scaling_fit(1.0, &widths, &CurrentModel::with_kernel_power(4), 128)?;
    let mut agreement = 0.0f64;
    for dr in [1e-2, 1e-4] {
        let p = SmearingProfile::new(1.0, dr)?;
        let momentum = charge_fluctuation(&p, &CurrentModel::chiral())?;
        let position = charge_fluctuation_position(&p, &CurrentModel::chiral())?;
        let oracle = position_oracle(1.0 / dr);
        for v in [momentum, position] {
            agreement = agreement.max(((v - oracle) / oracle).abs());
        }
    }
    Ok(Gate::default()
        .above("r2", chiral.fit.log.r2, 0.999)
        .below("slope_minus_2", (chiral.fit.log.slope - 2.0).abs(), 2e-2)
        .below("position_vs_momentum", agreement, 1e-2)
        .holds(
            &format!("quartic_r2={:.4}_rejected", quartic.fit.log.r2),
            quartic.fit.log.r2 <= 0.999 && quartic.fit.verdict != ScalingVerdict::LogLaw,
        )
        .take())
}

fn dpi() -> Outcome {
    let sys = TwoParticleSystem::with_coupling(0.5);
    let momenta = linspace(0.2, 2.0, 10);
    let free = TwoParticleSystem { lambda: 0.0, ..sys };
    let zero = momenta
        .iter()
        .map(|&p| phase_shift(&free, 0, p).map(|d| d.delta))
        .collect::<wedgebench::Result<Vec<_>>>()?
        .iter()
        .all(|&d| d == 0.0);

    let weak = TwoParticleSystem { lambda: 0.01, ..sys };
    let born = ((phase_shift(&weak, 0, 0.5)?.delta - weak.born_phase(0.5)) / weak.born_phase(0.5)).abs();

    let sweep = phase_shift_sweep(&sys, &momenta)?;
    let (mut equivalence, mut oracle) = (0.0f64, 0.0f64);
    for (k, &p) in sweep.iter().zip(&momenta) {
        let e = function_of_m_equivalence(&sys, &WavepacketConfig::default(), p)?;
        equivalence = equivalence.max(e.discrepancy);
        oracle = oracle.max((k.delta - separable_oracle(&sys, p)).abs());
    }

    let residuals = |grid: BtGrid| -> wedgebench::Result<BtResiduals> {
        let gen = BtGenerators::assemble(&sys, grid)?;
        bt_commutator_residual(&gen, &gen.gaussian_state(1.5, 0.3, 0.8))
    };
    let fine = residuals(BtGrid::default())?;
    let coarse_grid = BtGrid {
        n_total: 16,
        n_relative: 16,
        ..BtGrid::default()
    };
    let coarse = residuals(coarse_grid)?;
    let doubled = residuals(coarse_grid.doubled())?;
    let improvement = (coarse.r1 / doubled.r1).min(coarse.r2 / doubled.r2);
    Ok(Gate::default()
        .holds("free_exactly_zero", zero)
        .below("born_relative", born, 1e-2)
        .below("m_vs_m2_rad", equivalence, 1e-3)
        .below("k_matrix_vs_closed_form", oracle, 1e-6)
        .below("bt_residual", fine.r1.max(fine.r2), 1e-6)
        .above("bt_improvement", improvement, 4.0)
        .take())
}

fn fro(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn stueckelberg() -> Outcome {
    let (mut unitarity, mut reproduction) = (0.0f64, 0.0f64);
    for dim in [2, 3, 8] {
        for seed in 0..5u64 {
            let h = random_hermitian(dim, seed)?;
            let s = PerturbativeS::with_default_free_parts(&(&h * c(0.0, 1.0)), 4)?;
            unitarity = unitarity.max(unitarity_residual(&s)[..4].iter().copied().fold(0.0, f64::max));

            // [exp(iλH)]_k = U diag((i e)^k / k!) U†
            let exp = PerturbativeS::from_free_parts(dim, &exponential_free_parts(&h, 4))?;
            let eig = h.clone().symmetric_eigen();
            let u = &eig.eigenvectors;
            let mut factorial = 1.0;
            for k in 1..=4 {
                factorial *= k as f64;
                let d = Matrix::from_diagonal(&eig.eigenvalues.map(|e| c(0.0, e).powi(k as i32) / factorial));
                reproduction = reproduction.max(fro(&(exp.coefficient(k) - u * d * u.adjoint())));
            }
        }
    }
    let phase = ConnectedPhase::default();
    let w = phase.position_width();
    let seps: Vec<f64> = (0..=10).map(|k| k as f64 * w).collect();
    let points = cluster_factorization_demo(&phase, &seps)?;
    let monotone = points.windows(2).all(|p| p[1].deviation < p[0].deviation);
    let oracle = points
        .iter()
        .map(|p| ((p.deviation - cluster_oracle(&phase, p.separation)) / p.reference).abs())
        .fold(0.0, f64::max);
    Ok(Gate::default()
        .below("unitarity_through_4", unitarity, 1e-12)
        .below("exp_reproduction", reproduction, 1e-14)
        .holds("cluster_monotone", monotone)
        .below("cluster_vs_closed_form", oracle, 1e-10)
        .below("relative_at_10_widths", points[10].relative, 1e-6)
        .take())
}

fn determinism() -> Outcome {
    let cfg = RunConfig::verify_all();
    std::env::set_var(THREADS_ENV, "1");
    let first = run_suite(&cfg)?;
    std::env::set_var(THREADS_ENV, "4");
    let second = run_suite(&cfg)?;
    std::env::remove_var(THREADS_ENV);
    let a = first.without_timing().to_json()?;
    let b = second.without_timing().to_json()?;
    Ok(Gate::default()
        .holds(&format!("checks={}", first.pass_vector().len()), !first.pass_vector().is_empty())
        .holds("pass_vectors_equal", first.pass_vector() == second.pass_vector())
        .holds("reports_byte_identical", a == b)
        .take())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("kramers-kronig round trip", kramers_kronig),
        ("subtraction invariance", subtraction_invariance),
        ("bootstrap certification", bootstrap),
        ("exchange-algebra confluence", zf_confluence),
        ("factorization", factorization),
        ("watson and crossing", watson_crossing),
        ("modular KMS (free)", modular_kms),
        ("unruh periodicity", unruh),
        ("wedge duality", wedge_duality),
        ("localization entropy law", localization_entropy),
        ("direct particle interaction", dpi),
        ("order-by-order unitarization", stueckelberg),
        ("determinism", determinism),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let (pass, detail) = match outcome {
            Ok(Ok(gate)) => (gate.passed(), gate.summary()),
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        failed += usize::from(!pass);
        println!(
            "{} {:>2} {name} ({:.2} s): {detail}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        total.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::{KmsVariant, RunConfig, Suite};
use super::report::{Artifact, Check, Report, SuiteError, SuiteReport, EXACT};
use crate::crossing::{
    crossing_check, gaussian_wave, hard_cutoff_wave, kms_check_free, kms_check_with_power, unruh_kms_check,
    watson_check, wedge_duality_vacuum_check, FormFactor, FormFactorModel, ModularData, RapidityQuadrature,
};
use crate::dispersion::{causality_residual, dispersion_residual, kk_real_from_imag, Subtraction};
use crate::dpi::{
    bt_commutator_residual, function_of_m_equivalence, phase_shift, phase_shift_sweep, BtGenerators, BtGrid,
    TwoParticleSystem, SOLVE_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::localization::{
    charge_fluctuation, charge_fluctuation_position, entropy_scaling_fit, geometric_sequence, CurrentModel,
    SmearingProfile,
};
use crate::numerics::GridFunction;
use crate::scatfunc::{bootstrap_residuals, linspace, ScatteringFunction};
use crate::unitarization::{
    cluster_factorization_demo, exponential_free_parts, random_hermitian, unitarity_residual, ConnectedPhase,
    Matrix, PerturbativeS,
};
use crate::zf::{
    apply_annihilator, apply_creator, build_state, confluence_defect, normal_order, parse_word, smatrix_element,
    DeltaMode, Expression, Generator, Rapidity, StateTag, Word,
};

/// Environment variable bounding the worker pool.
pub const THREADS_ENV: &str = "WEDGEBENCH_THREADS";

/// Run every selected suite on a bounded worker pool and assemble the
/// report in suite order. Configuration problems are returned as usage
/// errors; failures inside a suite are recorded in its report.
pub fn run_suite(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_threads()?)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;
    let start = Instant::now();
    let suites = pool.install(|| {
        config
            .suites
            .par_iter()
            .map(|&s| run_one(config, s))
            .collect::<Vec<_>>()
    });
    Ok(Report::new(config.clone(), suites, start.elapsed().as_secs_f64()))
}

/// Pool size from the environment (0 or unset: rayon's default).
pub fn worker_threads() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{THREADS_ENV}: expected a thread count, got '{v}'"))),
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    suite: Suite,
    checks: Vec<Check>,
    details: Map<String, Value>,
    artifacts: Vec<Artifact>,
}

impl Ctx<'_> {
    fn check(&mut self, name: &str, residual: f64, default_tolerance: f64) {
        let tol = self.cfg.tolerance(self.suite, name, default_tolerance);
        self.checks.push(Check::new(name, residual, tol));
    }

    /// Negative control that must exceed `floor`: reported as the inverse
    /// `1/value` against tolerance `1/floor`.
    fn control(&mut self, name: &str, value: f64, floor: f64) {
        self.check(name, 1.0 / value, 1.0 / floor);
    }

    fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details
            .insert(key.into(), serde_json::to_value(value).unwrap_or(Value::Null));
    }
}

fn run_one(cfg: &RunConfig, suite: Suite) -> SuiteReport {
    let start = Instant::now();
    let mut ctx = Ctx {
        cfg,
        suite,
        checks: vec![],
        details: Map::new(),
        artifacts: vec![],
    };
    let outcome = match suite {
        Suite::Kk => kk(&mut ctx),
        Suite::Causality => causality(&mut ctx),
        Suite::Bootstrap => bootstrap(&mut ctx),
        Suite::Zf => zf(&mut ctx),
        Suite::Crossing => crossing(&mut ctx),
        Suite::Kms => kms(&mut ctx),
        Suite::Entropy => entropy(&mut ctx),
        Suite::Dpi => dpi(&mut ctx),
        Suite::Unitarize => unitarize(&mut ctx),
    };
    SuiteReport {
        suite,
        checks: ctx.checks,
        error: outcome.as_ref().err().map(SuiteError::from),
        details: Value::Object(ctx.details),
        wall_time: start.elapsed().as_secs_f64(),
        artifacts: ctx.artifacts,
    }
}

/// `a(ω) = 1/(−ω − i)` (`sign = 1`, analytic above) or its mirror
/// `1/(−ω + i)` (`sign = −1`, analytic below).
fn lorentzian(half_width: f64, n: usize, sign: f64) -> Result<GridFunction> {
    GridFunction::from_fn(-half_width, half_width, n, |w| Complex64::new(-w, -sign).inv())
}

fn kk(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.kk.clone();
    let a = lorentzian(c.half_width, c.n, 1.0)?;
    let t = kk_real_from_imag(&a.imag_part())?;
    let mut rows = Vec::with_capacity(t.real_part.len());
    let mut worst = 0.0f64;
    for (w, v) in t.real_part.points() {
        let exact = -w / (w * w + 1.0);
        worst = worst.max((v.re - exact).abs());
        rows.push(vec![w, v.re, exact]);
    }
    ctx.check("lorentzian_round_trip", worst, 1e-3);
    ctx.detail("trusted_window", t.trusted);
    ctx.detail("nondecaying", t.nondecaying);
    ctx.artifacts
        .push(Artifact::new("kk_real.csv", &["omega", "re_reconstructed", "re_exact"], rows));

    ctx.check("unsubtracted_residual", dispersion_residual(&a, Subtraction::None)?, 1e-3);
    let once = Subtraction::Once { omega0: c.anchor };
    let base = dispersion_residual(&a, once)?;
    let shifted = dispersion_residual(&a.map(|_, v| v + c.shift), once)?;
    ctx.detail("subtracted_residual", base);
    ctx.check("subtraction_invariance", (shifted - base).abs(), 1e-10);
    Ok(())
}

fn causality(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.causality.clone();
    let causal = causality_residual(&lorentzian(c.half_width, c.n, 1.0)?, c.threshold)?;
    let anti = causality_residual(&lorentzian(c.half_width, c.n, -1.0)?, c.threshold)?;
    ctx.detail("causal", causal);
    ctx.detail("anticausal", anti);
    ctx.check("causal_negative_fraction", causal.negative_fraction, c.threshold);
    ctx.control("anticausal_control_inverse", anti.negative_fraction, c.threshold);
    ctx.check("discrimination", causal.negative_fraction / anti.negative_fraction, 1e-3);
    Ok(())
}

fn bootstrap(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.bootstrap.clone();
    let samples = linspace(-c.range, c.range, c.samples);
    let mut per_model = Vec::new();
    for model in &c.models {
        let s = ScatteringFunction::new(model.clone())?;
        let r = bootstrap_residuals(&s, &samples)?;
        ctx.check(&format!("axioms[{model}]"), r.max(), 1e-12);
        per_model.push(json!({"model": model.to_string(), "residuals": r}));
    }
    ctx.detail("models", per_model);
    let broken = ScatteringFunction::sinh_gordon(0.4)?.tilted(c.control_tilt);
    let r = bootstrap_residuals(&broken, &samples)?;
    ctx.detail("control", r);
    ctx.control("tilted_control_inverse", r.max(), 1e-3);
    Ok(())
}

/// `n` distinct rapidities, uniform in `(−3, 3)`.
fn distinct_rapidities(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(n);
    while out.len() < n {
        let x = rng.random_range(-3.0..3.0);
        if out.iter().all(|&y| (x - y).abs() > 1e-3) {
            out.push(x);
        }
    }
    out
}

/// Coefficients of `normal_order(word)|0⟩` keyed by the rapidities of the
/// remaining in-ordered creators, deltas resolved discretely.
fn vacuum_components(word: &Word, s: &ScatteringFunction) -> Result<Vec<(Vec<f64>, Complex64)>> {
    let value = normal_order(word)?.on_vacuum().evaluate(s, DeltaMode::Discrete, &[])?;
    Ok(value
        .into_iter()
        .map(|((_, w), c)| {
            let r = w
                .iter()
                .map(|&k| match word.generators[k].rapidity {
                    Rapidity::Numeric(x) => x,
                    Rapidity::Symbol(_) => unreachable!("numeric word"),
                })
                .collect();
            (r, c)
        })
        .collect())
}

/// Largest coefficient difference between two state sums.
fn state_sum_difference(a: &[(Vec<f64>, Complex64)], b: &[(Vec<f64>, Complex64)]) -> f64 {
    let lookup = |set: &[(Vec<f64>, Complex64)], key: &Vec<f64>| -> Complex64 {
        set.iter().filter(|(k, _)| k == key).map(|(_, c)| *c).sum()
    };
    a.iter()
        .chain(b)
        .map(|(k, _)| (lookup(a, k) - lookup(b, k)).norm())
        .fold(0.0, f64::max)
}

fn zf(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.zf.clone();
    let s = ScatteringFunction::new(c.model.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);

    if let Some(text) = &c.word {
        let word = Word::numeric(parse_word(text)?);
        let e: Expression = normal_order(&word)?;
        ctx.detail("normal_form", e.to_string());
    }

    let mut worst = 0.0f64;
    let mut words = 0usize;
    for draw in 0..c.draws {
        for len in 1..=c.max_length {
            for pattern in 0..1u32 << len {
                let theta = distinct_rapidities(&mut rng, len);
                let gens = theta
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        if pattern >> i & 1 == 1 {
                            Generator::creator(x)
                        } else {
                            Generator::annihilator(x)
                        }
                    })
                    .collect();
                let path_seed = ctx.cfg.seed ^ ((draw as u64) << 32 | u64::from(pattern) << 8 | len as u64);
                worst = worst.max(confluence_defect(&Word::numeric(gens), &s, c.random_paths, path_seed)?);
                words += 1;
            }
        }
    }
    ctx.detail("confluence_words", words);
    ctx.check("confluence", worst, 1e-12);

    let mut creator = 0.0f64;
    let mut annihilator = 0.0f64;
    for n in 0..c.max_particles {
        for _ in 0..c.draws {
            let r = distinct_rapidities(&mut rng, n + 1);
            let state = build_state(&r[..n], StateTag::In)?;
            let mut word = vec![Generator::creator(r[n])];
            word.extend(state.word());
            let (w, next) = apply_creator(&s, r[n], &state)?;
            let direct = vec![(next.rapidities().to_vec(), w)];
            creator = creator.max(state_sum_difference(&direct, &vacuum_components(&Word::numeric(word), &s)?));

            let full = build_state(&r, StateTag::In)?;
            let target = full.rapidities()[rng.random_range(0..n + 1)];
            for theta in [target, r[0] + 0.5] {
                let mut word = vec![Generator::annihilator(theta)];
                word.extend(full.word());
                let direct: Vec<_> = apply_annihilator(&s, theta, &full)?
                    .into_iter()
                    .map(|t| (t.state.rapidities().to_vec(), t.weight))
                    .collect();
                annihilator =
                    annihilator.max(state_sum_difference(&direct, &vacuum_components(&Word::numeric(word), &s)?));
            }
        }
    }
    ctx.check("creator_action", creator, 1e-12);
    ctx.check("annihilator_action", annihilator, 1e-12);

    let mut factorization = 0.0f64;
    for n in 2..=3 {
        for _ in 0..c.draws {
            let mut theta = distinct_rapidities(&mut rng, n);
            theta.sort_by(|a, b| b.total_cmp(a));
            let inc = build_state(&theta, StateTag::In)?;
            let out = build_state(&theta, StateTag::Out)?;
            for p in smatrix_element(&s, &out, &inc)? {
                factorization = factorization.max((p.weight - pairing_product(&s, &theta, &p.sigma)?).norm());
            }
        }
    }
    ctx.check("factorization", factorization, 1e-12);

    // The exchange relations are consistent only for a unitary,
    // crossing-symmetric, real-analytic S.
    let r = bootstrap_residuals(&s, &linspace(-5.0, 5.0, 100))?;
    ctx.detail("exchange_consistency", r);
    ctx.check("exchange_consistency", r.max(), 1e-12);
    Ok(())
}

/// `Π S(θ_j − θ_k)` over in-particles `j < k` whose contraction lines cross
/// in the pairing `sigma` (out `j` ↔ in `sigma[j]`).
fn pairing_product(s: &ScatteringFunction, theta: &[f64], sigma: &[usize]) -> Result<Complex64> {
    let mut pos = vec![0; theta.len()];
    for (j, &k) in sigma.iter().enumerate() {
        pos[k] = j;
    }
    let mut w = Complex64::new(1.0, 0.0);
    for j in 0..theta.len() {
        for k in j + 1..theta.len() {
            if pos[j] < pos[k] {
                w *= s.eval_real(theta[j] - theta[k])?;
            }
        }
    }
    Ok(w)
}

fn crossing(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.crossing.clone();
    let f = FormFactor::new(c.form_factor.clone(), c.particles)?;
    let s = match c.form_factor {
        FormFactorModel::FreeFieldLinear => ScatteringFunction::free(),
        _ => ScatteringFunction::ising(),
    };
    let base = linspace(-3.0, 3.0, c.samples);
    if c.particles == 2 {
        let w = watson_check(&f, &s, &base)?;
        ctx.check("watson_exchange", w.exchange, 1e-12);
        ctx.check("watson_periodicity", w.periodicity, 1e-12);
    }
    // strictly descending tuples
    let tuples: Vec<Vec<f64>> = base
        .iter()
        .map(|&t| (0..c.particles).map(|i| t - 0.75 * i as f64 + 0.3 * t.abs() * f64::from(i == 0)).collect())
        .collect();
    let per_sample = tuples
        .iter()
        .map(|t| Ok(json!({"theta": t, "residual": crossing_check(&f, c.k, std::slice::from_ref(t))?})))
        .collect::<Result<Vec<_>>>()?;
    ctx.detail("samples", per_sample);
    ctx.check("crossing", crossing_check(&f, c.k, &tuples)?, 1e-12);
    if c.particles >= 2 {
        let ascending: Vec<f64> = tuples[0].iter().rev().copied().collect();
        let rejected = matches!(crossing_check(&f, c.k, &[ascending]), Err(Error::Ordering(_)));
        ctx.check("ordering_precondition", if rejected { 0.0 } else { 1.0 }, EXACT);
    }
    Ok(())
}

fn kms(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.kms.clone();
    if c.variants.contains(&KmsVariant::Free) {
        let m = ModularData::new(RapidityQuadrature {
            points: c.quadrature_points,
            half_width: c.half_width,
        });
        let (mut kms_worst, mut half_min, mut boost_worst) = (0.0f64, f64::INFINITY, 0.0f64);
        let mut duality_worst = 0.0f64;
        let mut reports = Vec::new();
        for &(c1, c2, w) in &c.pairs {
            let (f, g) = (gaussian_wave(c1, w), gaussian_wave(c2, w));
            let r = kms_check_free(&m, &f, &g)?;
            let half = kms_check_with_power(&m, &f, &g, 0.5)?;
            let boosted = kms_check_free(&m, &m.boost(&f, c.boost), &m.boost(&g, c.boost))?;
            let duality = wedge_duality_vacuum_check(&m, &f, &g)?;
            kms_worst = kms_worst.max(r.residual);
            half_min = half_min.min(half.residual);
            boost_worst = boost_worst.max((boosted.residual - r.residual).abs());
            duality_worst = duality_worst.max(duality.residual);
            reports.push(json!({"pair": [c1, c2, w], "kms": r, "half_power": half, "duality": duality}));
        }
        ctx.detail("free", reports);
        ctx.check("kms_free", kms_worst, 1e-6);
        ctx.control("half_power_control_inverse", half_min, 1e-2);
        ctx.check("boost_invariance", boost_worst, 1e-8);
        ctx.check("wedge_duality", duality_worst, 1e-6);
        // asymmetric pairs: a cutoff centred with its partner can cancel by parity
        let mut cutoff_min = f64::INFINITY;
        for &(cf, wf, cg, wg) in &c.cutoff_pairs {
            let g = hard_cutoff_wave(cg, wg, c.cutoff);
            let r = wedge_duality_vacuum_check(&m, &gaussian_wave(cf, wf), &g)?;
            cutoff_min = cutoff_min.min(r.residual);
        }
        ctx.detail("hard_cutoff_min_residual", cutoff_min);
        ctx.control("hard_cutoff_control_inverse", cutoff_min, 1e-3);
    }
    if c.variants.contains(&KmsVariant::Unruh) {
        let beta = 2.0 * PI / c.acceleration;
        let taus = linspace(0.1, 3.0, c.tau_samples);
        let r = unruh_kms_check(c.acceleration, beta, &taus)?;
        let detuned = unruh_kms_check(c.acceleration, c.detuning * beta, &taus)?;
        ctx.check("unruh_periodicity", r.residual, 1e-12);
        ctx.control("detuned_control_inverse", detuned.residual, 1e-2);
        ctx.detail("unruh", &r);
        ctx.detail("unruh_detuned_residual", detuned.residual);
    }
    Ok(())
}

fn entropy(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.entropy.clone();
    let widths = geometric_sequence(c.dr_max, c.dr_min, c.points)?;
    let chiral = entropy_scaling_fit(c.r, &widths, &CurrentModel::chiral(), c.ramp_points)?;
    let quartic = entropy_scaling_fit(c.r, &widths, &CurrentModel::with_kernel_power(4), c.ramp_points)?;
    ctx.check("log_law_misfit", 1.0 - chiral.fit.log.r2, 1.0 - crate::localization::LOG_LAW_R2);
    ctx.check("log_slope", (chiral.fit.log.slope - 2.0).abs() / 2.0, 1e-2);

    let profile = SmearingProfile {
        ramp_points: c.ramp_points,
        ..SmearingProfile::new(c.r, c.dr_max)?
    };
    let momentum = charge_fluctuation(&profile, &CurrentModel::chiral())?;
    let position = charge_fluctuation_position(&profile, &CurrentModel::chiral())?;
    ctx.detail("position_momentum", json!({"dR": c.dr_max, "momentum": momentum, "position": position}));
    ctx.check("position_momentum_agreement", ((position - momentum) / momentum).abs(), 1e-2);
    ctx.control("quartic_log_rejection_inverse", 1.0 - quartic.fit.log.r2, 1.0 - crate::localization::LOG_LAW_R2);

    let rows = chiral
        .samples
        .iter()
        .zip(&quartic.samples)
        .map(|(a, b)| vec![a.0, a.1, b.1])
        .collect();
    ctx.artifacts
        .push(Artifact::new("entropy.csv", &["dR", "fluctuation", "fluctuation_quartic"], rows));
    ctx.detail("chiral", chiral.fit);
    ctx.detail("quartic", quartic.fit);
    Ok(())
}

/// Distance of two phase shifts modulo π.
fn phase_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

fn dpi(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.dpi.clone();
    let sys = c.system();

    let free = TwoParticleSystem { lambda: 0.0, ..sys };
    let free_worst = c
        .momenta
        .iter()
        .map(|&p| Ok(phase_shift(&free, 0, p)?.delta.abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    ctx.check("free_phase_shift", free_worst, EXACT);

    let weak = TwoParticleSystem {
        lambda: c.born_lambda,
        ..sys
    };
    let d = phase_shift(&weak, 0, c.born_p)?.delta;
    let born = weak.born_phase(c.born_p);
    ctx.detail("born", json!({"lambda": c.born_lambda, "p": c.born_p, "delta": d, "born": born}));
    ctx.check("born_agreement", ((d - born) / born).abs(), 1e-2);

    let sweep = phase_shift_sweep(&sys, &c.momenta)?;
    let solve = sweep.iter().map(|s| s.solve_residual).fold(0.0, f64::max);
    ctx.check("solve_residual", solve, SOLVE_TOLERANCE);
    ctx.detail(
        "phase_shifts",
        sweep.iter().map(|s| json!({"p": s.p, "delta": s.delta})).collect::<Vec<_>>(),
    );

    let equivalence = c
        .momenta
        .par_iter()
        .map(|&p| function_of_m_equivalence(&sys, &c.wavepacket, p))
        .collect::<Result<Vec<_>>>()?;
    let agreement = sweep
        .iter()
        .zip(&equivalence)
        .map(|(k, e)| phase_distance(k.delta, e.delta_m))
        .fold(0.0, f64::max);
    ctx.check("wavepacket_agreement", agreement, 1e-3);
    ctx.check(
        "mass_squared_equivalence",
        equivalence.iter().map(|e| e.discrepancy).fold(0.0, f64::max),
        1e-3,
    );
    ctx.detail("equivalence", &equivalence);
    ctx.artifacts.push(Artifact::new(
        "dpi_phase_shifts.csv",
        &["p", "delta_k_matrix", "delta_mass", "delta_mass_squared"],
        sweep
            .iter()
            .zip(&equivalence)
            .map(|(k, e)| vec![k.p, k.delta, e.delta_m, e.delta_m2])
            .collect(),
    ));

    let residuals = |grid: BtGrid| -> Result<crate::dpi::BtResiduals> {
        let gen = BtGenerators::assemble(&sys, grid)?;
        bt_commutator_residual(&gen, &gen.gaussian_state(1.5, 0.3, 0.8))
    };
    let fine = residuals(c.bt_grid)?;
    ctx.check("bt_residual", fine.r1.max(fine.r2), 1e-6);
    let coarse_grid = BtGrid {
        n_total: c.bt_coarse,
        n_relative: c.bt_coarse,
        ..c.bt_grid
    };
    let coarse = residuals(coarse_grid)?;
    let doubled = residuals(coarse_grid.doubled())?;
    let ratio = (doubled.r1 / coarse.r1).max(doubled.r2 / coarse.r2);
    ctx.detail("bt", json!({"fine": fine, "coarse": coarse, "doubled": doubled}));
    ctx.check("bt_refinement_ratio", ratio, 0.25);
    Ok(())
}

fn unitarize(ctx: &mut Ctx) -> Result<()> {
    let c = ctx.cfg.unitarize.clone();
    let h = random_hermitian(c.dim, ctx.cfg.seed)?;
    let s1 = &h * Complex64::new(0.0, 1.0);
    let s = PerturbativeS::with_default_free_parts(&s1, c.order)?;
    let residuals = unitarity_residual(&s);
    for (k, &r) in residuals.iter().enumerate().take(c.order) {
        ctx.check(&format!("unitarity_order[{}]", k + 1), r, 1e-12);
    }
    ctx.detail("residuals_by_order", &residuals);

    let exp = PerturbativeS::from_free_parts(c.dim, &exponential_free_parts(&h, c.order))?;
    let mut power = Matrix::identity(c.dim, c.dim);
    let mut factorial = 1.0;
    let mut worst = 0.0f64;
    for k in 1..=c.order {
        power = &power * &s1;
        factorial *= k as f64;
        worst = worst.max((exp.coefficient(k) - &power / Complex64::new(factorial, 0.0)).norm());
    }
    ctx.check("exp_reproduction", worst, 1e-14);

    let phase = ConnectedPhase::default();
    let w = phase.position_width();
    let seps: Vec<f64> = c.separations.iter().map(|x| x * w).collect();
    let points = cluster_factorization_demo(&phase, &seps)?;
    let rise = points
        .windows(2)
        .map(|p| (p[1].deviation - p[0].deviation).max(0.0))
        .fold(0.0, f64::max);
    ctx.check("cluster_monotonicity", rise, EXACT);
    ctx.check("cluster_far_deviation", points.last().map_or(f64::NAN, |p| p.relative), 1e-6);
    ctx.artifacts.push(Artifact::new(
        "cluster.csv",
        &["separation", "deviation", "relative"],
        points.iter().map(|p| vec![p.separation, p.deviation, p.relative]).collect(),
    ));
    ctx.detail("cluster", &points);
    Ok(())
}

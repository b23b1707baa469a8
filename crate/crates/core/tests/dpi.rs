mod common;

use common::dpi::separable_oracle;
use wedgebench::dpi::*;
use wedgebench::Error;

#[test]
fn k_matrix_matches_separable_closed_form() {
    for lambda in [0.5, -0.3, 0.01] {
        let sys = TwoParticleSystem::with_coupling(lambda);
        for q in [0.3, 0.5, 1.1, 2.0] {
            let d = phase_shift(&sys, 0, q).unwrap();
            assert!(d.solve_residual < 1e-12);
            let oracle = separable_oracle(&sys, q);
            assert!((d.delta - oracle).abs() < 1e-7, "λ={lambda} q={q}: {} vs {oracle}", d.delta);
        }
    }
}

#[test]
fn free_and_higher_waves_vanish_exactly() {
    let free = TwoParticleSystem::with_coupling(0.0);
    for q in [0.1, 0.5, 3.0] {
        assert_eq!(phase_shift(&free, 0, q).unwrap().delta, 0.0);
        assert_eq!(phase_shift(&TwoParticleSystem::default(), 1, q).unwrap().delta, 0.0);
    }
    assert_eq!(cluster_limit(&free, &[0.0], &[0.5, 1.0]).unwrap()[0].1, 0.0);
}

#[test]
fn born_limit_and_odd_first_order() {
    let weak = TwoParticleSystem::with_coupling(0.01);
    let d = phase_shift(&weak, 0, 0.5).unwrap().delta;
    let born = weak.born_phase(0.5);
    assert!(((d - born) / born).abs() < 0.01, "{d} vs {born}");
    let neg = phase_shift(&TwoParticleSystem::with_coupling(-0.01), 0, 0.5).unwrap().delta;
    assert!(d * neg < 0.0);
    assert!((d + neg).abs() < 0.02 * d.abs());
}

#[test]
fn s_matrix_approaches_one_linearly() {
    let sys = TwoParticleSystem::default();
    let momenta = [0.3, 0.6, 0.9, 1.2, 1.5];
    let curve = cluster_limit(&sys, &[0.1, 0.05, 0.025], &momenta).unwrap();
    for w in curve.windows(2) {
        let ratio = w[0].1 / w[1].1;
        assert!((ratio - 2.0).abs() < 0.2, "{ratio}");
    }
}

#[test]
fn on_shell_momentum_must_be_inside_the_grid() {
    let sys = TwoParticleSystem::default();
    assert!(matches!(phase_shift(&sys, 0, 0.0), Err(Error::Domain(_))));
    assert!(matches!(phase_shift(&sys, 0, sys.p_max), Err(Error::Domain(_))));
}

#[test]
fn sweep_is_continuous() {
    let sys = TwoParticleSystem::with_coupling(-2.0);
    let momenta: Vec<f64> = (1..=40).map(|i| 0.05 * i as f64).collect();
    let s = phase_shift_sweep(&sys, &momenta).unwrap();
    assert!(s.windows(2).all(|w| (w[1].delta - w[0].delta).abs() < 0.5));
}

#[test]
fn wavepacket_evolution_reproduces_phase_shift() {
    let sys = TwoParticleSystem::with_coupling(0.5);
    let cfg = WavepacketConfig::default();
    let k = phase_shift(&sys, 0, 0.5).unwrap().delta;
    let w = wavepacket_phase(&sys, &cfg, Pipeline::Mass, 0.5).unwrap();
    assert!((k - w.delta).abs() < 1e-3, "{k} vs {}", w.delta);
    assert!(w.amplitude > 0.99 && w.amplitude <= 1.0 + 1e-12);
    let free = wavepacket_phase(&TwoParticleSystem::with_coupling(0.0), &cfg, Pipeline::Mass, 0.5).unwrap();
    assert!(free.delta.abs() < 1e-12);
}

#[test]
fn positive_function_of_the_mass_gives_the_same_s() {
    let sys = TwoParticleSystem::with_coupling(0.5);
    let cfg = WavepacketConfig::default();
    let r = function_of_m_equivalence(&sys, &cfg, 0.5).unwrap();
    assert!(r.discrepancy < 1e-3);
    let longer = WavepacketConfig {
        time_factor: 2.0 * cfg.time_factor,
        ..cfg
    };
    let r2 = function_of_m_equivalence(&sys, &longer, 0.5).unwrap();
    // both sit at round-off; doubling T must not make it grow beyond that
    assert!(r2.discrepancy <= r.discrepancy.max(1e-11), "{} {}", r.discrepancy, r2.discrepancy);
    let free = function_of_m_equivalence(&TwoParticleSystem::with_coupling(0.0), &cfg, 0.5).unwrap();
    assert!(free.discrepancy < 1e-12);
}

#[test]
fn boost_commutators() {
    let test_state = |g: &BtGenerators| g.gaussian_state(1.5, 0.3, 0.8);
    let free = BtGenerators::assemble(&TwoParticleSystem::with_coupling(0.0), BtGrid::default()).unwrap();
    let r = bt_commutator_residual(&free, &test_state(&free)).unwrap();
    assert!(r.r1 < 1e-8 && r.r2 < 1e-8, "{r:?}");

    let sys = TwoParticleSystem::with_coupling(0.5);
    let gen = BtGenerators::assemble(&sys, BtGrid::default()).unwrap();
    let r = bt_commutator_residual(&gen, &test_state(&gen)).unwrap();
    assert!(r.r1 < 1e-6 && r.r2 < 1e-6, "{r:?}");

    let coarse = BtGrid {
        n_total: 16,
        n_relative: 16,
        ..BtGrid::default()
    };
    let a = BtGenerators::assemble(&sys, coarse).unwrap();
    let b = BtGenerators::assemble(&sys, coarse.doubled()).unwrap();
    let ra = bt_commutator_residual(&a, &test_state(&a)).unwrap();
    let rb = bt_commutator_residual(&b, &test_state(&b)).unwrap();
    assert!(ra.r1 >= 4.0 * rb.r1 && ra.r2 >= 4.0 * rb.r2, "{ra:?} {rb:?}");

    let wide = gen.gaussian_state(6.0, 0.0, 3.0);
    assert!(matches!(bt_commutator_residual(&gen, &wide), Err(Error::Domain(_))));
}

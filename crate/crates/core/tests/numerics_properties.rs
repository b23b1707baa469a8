use num_complex::Complex64;
use proptest::prelude::*;
use wedgebench::numerics::GridFunction;

fn bump(c: f64, w: f64) -> impl Fn(f64) -> f64 {
    move |x| (-(x - c) * (x - c) / (2.0 * w * w)).exp()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pv_integral_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0,
                             c1 in -2.0f64..2.0, c2 in -2.0f64..2.0,
                             omega in -4.0f64..4.0) {
        let f = GridFunction::from_real_fn(-12.0, 12.0, 1201, bump(c1, 0.7)).unwrap();
        let g = GridFunction::from_real_fn(-12.0, 12.0, 1201, bump(c2, 1.3)).unwrap();
        let combo = GridFunction::new(
            -12.0,
            12.0,
            f.samples().iter().zip(g.samples()).map(|(x, y)| x * a + y * b).collect(),
        )
        .unwrap();
        let lhs = combo.pv_integral(omega).unwrap();
        let rhs = a * f.pv_integral(omega).unwrap() + b * g.pv_integral(omega).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + lhs.abs()));
    }

    #[test]
    fn fourier_halves_sum_to_parseval_norm(seed in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4..300)) {
        let samples: Vec<Complex64> = seed.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
        let f = GridFunction::new(-1.0, 1.0, samples).unwrap();
        let split = f.fourier_support_split().unwrap();
        let parseval = f.parseval_norm();
        prop_assert!((split.total() - parseval).abs() <= 1e-10 * parseval.max(f64::MIN_POSITIVE));
    }
}

#[test]
fn pv_integral_converges_under_grid_doubling() {
    let f = bump(0.2, 0.9);
    for omega in [-1.1, 0.0, 0.37, 2.5] {
        let coarse = GridFunction::from_real_fn(-12.0, 12.0, 1201, &f).unwrap();
        let fine = GridFunction::from_real_fn(-12.0, 12.0, 2401, &f).unwrap();
        let (a, b) = (coarse.pv_integral(omega).unwrap(), fine.pv_integral(omega).unwrap());
        assert!((a - b).abs() <= 1e-6 * b.abs().max(1e-3), "ω={omega}: {a} vs {b}");
    }
}

#[test]
fn csv_round_trip_preserves_complex_samples() {
    let f = GridFunction::from_fn(-2.0, 2.0, 9, |x| Complex64::new(x, -x * x)).unwrap();
    let mut buf = Vec::new();
    f.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("x,re,im"));
    let g = GridFunction::read_csv(buf.as_slice()).unwrap();
    assert_eq!(f, g);
}

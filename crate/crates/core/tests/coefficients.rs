//! Koopman coefficients: exact, quadrature and Monte Carlo paths, and the
//! sweeps built on them.

use skewlab::gaussian::{cauchy_coefficient, gram_matrix};
use skewlab::group::{ball, GroupWord};
use skewlab::lab::{almost_invariant_sweep, coefficient, decay_sweep, symmetric_difference};
use skewlab::{Estimator, Interval, ProfileVector, System};

fn w(s: &str) -> GroupWord {
    GroupWord::parse(s, 2).unwrap()
}

#[test]
fn window_examples() {
    let sys = System::orientation(0.7, 2).unwrap();
    let w5 = ProfileVector::window(5).unwrap();
    let c = coefficient(&sys, &w(""), &w5, &w5, Estimator::Exact).unwrap();
    assert_eq!(c.value, 1.0);
    let w1 = ProfileVector::window(1).unwrap();
    let c = coefficient(&sys, &w("a"), &w1, &w1, Estimator::Exact).unwrap();
    assert_eq!(c.value, 0.5);
}

#[test]
fn gaussian_cauchy_dual_method() {
    let sys = System::gaussian(2).unwrap();
    let g = w("abab");
    let h = ProfileVector::cauchy();
    let exact = coefficient(&sys, &g, &h, &h, Estimator::Exact).unwrap();
    assert!((exact.value - cauchy_coefficient(2.0).unwrap()).abs() < 1e-12);
    let mc = coefficient(&sys, &g, &h, &h, Estimator::monte_carlo(100_000, 11)).unwrap();
    assert!(exact.agrees_with(&mc, 4.0), "{exact:?} vs {mc:?}");
}

#[test]
fn cauchy_rejected_on_orientation_system() {
    let sys = System::orientation(0.7, 2).unwrap();
    let h = ProfileVector::cauchy();
    assert!(coefficient(&sys, &w("a"), &h, &h, Estimator::Exact).is_err());
}

#[test]
fn symmetry_and_cauchy_schwarz() {
    let systems = [
        System::orientation(0.3, 2).unwrap(),
        System::gaussian(2).unwrap(),
    ];
    let profiles = [
        ProfileVector::window(3).unwrap(),
        ProfileVector::gaussian().unit(),
        ProfileVector::indicator(Interval::new(-1.5, 4.0).unwrap()),
    ];
    for sys in &systems {
        for g in ball(3, 2).unwrap().iter().step_by(6) {
            for xi in &profiles {
                for eta in &profiles {
                    let c = coefficient(sys, g, xi, eta, Estimator::Exact)
                        .unwrap()
                        .value;
                    assert!(c.abs() <= xi.norm() * eta.norm() + 1e-12);
                }
                let a = coefficient(sys, g, xi, xi, Estimator::Exact).unwrap().value;
                let b = coefficient(sys, &g.inverse(), xi, xi, Estimator::Exact)
                    .unwrap()
                    .value;
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn exact_and_monte_carlo_agree_on_random_configs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    let mut misses = 0;
    for i in 0..200 {
        let sys = if i % 2 == 0 {
            System::orientation(rng.random_range(0.1..0.9), 2).unwrap()
        } else {
            System::gaussian(2).unwrap()
        };
        let g = GroupWord::random(2, rng.random_range(0..8), &mut rng).unwrap();
        let xi = match i % 3 {
            0 => ProfileVector::window(rng.random_range(1..20)).unwrap(),
            1 => ProfileVector::gaussian().unit(),
            _ => ProfileVector::indicator(Interval::new(-2.0, rng.random_range(0.5..6.0)).unwrap()),
        };
        let exact = coefficient(&sys, &g, &xi, &xi, Estimator::Exact).unwrap();
        let mc = coefficient(&sys, &g, &xi, &xi, Estimator::monte_carlo(20_000, i)).unwrap();
        if !exact.agrees_with(&mc, 4.0) {
            misses += 1;
        }
    }
    assert!(misses <= 2, "{misses} of 200 outside 4 stderr");
}

#[test]
fn symmetric_difference_examples() {
    let sys = System::orientation(0.7, 2).unwrap();
    let a = ProfileVector::indicator(Interval::new(-1.0, 1.0).unwrap());
    assert_eq!(symmetric_difference(&sys, &w(""), &a).unwrap(), 0.0);
    // every shift is ±1, so the overlap is always 1
    assert_eq!(symmetric_difference(&sys, &w("b"), &a).unwrap(), 2.0);
    let mut prev = 0.0;
    for len in 1..=10 {
        let g = GroupWord::from_letters(2, &vec![1; len]).unwrap();
        let v = symmetric_difference(&sys, &g, &ProfileVector::window(4).unwrap()).unwrap();
        assert!(v >= prev - 1e-15);
        prev = v;
    }
}

#[test]
fn decay_sweep_examples() {
    let gaussian = ProfileVector::gaussian();
    let curve = decay_sweep(
        &System::orientation(0.7, 2).unwrap(),
        &gaussian,
        20,
        8,
        Estimator::Exact,
        0,
    )
    .unwrap();
    assert_eq!(curve.rows.len(), 20);
    assert!(curve.rows.windows(2).all(|r| r[1].max < r[0].max));
    let flat = decay_sweep(
        &System::orientation(0.5, 2).unwrap(),
        &gaussian,
        20,
        4,
        Estimator::Exact,
        0,
    )
    .unwrap();
    assert!(flat.rows[19].max > curve.rows[19].max);

    let cauchy = decay_sweep(
        &System::gaussian(2).unwrap(),
        &ProfileVector::cauchy(),
        6,
        50,
        Estimator::Exact,
        3,
    )
    .unwrap();
    for row in &cauchy.rows {
        assert!((row.max - row.min).abs() <= 1e-12);
        if row.exhaustive {
            assert_eq!(
                row.count() as u128,
                skewlab::group::shell_size(2, row.radius)
            );
        }
    }
}

#[test]
fn almost_invariance_examples() {
    let sys = System::orientation(0.7, 2).unwrap();
    let t = almost_invariant_sweep(&sys, 4, &[10, 100, 1000], 16, 0).unwrap();
    for row in &t.rows {
        assert!(row.sup_defect <= row.bound + 1e-15);
    }
    assert!(t.rows[1].sup_defect <= 0.02);
    assert!(t.rows.windows(2).all(|r| r[1].sup_defect < r[0].sup_defect));

    let zero = almost_invariant_sweep(&sys, 0, &[1, 5], 16, 0).unwrap();
    assert!(zero.rows.iter().all(|r| r.sup_defect == 0.0));

    let gauss = System::gaussian(2).unwrap();
    let ns = [50, 100, 200, 400, 800];
    let t = almost_invariant_sweep(&gauss, 4, &ns, 16, 0).unwrap();
    for r in t.rows.windows(2) {
        let ratio = r[0].sup_defect / r[1].sup_defect;
        assert!((ratio - 2.0).abs() <= 0.2, "n={}: ratio {ratio}", r[0].n);
    }
}

#[test]
fn gaussian_samples_reproduce_the_gram_matrix() {
    use rand::SeedableRng;
    let words: Vec<_> = ["a", "ab", "aB", "b", "abb"].iter().map(|s| w(s)).collect();
    let sys = gram_matrix(&words).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let n = 50_000;
    let d = words.len();
    let mut acc = nalgebra::DMatrix::<f64>::zeros(d, d);
    for _ in 0..n {
        let x = sys.sample_with(&mut rng);
        acc += &x * x.transpose();
    }
    let emp = acc / n as f64;
    for i in 0..d {
        for j in 0..d {
            let g = sys.gram();
            let se = ((g[(i, i)] * g[(j, j)] + g[(i, j)].powi(2)) / n as f64).sqrt();
            assert!((emp[(i, j)] - g[(i, j)]).abs() <= 4.0 * se);
        }
    }
    // deterministic per seed
    assert_eq!(sys.sample(9), sys.sample(9));
}

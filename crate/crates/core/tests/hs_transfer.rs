//! Trace identities of the adjoint action and the transfer of coefficient
//! decay from vectors to rank-one operators.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewlab::hs::{
    adjoint_act, hs_coefficient, inner, random_vector, rank_one, rank_one_bound, trace, CVector,
};
use skewlab::{FiniteUnitary, HSOperator};

#[test]
fn trace_and_norm_are_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..100 {
        let dim = 2 + i % 15;
        let u = FiniteUnitary::random(dim, &mut rng);
        let t = HSOperator::new(nalgebra::DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(
                rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut rng),
                0.5,
            )
        }))
        .unwrap();
        let moved = adjoint_act(&u, &t).unwrap();
        assert!((trace(&moved) - trace(&t)).norm() < 1e-10);
        assert!((moved.hs_norm() - t.hs_norm()).abs() < 1e-10);
    }
}

#[test]
fn rank_one_bound_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..500 {
        let dim = 1 + i % 16;
        let v: Vec<CVector> = (0..4).map(|_| random_vector(dim, &mut rng)).collect();
        let u = FiniteUnitary::random(dim, &mut rng);
        let t1 = rank_one(&v[0], &v[1]).unwrap();
        let t2 = rank_one(&v[2], &v[3]).unwrap();
        let c = hs_coefficient(&t1, &t2, &u).unwrap();
        assert!(c.norm() <= rank_one_bound(&v[0], &v[1], &v[2], &v[3], &u) + 1e-10);
    }
}

#[test]
fn decay_transfers_to_rank_one_operators() {
    // U_L = diag(e^{2πi L k/d}) against a Gaussian-weighted vector: the
    // vector coefficient is a discrete Gaussian characteristic function
    // that vanishes as L grows toward d/2; |φ(L)| is frozen from an
    // independent evaluation of the same sum.
    let d = 64;
    let weights: Vec<f64> = (0..d)
        .map(|k| (-((k as f64 - 32.0) / 8.0).powi(2)).exp())
        .collect();
    let total: f64 = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    let eta = CVector::from_iterator(d, weights.iter().map(|w| Complex64::new(w / total, 0.0)));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let xi1 = random_vector(d, &mut rng);
    let xi2 = random_vector(d, &mut rng);
    let t1 = rank_one(&xi1, &eta).unwrap();
    let t2 = rank_one(&xi2, &eta).unwrap();
    let mut prev = f64::INFINITY;
    let expected = [
        1.0,
        0.9257914512036208,
        0.7346029443286326,
        0.29121293321401964,
        0.007191883355824476,
        2.675285924858372e-09,
    ];
    for (l, want) in [0, 1, 2, 4, 8, 16].into_iter().zip(expected) {
        let phases: Vec<f64> = (0..d)
            .map(|k| 2.0 * PI * (l * k) as f64 / d as f64)
            .collect();
        let u = FiniteUnitary::diagonal_phases(&phases);
        let vector = inner(&u.apply(&eta), &eta).norm();
        let op = hs_coefficient(&t1, &t2, &u).unwrap().norm();
        assert!(op <= vector * xi1.norm() * xi2.norm() + 1e-10);
        assert!((vector - want).abs() < 1e-12, "L={l}: {vector}");
        assert!(vector < prev);
        prev = vector;
    }
    assert!(prev < 1e-8, "vector coefficient at L=16: {prev}");
}

//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, each with its
//! wall-clock budget. Exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use skewlab::gaussian::{
    cauchy_coefficient, cauchy_kernel_quadrature, gaussian_window_coefficient,
    gaussian_window_coefficient_quadrature, gram_matrix,
};
use skewlab::group::{ball, GroupWord};
use skewlab::hs::{
    inner, projection_defect, projection_defect_formula, random_real_unit_vector,
    random_unit_vector, FiniteUnitary,
};
use skewlab::lab::{coefficient, symmetric_difference, symmetric_difference_mc};
use skewlab::orientation::{group_cocycle, skew_step};
use skewlab::pathsum::{exact_gaussian_bound, exact_window_coefficient};
use skewlab::tree::CanonicalEdge;
use skewlab::{
    Estimator, Interval, Orientation, OrientationMeasure, ProfileVector, SkewPoint, System,
};

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> GroupWord {
    let len = rng.random_range(0..=max_len);
    GroupWord::random(2, len, rng).unwrap()
}

fn chain_rule() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let ps = [0.3, 0.5, 0.7];
    for i in 0..10_000 {
        let p = ps[i % 3];
        let omega = Orientation::new(rng.random(), OrientationMeasure::new(p, 2).unwrap());
        let g = random_word(&mut rng, 8);
        let h = random_word(&mut rng, 8);
        let gh = g.multiply(&h).unwrap();
        let lhs = group_cocycle(&omega, &gh).unwrap();
        let rhs = group_cocycle(&omega, &g).unwrap()
            + group_cocycle(&omega.pushforward(&g.inverse()), &h).unwrap();
        ensure(lhs == rhs, || format!("g={g} h={h} p={p}: {lhs} != {rhs}"))?;
    }
    Ok("10000 triples, integer equality".into())
}

fn action_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let probe: Vec<CanonicalEdge> = ball(5, 2)
        .unwrap()
        .iter()
        .filter_map(CanonicalEdge::to_vertex)
        .collect();
    for _ in 0..500 {
        let p = rng.random_range(0.05..0.95);
        let omega = Orientation::new(rng.random(), OrientationMeasure::new(p, 2).unwrap());
        let pt = SkewPoint::new(omega, rng.random_range(-50i32..50) as f64);
        let g = random_word(&mut rng, 8);
        let h = random_word(&mut rng, 8);
        let lhs = skew_step(&g.multiply(&h).unwrap(), &pt).unwrap();
        let rhs = skew_step(&g, &skew_step(&h, &pt).unwrap()).unwrap();
        ensure(lhs.t == rhs.t, || {
            format!("g={g} h={h}: t {} != {}", lhs.t, rhs.t)
        })?;
        ensure(lhs.orientation.agrees_on(&rhs.orientation, &probe), || {
            format!("g={g} h={h}: orientations differ on ball(5)")
        })?;
    }
    Ok("500 instances, both coordinates exact on ball(5) edges".into())
}

fn window_exact_vs_mc() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let g = random_word(&mut rng, 10);
        let n = rng.random_range(1..=50usize);
        let p = rng.random_range(0.05..0.95);
        let system = System::orientation(p, 2).unwrap();
        let w = ProfileVector::window(n).unwrap();
        let exact = exact_window_coefficient(&g, n, p).unwrap();
        let mc = coefficient(
            &system,
            &g,
            &w,
            &w,
            Estimator::monte_carlo(100_000, 1000 + i),
        )
        .unwrap();
        let z = (mc.value - exact).abs() / mc.stderr.max(1e-300);
        ensure(mc.value == exact || z <= 4.0, || {
            format!(
                "g={g} n={n} p={p:.3}: exact {exact} mc {} ± {}",
                mc.value, mc.stderr
            )
        })?;
        if mc.stderr > 0.0 {
            worst = worst.max(z);
        }
        let bound = g.len() as f64 / (2.0 * n as f64);
        ensure(1.0 - exact <= bound + 1e-15, || {
            format!("g={g} n={n}: defect {} > {bound}", 1.0 - exact)
        })?;
    }
    Ok(format!("50 configs, worst |z| = {worst:.2}"))
}

fn orientation_decay() -> Check {
    let word = |len: usize| GroupWord::from_letters(2, &vec![1; len]).unwrap();
    let mut prev = f64::INFINITY;
    for len in 1..=20 {
        let v = exact_gaussian_bound(&word(len), 0.7).unwrap();
        ensure(v < prev, || {
            format!("not decreasing at L={len}: {v} >= {prev}")
        })?;
        prev = v;
    }
    // binomial sum evaluated independently
    ensure((prev - 0.041328486602344804).abs() < 1e-12, || {
        format!("L=20 value {prev}")
    })?;
    ensure(prev < 0.05, || format!("L=20 value {prev} >= 0.05"))?;
    let flat = exact_gaussian_bound(&word(20), 0.5).unwrap();
    ensure(flat > prev, || {
        format!("p=0.5 value {flat} <= p=0.7 value {prev}")
    })?;
    Ok(format!("L=20: p=0.7 -> {prev:.6}, p=0.5 -> {flat:.6}"))
}

fn gaussian_window() -> Check {
    let mut worst_z: f64 = 0.0;
    let mut worst_q: f64 = 0.0;
    let mut seed = 500;
    for sigma in [0.5, 1.0, 2.0, 3.0, 5.0] {
        for n in [1usize, 2, 5, 10, 100] {
            let closed = gaussian_window_coefficient(sigma, n).unwrap();
            let quad = gaussian_window_coefficient_quadrature(sigma, n).unwrap();
            worst_q = worst_q.max((closed - quad).abs());
            ensure((closed - quad).abs() <= 1e-9, || {
                format!("σ={sigma} n={n}: closed {closed} quadrature {quad}")
            })?;
            ensure(closed <= 1.0, || {
                format!("σ={sigma} n={n}: value {closed} > 1")
            })?;
            seed += 1;
            let normal = Normal::new(0.0, sigma).unwrap();
            let width = 2.0 * n as f64;
            let mc = skewlab::mc::run(1_000_000, seed, 4, |rng| {
                let x: f64 = normal.sample(rng);
                (width - x.abs()).max(0.0) / width
            });
            let z = (mc.mean - closed).abs() / mc.stderr;
            worst_z = worst_z.max(z);
            ensure(z <= 4.0, || {
                format!(
                    "σ={sigma} n={n}: closed {closed} mc {} ± {}",
                    mc.mean, mc.stderr
                )
            })?;
            if n as f64 / sigma >= 20.0 {
                let asym = 1.0 - sigma / (n as f64 * (2.0 * PI).sqrt());
                let defect_ratio = (1.0 - closed) / (1.0 - asym);
                ensure((closed - asym).abs() <= 0.02 * asym, || {
                    format!("σ={sigma} n={n}: {closed} vs asymptotic {asym}")
                })?;
                ensure((defect_ratio - 1.0).abs() <= 0.02, || {
                    format!("σ={sigma} n={n}: defect ratio {defect_ratio}")
                })?;
            }
        }
    }
    Ok(format!(
        "25 grid points, |closed-quad| ≤ {worst_q:.1e}, worst MC |z| = {worst_z:.2}"
    ))
}

fn cauchy_profile() -> Check {
    for x in [0.0, 1.0, 5.0, 20.0] {
        let k = cauchy_kernel_quadrature(x);
        ensure((k * (4.0 + x * x) - 2.0 * PI).abs() <= 1e-8, || {
            format!("x={x}: K·(4+x²) = {}", k * (4.0 + x * x))
        })?;
    }
    let values: Vec<f64> = [0.0, 1.0, 2.0, 4.0, 8.0]
        .iter()
        .map(|&s| cauchy_coefficient(s).unwrap())
        .collect();
    ensure(values.windows(2).all(|w| w[1] < w[0]), || {
        format!("not decreasing: {values:?}")
    })?;
    // normal expectation of 2π/(4+x²) at σ=2, computed independently
    ensure((values[2] - 1.029939016786008).abs() < 1e-9, || {
        format!("σ=2 value {}", values[2])
    })?;
    Ok(format!("coefficients {values:.4?}"))
}

fn gram_functor() -> Check {
    let words = ball(5, 2).unwrap();
    let sys = gram_matrix(&words).unwrap();
    let min_eig = sys.min_eigenvalue();
    ensure(min_eig >= -1e-8, || format!("min eigenvalue {min_eig}"))?;
    let recon = sys.reconstruction_error();
    ensure(recon <= 1e-10, || format!("reconstruction error {recon}"))?;

    let subset: Vec<GroupWord> = ["a", "ab", "abA", "B", "Ba", "aab"]
        .iter()
        .map(|s| GroupWord::parse(s, 2).unwrap())
        .collect();
    let sys = gram_matrix(&subset).unwrap();
    let d = subset.len();
    let n = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut acc = vec![0.0; d * d];
    for _ in 0..n {
        let x = sys.sample_with(&mut rng);
        for i in 0..d {
            for j in 0..d {
                acc[i * d + j] += x[i] * x[j];
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let g = sys.gram();
            let emp = acc[i * d + j] / n as f64;
            // Var(X_i X_j) = Σii Σjj + Σij² for centered normals
            let se = ((g[(i, i)] * g[(j, j)] + g[(i, j)].powi(2)) / n as f64).sqrt();
            let z = (emp - g[(i, j)]).abs() / se;
            worst = worst.max(z);
            ensure(z <= 4.0, || {
                format!("entry ({i},{j}): {emp} vs {}", g[(i, j)])
            })?;
        }
    }
    Ok(format!(
        "ball(5): {} words, λ_min = {min_eig:.2e}, recon = {recon:.1e}; covariance worst |z| = {worst:.2}",
        words.len()
    ))
}

fn hs_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut worst: f64 = 0.0;
    // Real orthogonal U and real ξ, where ⟨Uξ,ξ⟩ is real: the identity as
    // written, 2(1 - Re(⟨Uξ,ξ⟩²)), evaluated literally.
    for _ in 0..500 {
        let dim = rng.random_range(2..=16);
        let u = FiniteUnitary::random_orthogonal(dim, &mut rng);
        let xi = random_real_unit_vector(dim, &mut rng);
        let c = inner(&u.apply(&xi), &xi);
        let lhs = projection_defect(&u, &xi).unwrap();
        let rhs = 2.0 * (1.0 - (c * c).re);
        worst = worst.max((lhs - rhs).abs());
        ensure((lhs - rhs).abs() <= 1e-10, || {
            format!("real dim {dim}: {lhs} vs {rhs}")
        })?;
    }
    // Complex Haar U and complex ξ: the general form 2(1 - |⟨Uξ,ξ⟩|²).
    for _ in 0..500 {
        let dim = rng.random_range(2..=16);
        let u = FiniteUnitary::random(dim, &mut rng);
        let xi = random_unit_vector(dim, &mut rng);
        let lhs = projection_defect(&u, &xi).unwrap();
        let rhs = projection_defect_formula(&u, &xi).unwrap();
        worst = worst.max((lhs - rhs).abs());
        ensure((lhs - rhs).abs() <= 1e-10, || {
            format!("complex dim {dim}: {lhs} vs {rhs}")
        })?;
    }
    let u = FiniteUnitary::rotation(2, PI / 4.0).unwrap();
    let e1 = nalgebra::DVector::from_vec(vec![
        num_complex::Complex64::new(1.0, 0.0),
        num_complex::Complex64::new(0.0, 0.0),
    ]);
    let rot = projection_defect(&u, &e1).unwrap();
    ensure((rot - 1.0).abs() <= 1e-12, || {
        format!("rotation defect {rot}")
    })?;
    Ok(format!(
        "500 real + 500 complex trials, max |Δ| = {worst:.1e}; rotation π/4 -> {rot:.15}"
    ))
}

fn run_cli(args: &[&str], out: &std::path::Path) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_skewlab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || {
        format!("{args:?} exited with {status}")
    })?;
    std::fs::read(out).map_err(|e| e.to_string())
}

fn cli_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 6] = [
        &["decay", "--seed", "1"],
        &[
            "decay",
            "--method",
            "monte-carlo",
            "--max-radius",
            "6",
            "--samples",
            "20000",
            "--workers",
            "3",
            "--seed",
            "5",
        ],
        &[
            "window",
            "--system",
            "gaussian",
            "--n",
            "10,100,1000",
            "--seed",
            "2",
        ],
        &["window", "--max-radius", "4", "--seed", "2"],
        &["gram", "--max-radius", "3", "--seed", "3"],
        &["hs", "--trials", "200", "--seed", "4"],
    ];
    let mut bytes = 0;
    for (i, args) in runs.iter().enumerate() {
        let a = run_cli(args, &dir.path().join(format!("{i}a.csv")))?;
        let b = run_cli(args, &dir.path().join(format!("{i}b.csv")))?;
        ensure(!a.is_empty(), || format!("{args:?}: empty output"))?;
        ensure(a == b, || format!("{args:?}: outputs differ"))?;
        bytes += a.len();
    }
    Ok(format!(
        "decay, window, gram, hs: {} runs byte-identical ({bytes} bytes)",
        runs.len()
    ))
}

fn symmetric_difference_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let system = if i % 2 == 0 {
            System::orientation(rng.random_range(0.1..0.9), 2).unwrap()
        } else {
            System::gaussian(2).unwrap()
        };
        let g = random_word(&mut rng, 10);
        let lo = rng.random_range(-20.0..20.0);
        let len = rng.random_range(0.5..30.0);
        let set = ProfileVector::indicator(Interval::new(lo, lo + len).unwrap());
        let exact = symmetric_difference(&system, &g, &set).unwrap();
        let mc = symmetric_difference_mc(&system, &g, &set, 200_000, 2000 + i, 2).unwrap();
        let z = (mc.value - exact).abs() / mc.stderr.max(1e-300);
        ensure(mc.value == exact || z <= 4.0, || {
            format!(
                "{system} g={g} I=[{lo:.2},{:.2}]: {exact} vs {} ± {}",
                lo + len,
                mc.value,
                mc.stderr
            )
        })?;
        if mc.stderr > 0.0 {
            worst = worst.max(z);
        }
    }
    Ok(format!("20 configs, worst |z| = {worst:.2}"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cocycle chain rule", 10, chain_rule),
        ("skew-product action law", 10, action_law),
        (
            "window coefficient, exact vs Monte Carlo",
            60,
            window_exact_vs_mc,
        ),
        ("orientation-system decay", 5, orientation_decay),
        ("Gaussian window coefficient", 60, gaussian_window),
        ("Cauchy profile", 5, cauchy_profile),
        ("Gram matrix and Gaussian sampling", 60, gram_functor),
        ("projection-defect identity", 10, hs_identity),
        ("CLI determinism", 120, cli_determinism),
        (
            "symmetric-difference identity",
            60,
            symmetric_difference_identity,
        ),
    ];
    let mut failures = 0;
    for (idx, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!(
            "[{tag}] criterion {:>2}: {name} ({:.2} s / {budget} s) — {detail}",
            idx + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

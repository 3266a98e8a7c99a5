//! Invariant suites run by the `selftest` command.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gaussian::{
    cauchy_kernel_quadrature, gaussian_window_coefficient, gaussian_window_coefficient_quadrature,
    gram_matrix,
};
use crate::group::{ball, letters_of_rank, GroupWord};
use crate::hs::{
    projection_defect_formula, projection_defect_signed, random_unit_vector, FiniteUnitary,
};
use crate::lab::{coefficient, Estimator, System};
use crate::orientation::{
    group_cocycle, path_cocycle, skew_step, Orientation, OrientationMeasure, SkewPoint,
};
use crate::pathsum::PathSumLaw;
use crate::profile::ProfileVector;
use crate::tree::{act_on_edge, geodesic, median, CanonicalEdge};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Fault {
    /// Flips the sign of `P` inside the projection defect.
    ProjectionDefectSign,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub result: Result<(), String>,
    pub elapsed: Duration,
}

type Suite = fn(Option<Fault>) -> Result<(), String>;

const SUITES: &[(&str, Suite)] = &[
    ("group-axioms", group_axioms),
    ("tree-bfs-oracle", tree_bfs_oracle),
    ("cocycle-chain-rule", cocycle_chain_rule),
    ("skew-action-law", skew_action_law),
    ("path-sum-law", path_sum_law_suite),
    ("gaussian-closed-forms", gaussian_closed_forms),
    ("gram-psd", gram_psd),
    ("hs-projection-defect", hs_projection_defect),
    ("exact-vs-monte-carlo", exact_vs_mc),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

pub fn run_all(fault: Option<Fault>) -> Vec<SuiteOutcome> {
    SUITES
        .iter()
        .map(|(name, suite)| {
            let start = Instant::now();
            let result = suite(fault);
            SuiteOutcome {
                name,
                result,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(0x5e1f_7e57);
    r.set_stream(stream);
    r
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> GroupWord {
    let len = rng.random_range(0..=max_len);
    GroupWord::random(rank, len, rng).expect("valid rank")
}

fn group_axioms(_: Option<Fault>) -> Result<(), String> {
    let mut r = rng(1);
    let e = GroupWord::identity(2).unwrap();
    for _ in 0..1000 {
        let (a, b, c) = (
            random_word(&mut r, 2, 12),
            random_word(&mut r, 2, 12),
            random_word(&mut r, 2, 12),
        );
        let ab_c = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let a_bc = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        ensure(ab_c == a_bc, || {
            format!("associativity fails for {a}, {b}, {c}")
        })?;
        ensure(
            e.multiply(&a).unwrap() == a && a.multiply(&e).unwrap() == a,
            || format!("identity law fails for {a}"),
        )?;
        ensure(a.multiply(&a.inverse()).unwrap().is_identity(), || {
            format!("inverse law fails for {a}")
        })?;
        let (dab, dbc, dac) = (
            a.distance(&b).unwrap(),
            b.distance(&c).unwrap(),
            a.distance(&c).unwrap(),
        );
        ensure(dac <= dab + dbc, || {
            format!("triangle inequality fails for {a}, {b}, {c}")
        })?;
        ensure(
            c.multiply(&a)
                .unwrap()
                .distance(&c.multiply(&b).unwrap())
                .unwrap()
                == dab,
            || format!("left multiplication by {c} is not an isometry"),
        )?;
    }
    Ok(())
}

/// Shortest paths by breadth-first search on an explicit ball.
fn bfs_path(from: &GroupWord, to: &GroupWord, radius: usize) -> Vec<GroupWord> {
    let rank = from.rank();
    let vertices = ball(radius, rank).unwrap();
    let inside: std::collections::HashSet<_> = vertices.iter().cloned().collect();
    let mut prev: HashMap<GroupWord, GroupWord> = HashMap::new();
    let mut queue = VecDeque::from([from.clone()]);
    prev.insert(from.clone(), from.clone());
    while let Some(v) = queue.pop_front() {
        if &v == to {
            break;
        }
        for l in letters_of_rank(rank) {
            let u = v.times_letter(l);
            if inside.contains(&u) && !prev.contains_key(&u) {
                prev.insert(u.clone(), v.clone());
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![to.clone()];
    let mut cur = to.clone();
    while &cur != from {
        cur = prev[&cur].clone();
        path.push(cur.clone());
    }
    path.reverse();
    path
}

fn tree_bfs_oracle(_: Option<Fault>) -> Result<(), String> {
    let mut r = rng(2);
    for _ in 0..200 {
        let x = random_word(&mut r, 2, 3);
        let y = random_word(&mut r, 2, 3);
        let z = random_word(&mut r, 2, 3);
        let path = geodesic(&x, &y).unwrap();
        let oracle = bfs_path(&x, &y, 3);
        ensure(path.vertices() == oracle, || {
            format!("geodesic {x} -> {y} disagrees with BFS")
        })?;
        ensure(path.reversed() == geodesic(&y, &x).unwrap(), || {
            format!("geodesic reversal fails for {x}, {y}")
        })?;
        let m = median(&x, &y, &z).unwrap();
        for (p, q) in [(&x, &y), (&y, &z), (&x, &z)] {
            ensure(bfs_path(p, q, 3).contains(&m), || {
                format!("median {m} of {x}, {y}, {z} is off the geodesic {p} -> {q}")
            })?;
        }
        let g = random_word(&mut r, 2, 6);
        let h = random_word(&mut r, 2, 6);
        let edge = CanonicalEdge::to_vertex(
            &GroupWord::random(2, 1 + r.random_range(0..6), &mut r).unwrap(),
        )
        .unwrap();
        let (e1, f1) = act_on_edge(&h, &edge).unwrap();
        let (e2, f2) = act_on_edge(&g, &e1).unwrap();
        let (e3, f3) = act_on_edge(&g.multiply(&h).unwrap(), &edge).unwrap();
        ensure(e2 == e3 && f1 * f2 == f3, || {
            format!("edge action law fails for {g}, {h}")
        })?;
    }
    Ok(())
}

fn cocycle_chain_rule(_: Option<Fault>) -> Result<(), String> {
    let mut r = rng(3);
    for p in [0.3, 0.5, 0.7] {
        let m = OrientationMeasure::new(p, 2).unwrap();
        for _ in 0..700 {
            let omega = Orientation::new(r.next_u64(), m);
            let g = random_word(&mut r, 2, 8);
            let h = random_word(&mut r, 2, 8);
            let lhs = group_cocycle(&omega, &g.multiply(&h).unwrap()).unwrap();
            let rhs = group_cocycle(&omega, &g).unwrap()
                + group_cocycle(&omega.pushforward(&g.inverse()), &h).unwrap();
            ensure(lhs == rhs, || {
                format!("chain rule fails for g={g}, h={h}, p={p}")
            })?;
            let z = random_word(&mut r, 2, 8);
            let add = path_cocycle(&omega, &g, &z).unwrap();
            let split =
                path_cocycle(&omega, &g, &h).unwrap() + path_cocycle(&omega, &h, &z).unwrap();
            ensure(add == split, || {
                format!("additivity fails for {g}, {h}, {z}")
            })?;
        }
    }
    Ok(())
}

fn skew_action_law(_: Option<Fault>) -> Result<(), String> {
    let mut r = rng(4);
    let m = OrientationMeasure::new(0.7, 2).unwrap();
    let probe = ball(4, 2).unwrap();
    let edges: Vec<_> = probe.iter().filter_map(CanonicalEdge::to_vertex).collect();
    for _ in 0..500 {
        let g = random_word(&mut r, 2, 8);
        let h = random_word(&mut r, 2, 8);
        let pt = SkewPoint::new(
            Orientation::new(r.next_u64(), m),
            r.random_range(-5..5) as f64,
        );
        let lhs = skew_step(&g.multiply(&h).unwrap(), &pt).unwrap();
        let rhs = skew_step(&g, &skew_step(&h, &pt).unwrap()).unwrap();
        ensure(lhs.t == rhs.t, || {
            format!("action law (t) fails for {g}, {h}")
        })?;
        ensure(lhs.orientation.agrees_on(&rhs.orientation, &edges), || {
            format!("action law (ω) fails for {g}, {h}")
        })?;
    }
    Ok(())
}

fn path_sum_law_suite(_: Option<Fault>) -> Result<(), String> {
    for len in 0..=12usize {
        for p in [0.3, 0.5, 0.7] {
            let law = PathSumLaw::new(len, p).unwrap();
            ensure((law.total_mass() - 1.0).abs() < 1e-12, || {
                format!("mass L={len} p={p}")
            })?;
            let mut direct: HashMap<i64, f64> = HashMap::new();
            for mask in 0u32..(1 << len) {
                let k = mask.count_ones() as i32;
                *direct.entry(len as i64 - 2 * k as i64).or_default() +=
                    p.powi(k) * (1.0 - p).powi(len as i32 - k);
            }
            for (s, pr) in direct {
                ensure((law.prob(s) - pr).abs() < 1e-13, || {
                    format!("pmf L={len} p={p} s={s}")
                })?;
            }
        }
    }
    Ok(())
}

fn gaussian_closed_forms(_: Option<Fault>) -> Result<(), String> {
    for sigma in [0.5, 1.0, 2.0, 3.0, 5.0] {
        for n in [1usize, 2, 5, 10, 100] {
            let a = gaussian_window_coefficient(sigma, n).unwrap();
            let b = gaussian_window_coefficient_quadrature(sigma, n).unwrap();
            ensure((a - b).abs() < 1e-9, || {
                format!("window σ={sigma} n={n}: {a} vs {b}")
            })?;
        }
    }
    for x in [0.0, 1.0, 5.0, 20.0] {
        let k = cauchy_kernel_quadrature(x);
        ensure((k * (4.0 + x * x) - 2.0 * PI).abs() < 1e-8, || {
            format!("cauchy kernel x={x}")
        })?;
    }
    Ok(())
}

fn gram_psd(_: Option<Fault>) -> Result<(), String> {
    let sys = gram_matrix(&ball(4, 2).unwrap()).map_err(|e| e.to_string())?;
    let min = sys.min_eigenvalue();
    ensure(min >= -1e-8, || format!("min eigenvalue {min}"))?;
    let err = sys.reconstruction_error();
    ensure(err <= 1e-10, || {
        format!("cholesky reconstruction error {err}")
    })
}

fn hs_projection_defect(fault: Option<Fault>) -> Result<(), String> {
    let sign = if fault == Some(Fault::ProjectionDefectSign) {
        -1.0
    } else {
        1.0
    };
    let mut r = rng(8);
    for trial in 0..500 {
        let dim = r.random_range(2..=16);
        let u = FiniteUnitary::random(dim, &mut r);
        let xi = random_unit_vector(dim, &mut r);
        let lhs = projection_defect_signed(&u, &xi, sign).map_err(|e| e.to_string())?;
        let rhs = projection_defect_formula(&u, &xi).map_err(|e| e.to_string())?;
        ensure((lhs - rhs).abs() <= 1e-10, || {
            format!(
                "projection-defect identity ‖α_U(P)-P‖² = 2(1-|⟨Uξ,ξ⟩|²) fails at trial {trial}: {lhs} vs {rhs}"
            )
        })?;
    }
    Ok(())
}

fn exact_vs_mc(_: Option<Fault>) -> Result<(), String> {
    let mut r = rng(9);
    let systems = [
        System::orientation(0.7, 2).unwrap(),
        System::gaussian(2).unwrap(),
    ];
    for (i, sys) in systems.iter().enumerate() {
        for j in 0..4u64 {
            let g = random_word(&mut r, 2, 6);
            let n = r.random_range(1..=8);
            let w = ProfileVector::window(n).unwrap();
            let exact =
                coefficient(sys, &g, &w, &w, Estimator::Exact).map_err(|e| e.to_string())?;
            let mc = coefficient(
                sys,
                &g,
                &w,
                &w,
                Estimator::monte_carlo(20_000, 100 * i as u64 + j),
            )
            .map_err(|e| e.to_string())?;
            ensure(exact.agrees_with(&mc, 5.0), || {
                format!(
                    "{sys} g={g} n={n}: exact {} vs mc {} ± {}",
                    exact.value, mc.value, mc.stderr
                )
            })?;
        }
    }
    Ok(())
}

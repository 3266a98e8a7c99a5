// A random orientation of the tree, the integer cocycle it carries, and
// the skew-product step on Ω(T) × ℝ.

use skewlab::group::GroupWord;
use skewlab::orientation::{group_cocycle, skew_step};
use skewlab::{Orientation, OrientationMeasure, PathSumLaw, SkewPoint};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let measure = OrientationMeasure::new(0.7, 2)?;
    let omega = Orientation::new(2024, measure);
    let g = GroupWord::parse("abAb", 2)?;
    let h = GroupWord::parse("BBa", 2)?;

    let lhs = group_cocycle(&omega, &g.multiply(&h)?)?;
    let rhs = group_cocycle(&omega, &g)? + group_cocycle(&omega.pushforward(&g.inverse()), &h)?;
    println!("c(gh, ω) = {lhs},  c(g, ω) + c(h, g⁻¹ω) = {rhs}");

    let pt = SkewPoint::new(omega, 0.5);
    let composed = skew_step(&g, &skew_step(&h, &pt)?)?;
    let direct = skew_step(&g.multiply(&h)?, &pt)?;
    println!(
        "β_g β_h (ω, 0.5) has t = {}, β_gh (ω, 0.5) has t = {}",
        composed.t, direct.t
    );

    // the displacement along a geodesic of length L is L - 2·Bin(L, p)
    let law = PathSumLaw::new(g.len(), measure.p())?;
    let mut counts = std::collections::BTreeMap::new();
    let trials = 10_000u64;
    for seed in 0..trials {
        let moved = skew_step(&g, &SkewPoint::new(Orientation::new(seed, measure), 0.0))?;
        *counts.entry(moved.t as i64).or_insert(0u64) += 1;
    }
    println!("  S   law       empirical");
    for (s, prob) in law.support() {
        let freq = *counts.get(&s).unwrap_or(&0) as f64 / trials as f64;
        println!("{s:>3}   {prob:.4}    {freq:.4}");
    }
    println!("mean {:.3} (= L(1-2p))", law.mean());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Koopman coefficients of window vectors on the orientation system:
// exact binomial evaluation next to a Monte Carlo run of the dynamics.

use skewlab::group::GroupWord;
use skewlab::lab::{coefficient, symmetric_difference, symmetric_difference_mc};
use skewlab::{Estimator, Interval, ProfileVector, System};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let system = System::orientation(0.7, 2)?;
    println!(
        "{:>8} {:>4} {:>10} {:>10} {:>9}",
        "g", "n", "exact", "mc", "stderr"
    );
    for (word, n) in [("a", 1), ("abAB", 3), ("abbaB", 5), ("aaaaaaaa", 10)] {
        let g = GroupWord::parse(word, 2)?;
        let xi = ProfileVector::window(n)?;
        let exact = coefficient(&system, &g, &xi, &xi, Estimator::Exact)?;
        let mc = coefficient(&system, &g, &xi, &xi, Estimator::monte_carlo(100_000, 1))?;
        println!(
            "{word:>8} {n:>4} {:>10.6} {:>10.6} {:>9.2e}",
            exact.value, mc.value, mc.stderr
        );
    }

    let a = ProfileVector::indicator(Interval::new(-2.0, 3.0)?);
    let g = GroupWord::parse("abA", 2)?;
    let exact = symmetric_difference(&system, &g, &a)?;
    let mc = symmetric_difference_mc(&system, &g, &a, 200_000, 7, 2)?;
    println!(
        "μ(gA Δ A) for A = Ω × [-2, 3]: {exact:.6} exact, {:.6} ± {:.1e} by MC",
        mc.value, mc.stderr
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

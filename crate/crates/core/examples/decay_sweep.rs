// Shell-by-shell decay of a coefficient, written as CSV to stdout.

use skewlab::lab::{decay_sweep, write_decay_csv};
use skewlab::{Estimator, ProfileVector, System};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let profile = ProfileVector::gaussian();
    for p in [0.5, 0.7] {
        let curve = decay_sweep(
            &System::orientation(p, 2)?,
            &profile,
            20,
            4,
            Estimator::Exact,
            0,
        )?;
        let tail: Vec<String> = curve.rows[15..]
            .iter()
            .map(|r| format!("{:.4}", r.max))
            .collect();
        println!(
            "p = {p}: max coefficient on shells 16..20 = {}",
            tail.join(", ")
        );
    }
    let curve = decay_sweep(
        &System::gaussian(2)?,
        &ProfileVector::cauchy(),
        5,
        8,
        Estimator::monte_carlo(20_000, 3),
        3,
    )?;
    write_decay_csv(&curve, std::io::stdout().lock())?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

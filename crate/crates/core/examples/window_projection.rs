// Windows discretized on a grid: the Koopman operator of an integer shift
// becomes a cyclic permutation, and the projection onto the normalized
// window moves exactly as the window coefficient predicts.

use num_complex::Complex64;
use skewlab::hs::{projection_defect, CVector};
use skewlab::FiniteUnitary;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (half, n) = (40usize, 10usize);
    let dim = 2 * half;
    let scale = 1.0 / (2.0 * n as f64).sqrt();
    // grid cell k covers [k - half, k - half + 1)
    let window = CVector::from_fn(dim, |k, _| {
        let t = k as f64 - half as f64;
        Complex64::new(
            if t >= -(n as f64) && t < n as f64 {
                scale
            } else {
                0.0
            },
            0.0,
        )
    });
    for s in [0usize, 1, 5, 10, 20, 25] {
        let shift = nalgebra::DMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(if i == (j + s) % dim { 1.0 } else { 0.0 }, 0.0)
        });
        let u = FiniteUnitary::new(shift)?;
        let c = ((2 * n) as f64 - s as f64).max(0.0) / (2 * n) as f64;
        println!(
            "shift {s:>2}: ‖UPU* - P‖² = {:.12}, 2(1 - c²) = {:.12}",
            projection_defect(&u, &window)?,
            2.0 * (1.0 - c * c)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

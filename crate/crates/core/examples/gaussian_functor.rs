// The Gaussian system: Gromov-product covariance, its Cholesky factor,
// joint samples, and the closed-form window coefficient.

use skewlab::gaussian::{
    gaussian_window_coefficient, gaussian_window_coefficient_quadrature, gram_matrix,
};
use skewlab::group::{ball, GroupWord};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let words = ball(4, 2)?;
    let sys = gram_matrix(&words)?;
    println!(
        "ball(4): {} words, min eigenvalue {:.2e}, jitter {:e}, factor error {:.1e}",
        words.len(),
        sys.min_eigenvalue(),
        sys.jitter(),
        sys.reconstruction_error()
    );

    let small: Vec<GroupWord> = ["a", "ab", "abA", "b"]
        .iter()
        .map(|s| GroupWord::parse(s, 2))
        .collect::<Result<_, _>>()?;
    let sys = gram_matrix(&small)?;
    println!(
        "Gram matrix of {:?}:{}",
        small.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        sys.gram()
    );
    println!("one joint sample: {:?}", sys.sample(1).as_slice());

    println!(
        "{:>5} {:>5} {:>14} {:>14} {:>14}",
        "σ", "n", "closed form", "quadrature", "1-σ/(n√2π)"
    );
    for (sigma, n) in [(1.0, 1), (2.0, 5), (3.0, 100), (5.0, 100)] {
        let closed = gaussian_window_coefficient(sigma, n)?;
        let quad = gaussian_window_coefficient_quadrature(sigma, n)?;
        let asym = 1.0 - sigma / (n as f64 * (2.0 * std::f64::consts::PI).sqrt());
        println!("{sigma:>5} {n:>5} {closed:>14.10} {quad:>14.10} {asym:>14.10}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// The profile h(t) = 1/(1+t²): its autocorrelation 2π/(4+x²) and the
// coefficient E[K(X)] with X ~ N(0, σ²).

use skewlab::gaussian::{cauchy_coefficient, cauchy_kernel, cauchy_kernel_quadrature};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for x in [0.0, 1.0, 5.0, 20.0] {
        println!(
            "K({x:>4}) = {:.12} closed, {:.12} quadrature",
            cauchy_kernel(x),
            cauchy_kernel_quadrature(x)
        );
    }
    for sigma in [0.0, 1.0, 2.0, 4.0, 8.0, 16.0] {
        println!(
            "σ = {sigma:>4}: coefficient {:.6}",
            cauchy_coefficient(sigma)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

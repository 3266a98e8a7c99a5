// Window vectors become almost invariant on a fixed ball as they widen.

use skewlab::lab::{almost_invariant_sweep, write_sweep_csv};
use skewlab::System;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sizes = [10, 50, 100, 500, 1000];
    for system in [System::orientation(0.7, 2)?, System::gaussian(2)?] {
        let table = almost_invariant_sweep(&system, 4, &sizes, 16, 0)?;
        write_sweep_csv(&table, std::io::stdout().lock())?;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Rank-one projections under the adjoint action U·P·U*.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewlab::hs::{
    adjoint_act, hs_coefficient, inner, projection_defect, projection_defect_formula,
    random_unit_vector, rank_one, trace, CVector,
};
use skewlab::FiniteUnitary;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for dim in [2, 5, 16] {
        let u = FiniteUnitary::random(dim, &mut rng);
        let xi = random_unit_vector(dim, &mut rng);
        let p = rank_one(&xi, &xi)?;
        println!(
            "dim {dim:>2}: Tr P = {:.3}, Tr UPU* = {:.3}, defect {:.12} vs 2(1-|⟨Uξ,ξ⟩|²) = {:.12}",
            trace(&p).re,
            trace(&adjoint_act(&u, &p)?).re,
            projection_defect(&u, &xi)?,
            projection_defect_formula(&u, &xi)?
        );
    }

    let e1 = CVector::from_vec(vec![1.0.into(), 0.0.into()]);
    for theta in [PI / 8.0, PI / 4.0, PI / 2.0] {
        let u = FiniteUnitary::rotation(2, theta)?;
        println!(
            "rotation {theta:.4}: defect {:.15}",
            projection_defect(&u, &e1)?
        );
    }

    // coefficients of a rank-one operator follow the vector coefficient
    let d = 32;
    let eta = random_unit_vector(d, &mut rng);
    let t = rank_one(&eta, &eta)?;
    for l in [0, 1, 4, 16] {
        let phases: Vec<f64> = (0..d)
            .map(|k| 2.0 * PI * (l * k * k) as f64 / d as f64)
            .collect();
        let u = FiniteUnitary::diagonal_phases(&phases);
        println!(
            "L = {l:>2}: |⟨Uη,η⟩| = {:.4}, |Tr(T* UTU*)| = {:.4}",
            inner(&u.apply(&eta), &eta).norm(),
            hs_coefficient(&t, &t, &u)?.norm()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// Reduced words, balls and geodesics in the Cayley tree of F₂.

use skewlab::group::{ball, shell_size, GroupWord};
use skewlab::tree::{act_on_edge, geodesic, median};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = GroupWord::parse("abAB", 2)?;
    let y = GroupWord::parse("abba", 2)?;
    let z = GroupWord::parse("a2 b^-1", 2)?;
    println!("x = {x}, y = {y}, z = {z}");
    println!("xy = {}, x⁻¹ = {}", x.multiply(&y)?, x.inverse());
    println!(
        "d(x, y) = {} (common prefix {})",
        x.distance(&y)?,
        x.common_prefix_len(&y)
    );
    println!("median(x, y, z) = {}", median(&x, &y, &z)?);

    let path = geodesic(&x, &y)?;
    for (edge, travel) in &path.steps {
        let dir = if *travel > 0 {
            "away from root"
        } else {
            "toward root"
        };
        println!("  {} -> {}  ({dir})", edge.parent(), edge.child());
    }
    let (img, flip) = act_on_edge(&GroupWord::parse("BA", 2)?, &path.steps[0].0)?;
    println!(
        "BA moves the first edge to {} -> {} (flip {flip})",
        img.parent(),
        img.child()
    );

    for r in 0..=5 {
        println!(
            "|ball({r})| = {:>4}, |shell({r})| = {}",
            ball(r, 2)?.len(),
            shell_size(2, r)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

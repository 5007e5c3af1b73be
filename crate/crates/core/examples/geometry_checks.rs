//! Inequality checkers, norms, axes and the two cancellation-controlled
//! decompositions in the free group.
//!
//! ```bash
//! cargo run --example geometry_checks
//! ```

use uniconj::geometry::{self, GeometryError};
use uniconj::word::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = |s: &str| Word::parse(s, 2);

    let (a, b, c, d) = (w("1")?, w("a")?, w("ab")?, w("b")?);
    println!(
        "rectangle 1, a, ab, b: {}",
        geometry::rectangle_check(&a, &b, &c, &d, 0.0)
    );

    let chain = [w("1")?, w("ab")?, w("abab")?, w("ababaa")?];
    println!(
        "geodesic chain: {}",
        geometry::chain_bound_check(&chain, 0.0)?
    );

    match geometry::triple_length_bound_check(&w("ab")?, &w("a")?, &w("Ab")?, 1.0, 0.0) {
        Err(GeometryError::Precondition(why)) => println!("triple rejected: {why}"),
        other => println!("triple: {other:?}"),
    }
    println!(
        "triple with long middle: {}",
        geometry::triple_length_bound_check(&w("ab")?, &w("bbb")?, &w("ab")?, 1.0, 0.0)?
    );

    let g = w("abA")?;
    println!(
        "\n||{g}|| = {}, a on its axis: {}, b on its axis: {}",
        geometry::norm(&g),
        geometry::is_on_axis(&g, &w("a")?),
        geometry::is_on_axis(&g, &w("b")?)
    );
    println!(
        "power defect for {g}, s = t = 1, mu = 1: {}",
        geometry::power_defect_check(&g, 1, 1, 1)?
    );

    let (g, h) = (w("a")?, w("baB")?);
    let d = geometry::axes_distance(&g, &h, g.len() + h.len())?;
    println!(
        "axes of {g} and {h}: distance {d}, bound {}",
        geometry::axes_bound(&g, &h)
    );
    if let Err(e) = geometry::axes_distance(&g, &h, 2) {
        println!("with radius 2: {e}");
    }

    let (z, b) = (w("ab")?, w("b")?);
    let x = geometry::conjugate_power_decompose(&z, &b)?;
    println!(
        "\nz^-1 b^k z = x^-1 b^k x with x = {x}: {}",
        geometry::verify_power_decomposition(&z, &b, &x, 1.0, 10)
    );
    let (x, l) = geometry::conjugate_shift_decompose(&z, &w("a")?, &b, 3)?;
    println!(
        "shift decomposition for k = 3: x = {x:?}, l = {l}",
        x = x.to_string()
    );
    Ok(())
}

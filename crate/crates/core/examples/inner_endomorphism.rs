//! Recognizing inner endomorphisms, and refuting pointwise innerness on a ball.
//!
//! ```bash
//! cargo run --example inner_endomorphism
//! ```

use uniconj::whitehead::{inner_check, pointwise_inner_on_ball, Endomorphism, PointwiseVerdict};
use uniconj::word::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let z = Word::parse("aab", 2)?;
    let phi = Endomorphism::inner(2, &z);
    println!("phi = {phi}");
    println!(
        "inner_check recovers z = {:?}",
        inner_check(&phi).map(|g| g.to_string())
    );
    println!(
        "pointwise on radius 3: {:?}",
        pointwise_inner_on_ball(&phi, 3)?
    );

    for images in [["a", "bb"], ["a", "ba"], ["b", "a"]] {
        let phi = Endomorphism::new(
            images
                .iter()
                .map(|s| Word::parse(s, 2))
                .collect::<Result<_, _>>()?,
        )?;
        match pointwise_inner_on_ball(&phi, 1)? {
            PointwiseVerdict::Witness { h, image } => {
                println!("{phi}: {h} maps to {image}, not a conjugate")
            }
            PointwiseVerdict::AllConjugate { checked } => {
                println!("{phi}: all {checked} words keep their class")
            }
        }
    }
    Ok(())
}

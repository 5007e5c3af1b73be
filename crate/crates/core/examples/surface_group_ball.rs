//! Cayley balls of a small-cancellation presentation: the genus-2 surface
//! group, its Dehn algorithm and a thin-triangle estimate.
//!
//! ```bash
//! cargo run --release --example surface_group_ball
//! ```

use uniconj::geometry::{BallGraph, Metric, Presentation};
use uniconj::word::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = Presentation::surface(2);
    println!("{p}");
    println!(
        "piece ratio {} (small cancellation: {})",
        p.piece_ratio(),
        p.is_small_cancellation()
    );

    for s in ["abABcdCD", "cdCDabAB", "abABc", "aBAbcDCd"] {
        let w = Word::parse(s, 4)?;
        println!("Dehn({s}) = {:?}", p.dehn_normal_form(&w)?.to_string());
    }

    let ball = BallGraph::build(&p, 4)?;
    println!(
        "\nball of radius 4: {} vertices, spheres {:?}",
        ball.len(),
        ball.layer_sizes()
    );
    let x = Word::parse("abAB", 4)?;
    println!("|abAB| in the group = {}", ball.length(&x)?);

    let est = ball.delta_estimate();
    println!(
        "thin-triangle estimate at radius 4: delta = {} over {} triangles (truncated geodesics: {}, unresolved: {})",
        est.delta, est.triangles, est.sampled, est.exceeded
    );

    let text = "2\n# a one-relator group\naaabbb\n";
    let q = Presentation::parse(text)?;
    println!(
        "\nparsed {q}: small cancellation {}",
        q.is_small_cancellation()
    );
    Ok(())
}

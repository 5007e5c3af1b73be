//! The word criterion: evaluate every short reduced word on both tuples and
//! compare conjugacy classes. A failure is a certificate of non-uniformity.
//!
//! ```bash
//! cargo run --example word_criterion
//! ```

use uniconj::conjugacy::{equivalence_probe, word_criterion, Criterion, TuplePair};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tp = TuplePair::parse(2, "a,b", "a,BAbab")?;
    for l in 1..=3 {
        match word_criterion(&tp, l)? {
            Criterion::Pass { words_checked } => {
                println!("L = {l}: pass after {words_checked} words")
            }
            Criterion::Fail {
                witness,
                left_value,
                right_value,
                ..
            } => {
                println!("L = {l}: W = {witness} separates them: {left_value} vs {right_value}")
            }
        }
    }

    // the least failing length across a small family
    for w in ["ab", "bab", "aab", "baab"] {
        let right = format!(
            "a,{}",
            uniconj::word::Word::parse("b", 2)?.conjugate_by(&uniconj::word::Word::parse(w, 2)?)
        );
        let tp = TuplePair::parse(2, "a,b", &right)?;
        let report = equivalence_probe(&tp, 4)?;
        println!("w = {w}: {}", serde_json::to_string(&report)?);
    }
    Ok(())
}

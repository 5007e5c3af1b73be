//! The mixed Whitehead problem: one automorphism, one conjugator per block.
//!
//! ```bash
//! cargo run --release --example mixed_whitehead
//! ```

use uniconj::whitehead::{
    block_lengths, mixed_bfs_oracle, mixed_decide, BlockSystem, MixedMode, MixedOutcome,
};
use uniconj::word::parse_tuple;

fn blocks(text: &str) -> Result<BlockSystem, Box<dyn std::error::Error>> {
    let bs = text
        .split(';')
        .map(|b| parse_tuple(b, 2))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockSystem::new(2, bs)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("a,b;ab", "b,a;ba"),
        ("a,b", "a,BAbab"),
        ("a;b", "BaB;aba"),
        ("ab,b", "b,Ba"),
    ];
    for (l, r) in cases {
        let (u, v) = (blocks(l)?, blocks(r)?);
        let outcome = mixed_decide(&u, &v, &MixedMode::Empirical(3))?;
        let oracle = mixed_bfs_oracle(&u, &v, 4, 24)?.is_some();
        match &outcome {
            MixedOutcome::Yes {
                images,
                conjugators,
                ..
            } => {
                println!(
                "[{l}] -> [{r}]: yes, a -> {}, b -> {}, conjugators {:?} (search agrees: {oracle})",
                images[0],
                images[1],
                conjugators.iter().map(|g| g.to_string()).collect::<Vec<_>>()
            )
            }
            MixedOutcome::No { .. } => println!("[{l}] -> [{r}]: no (search agrees: {})", !oracle),
            MixedOutcome::Inconclusive { block, .. } => {
                println!("[{l}] -> [{r}]: inconclusive at block {block}")
            }
        }
    }

    // lengths from the constants engine are far too large to enumerate
    match block_lengths(&blocks("ab,b")?, &MixedMode::Paper) {
        Ok(c) => println!("paper lengths {c:?}"),
        Err(e) => println!("paper mode: {e}"),
    }
    Ok(())
}

//! Whitehead automorphisms, greedy minimization and the classical orbit
//! problem for tuples of cyclic words.
//!
//! ```bash
//! cargo run --example whitehead_orbits
//! ```

use uniconj::whitehead::{
    all_whitehead_auts, compose, minimize, orbit_decide_classical, whitehead_count,
};
use uniconj::word::{parse_tuple, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (one, two) = whitehead_count(2);
    println!("rank 2: {one} permutation automorphisms, {two} of the second kind");
    let auts = all_whitehead_auts(2)?;
    let x = Word::parse("ab", 2)?;
    for a in auts.iter().skip(8).take(4) {
        println!("{a}: {x} -> {}", a.apply(&x, 2)?);
    }

    for t in ["aab", "abaaB", "abAB", "aabbAB"] {
        let (m, seq) = minimize(&parse_tuple(t, 2)?, 2)?;
        println!(
            "minimize({t}) = {:?} after {} steps",
            m.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            seq.len()
        );
    }

    let pairs = [
        ("abAB", "aabb"),
        ("ab", "aab"),
        ("abAB", "aBAb"),
        ("aab,b", "ab,b"),
    ];
    for (s, t) in pairs {
        let (s_t, t_t) = (parse_tuple(s, 2)?, parse_tuple(t, 2)?);
        match orbit_decide_classical(&s_t, &t_t, 2)? {
            Some(seq) => {
                let phi = compose(&seq, 2);
                println!(
                    "({s}) -> ({t}) by {} automorphisms: a -> {}, b -> {}",
                    seq.len(),
                    phi.images()[0],
                    phi.images()[1]
                );
            }
            None => println!("({s}) and ({t}) lie in different orbits"),
        }
    }
    Ok(())
}

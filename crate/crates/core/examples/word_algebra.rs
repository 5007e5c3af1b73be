//! Words, free reduction, cyclic words and conjugacy in a free group.
//!
//! ```bash
//! cargo run --example word_algebra
//! ```

use uniconj::word::{is_conjugate, primitive_root, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // lowercase letters are generators, uppercase their inverses
    let g = Word::parse("Bbaab", 2)?;
    println!("Bbaab reduces to {g}");

    let u = Word::parse("abAB", 2)?;
    println!(
        "u = {u}, u^-1 = {}, u u^-1 trivial: {}",
        u.inverse(),
        u.mul(&u.inverse()).is_identity()
    );
    println!("|u^3| = {}", u.pow(3).len());

    let h = Word::parse("baaB", 2)?;
    let cw = h.cyclic_reduce();
    println!("{h} = ({}) ({}) ({})^-1", cw.witness, cw.core, cw.witness);

    for other in ["ABab", "baBA"] {
        let v = Word::parse(other, 2)?;
        match is_conjugate(&u, &v) {
            Some(z) => println!("z^-1 {u} z = {v} with z = {z}"),
            None => println!("{u} and {v} are not conjugate"),
        }
    }

    let (root, k) = primitive_root(&Word::parse("abababab", 2)?)?;
    println!("abababab = ({root})^{k}");
    Ok(())
}

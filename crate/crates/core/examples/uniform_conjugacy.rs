//! Decide uniform conjugacy of tuples and inspect the certificate.
//!
//! ```bash
//! cargo run --example uniform_conjugacy
//! ```

use uniconj::conjugacy::{uniform_conjugator, TuplePair};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("a,b", "Bab,b"),
        ("a,b", "a,BAbab"),
        ("ab,aab", "BAabab,BAaabab"),
        ("aa,abAB", "aa,aBAb"),
    ];
    for (left, right) in cases {
        let tp = TuplePair::parse(2, left, right)?;
        let componentwise = tp.is_componentwise_conjugate();
        match uniform_conjugator(&tp) {
            Some(g) => println!("({left}) ~ ({right}) via g = {g}; verified {}", tp.verifies(&g)),
            None => println!("({left}) and ({right}): no uniform conjugator (componentwise conjugate: {componentwise})"),
        }
    }
    Ok(())
}

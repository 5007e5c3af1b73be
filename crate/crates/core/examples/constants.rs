//! The constants engine: exact values at delta = 0, conservative tower
//! estimates beyond, and the formula tree behind each value.
//!
//! ```bash
//! cargo run --example constants
//! ```

use num_rational::BigRational;
use uniconj::bounds::{BoundContext, ConstName, Magnitude};

fn print_tree(b: &uniconj::bounds::Bound, depth: usize) {
    println!(
        "{:indent$}{}({}) = {}   [{}]",
        "",
        b.name,
        b.args,
        b.value,
        b.formula,
        indent = 2 * depth
    );
    for p in &b.parts {
        print_tree(p, depth + 1);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let free = BoundContext::free(2);
    for len in [1, 3, 6] {
        let hbar = free.hbar(&Magnitude::int(len))?;
        println!("hbar({len}) = {}", hbar.value);
    }
    print_tree(free.hbar(&Magnitude::int(4))?.as_ref(), 0);

    let hyperbolic = BoundContext::new(BigRational::new(1.into(), 2.into()), 2)?;
    let mu = hyperbolic.mu(&Magnitude::int(3))?;
    println!(
        "\ndelta = 1/2: mu(3) = {} (saturated: {})",
        mu.value, mu.saturated
    );

    // some constants need a user value away from delta = 0
    let err = hyperbolic.c_main(&Magnitude::int(4), 2).unwrap_err();
    println!("C_main without override: {err}");
    let tuned = BoundContext::new(BigRational::new(1.into(), 2.into()), 2)?
        .with_override(ConstName::MinasyanK0, Magnitude::int(3));
    println!(
        "C_main with k0 = 3: {}",
        tuned.c_main(&Magnitude::int(4), 2)?.value
    );

    println!("\nC_inner(delta = 0, #S = 2) = {}", free.c_inner()?.value);
    Ok(())
}

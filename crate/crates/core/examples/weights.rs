//! Weight literals, the invariant form and level.
//!
//!     cargo run --example weights

use taffine::{form_eval, level, Dims, Scalar, Weight};

fn main() -> taffine::Result<()> {
    let d = Dims::new(3, 2);
    let a = Weight::parse("2e1 - 1/2f2 + 3d + (2)L0", d)?;
    let b = Weight::parse("(1/2 - 3x)e1 + f2", d)?;
    println!("a = {a}");
    println!("b = {b}");
    println!("(a, b) = {}", form_eval(&a, &b)?);
    println!("(a, a) = {}", form_eval(&a, &a)?);
    println!("level(a) = {}", level(&a));

    let sum = a.add(&b.scale(&Scalar::from_int(2)))?;
    println!("a + 2b = {sum}");
    assert_eq!(Weight::parse(&sum.to_string(), d)?, sum);

    for bad in ["e4", "2e1 +", "3q"] {
        match Weight::parse(bad, d) {
            Ok(w) => println!("{bad:>8} -> {w}"),
            Err(e) => println!("{bad:>8} -> {e}"),
        }
    }
    Ok(())
}

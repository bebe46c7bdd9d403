//! Coset supports, the 𝔅/ℭ tests, shadow checks and induced support bounds.
//!
//!     cargo run --example supports

use taffine::supportcalc::{
    b_set_member, c_set_member, difference_witness, induce_support_bound, member, support_eq, Cap,
    CosetSupport, Piece,
};
use taffine::{Dims, Weight};

fn main() -> taffine::Result<()> {
    let d = Dims::new(2, 1);
    let w = |s: &str| Weight::parse(s, d).unwrap();
    let rho = w("3e1 + 2e2 + 1/2f1 + 6L0");

    let s = CosetSupport::single(Piece::coset(rho.clone(), vec![w("2f1")])?);
    println!("s = rho + 2Z f1 = {}", s.to_json());
    for probe in ["3e1 + 2e2 + 9/2f1 + 6L0", "3e1 + 2e2 + 3/2f1 + 6L0"] {
        println!("  {probe} in s: {}", member(&s, &w(probe), 16)?);
    }
    for a in ["2f1", "e2", "f1", "-2f1"] {
        let a = w(a);
        println!("  alpha = {a:<5} in B: {:<5} in C: {}", b_set_member(&a, &s, 16)?, c_set_member(&a, &s, 16)?);
    }

    // induce along -e2 ± f1, each at most once
    let bound = induce_support_bound(&s, &[(w("e2 - f1"), Cap::Finite(1)), (w("e2 + f1"), Cap::Finite(1))])?;
    println!("\ninduced bound: {}", bound.to_json());
    let layered = CosetSupport::single(Piece::new(
        rho.clone(),
        vec![w("2f1")],
        vec![],
        vec![w("0"), w("-e2 + f1"), w("-2e2")],
    )?);
    println!("equals rho + 2Z f1 + {{0, -e2 + f1, -2e2}}: {}", support_eq(&bound, &layered, 16)?);
    let naive = CosetSupport::single(Piece::new(rho, vec![w("2f1")], vec![], vec![w("0"), w("-e2"), w("-2e2")])?);
    println!("equals rho + 2Z f1 - {{0, 1, 2}}e2: {}", support_eq(&bound, &naive, 16)?);
    if let Some(x) = difference_witness(&bound, &naive, 16) {
        println!("  witness: {x}");
    }

    let open = induce_support_bound(&s, &[(w("e2 - f1"), Cap::Unbounded)])?;
    println!("\nuncapped: {}", open.to_json());
    println!("  e2 - f1 in B: {}", b_set_member(&w("e2 - f1"), &open, 16)?);
    println!("  f1 - e2 in B: {}", b_set_member(&w("f1 - e2"), &open, 16)?);
    Ok(())
}

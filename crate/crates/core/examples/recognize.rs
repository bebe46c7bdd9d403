//! Component types of finite symmetric root sets.
//!
//!     cargo run --example recognize

use taffine::decomp::{recognize, recognize_with_parity};
use taffine::{Dims, RootVec};

fn set(d: Dims, lits: &[&str]) -> Vec<RootVec> {
    lits.iter()
        .flat_map(|s| {
            let r = RootVec::parse(s, d).unwrap();
            [r.neg(), r]
        })
        .collect()
}

fn main() -> taffine::Result<()> {
    let d = Dims::new(3, 2);
    let cases: [(&str, Vec<RootVec>); 6] = [
        ("A2", set(d, &["e1 - e2", "e2 - e3", "e1 - e3"])),
        ("B2", set(d, &["e1", "e2", "e1 - e2", "e1 + e2"])),
        ("C(2)", set(d, &["2f1", "e1 + f1", "e1 - f1"])),
        ("B(0,1)", set(d, &["f1", "2f1"])),
        ("A1 + A1", set(d, &["e1 - e2", "2f2"])),
        ("D(2,1)", set(d, &["2f1", "e1 + e2", "e1 - e2", "e1 + f1", "e1 - f1", "e2 + f1", "e2 - f1"])),
    ];
    for (expected, roots) in &cases {
        let got = recognize(roots)?;
        println!("{expected:<8} -> {got}");
        for c in &got.components {
            println!("           {} rank {} with {} roots", c.name, c.rank, c.root_count);
        }
    }
    let bc = recognize_with_parity(&cases[3].1, |_| false)?;
    println!("with even short roots the B(0,1) set reads as {bc}");
    println!("asymmetric input: {:?}", recognize(&set(d, &["e1"])[1..]).err());
    Ok(())
}

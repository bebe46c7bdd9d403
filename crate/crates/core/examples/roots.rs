//! Root enumeration, classification and δ-strings for the four families.
//!
//!     cargo run --example roots [FAMILY] [K] [L] [WINDOW]

use taffine::rootsys::RootKind;
use taffine::{Family, RootSystem};

fn main() -> taffine::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: Family = args.first().map(String::as_str).unwrap_or("A2MIX").parse()?;
    let num = |i: usize, def: usize| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(def);
    let (k, l, n) = (num(1, 1), num(2, 1), num(3, 1) as u32);
    let sys = RootSystem::from_parts(family, k, l)?;

    let roots = sys.enumerate_window(n);
    println!("{family}({k},{l}), |level| <= {n}: {} roots", roots.len());
    let mut counts = std::collections::BTreeMap::new();
    for r in &roots {
        *counts.entry(format!("{:?}", sys.classify(r)?.kind)).or_insert(0) += 1;
    }
    println!("by kind: {counts:?}");

    println!("\ndot root      S_α̇        length");
    for dot in sys.dot_roots().into_iter().filter(|d| !d.is_zero()) {
        let p = sys.s_alpha(&dot)?;
        let c = sys.classify(&dot.with_dlt(p.offset as i64))?;
        let len = match (c.kind, c.length_label) {
            (RootKind::Nonsingularx, _) => "ns".to_string(),
            (_, Some(l)) => format!("{l:?}").to_lowercase(),
            _ => "-".into(),
        };
        println!("{:<12}  {}Z + {}     {len}", dot.to_string(), p.modulus, p.offset);
    }
    Ok(())
}

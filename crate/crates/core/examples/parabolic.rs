//! Triangular splits, parabolic sets and their Levi cores.
//!
//!     cargo run --example parabolic

use taffine::decomp::{is_parabolic, levi_core, parabolic_set, recognize, triangular, Functional, ParabolicSpec};
use taffine::{Family, RootSystem};

fn main() -> taffine::Result<()> {
    let sys = RootSystem::from_parts(Family::A2Odd, 3, 1)?;
    let d = sys.dims();
    let n = 2;

    let f = Functional::from_json(&serde_json::json!({"e1": 2, "e2": 1, "d": "1/3"}), d)?;
    let t = triangular(&sys.enumerate_window(n), &f);
    println!("split by {}: +{} / 0:{} / -{}", f.to_json(), t.plus.len(), t.circ.len(), t.minus.len());

    // P = {f_outer > 0} ∪ {f_outer = 0, f_inner ≥ 0}
    let cases = [
        ("level only", serde_json::json!({"d": 1}), serde_json::json!({})),
        ("level, then e1", serde_json::json!({"d": 1}), serde_json::json!({"e1": 1})),
        ("level, then f1", serde_json::json!({"d": 1}), serde_json::json!({"f1": 1})),
        ("generic", serde_json::json!({"e1": 3, "e2": 2, "e3": 1, "f1": "1/2", "d": 7}), serde_json::json!({})),
    ];
    for (name, outer, inner) in cases {
        let p = ParabolicSpec::new(Functional::from_json(&outer, d)?, Functional::from_json(&inner, d)?)?;
        let set = parabolic_set(&sys, &p, n);
        let violations = is_parabolic(&sys, |r| p.contains(r), n);
        let core: Vec<_> = levi_core(&set).into_iter().filter(|r| !r.dot_is_zero()).collect();
        println!(
            "{name:<15} |P| = {:>3}, violations = {}, Levi type = {}",
            set.len(),
            violations.len(),
            recognize(&core)?
        );
    }
    Ok(())
}

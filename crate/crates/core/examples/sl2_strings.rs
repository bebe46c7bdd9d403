//! Finite sl2 strings: integrality of 2(λ,α)/(α,α) and the reflection step.
//!
//!     cargo run --example sl2_strings [MAXDIM]

use taffine::examplecase::sl2_string_oracle;

fn main() -> taffine::Result<()> {
    let max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for dim in 1..=max {
        let r = sl2_string_oracle(dim)?;
        println!(
            "dim {dim:>2}: {:?}  rep {} integral {} directional {}",
            r.support, r.representation, r.integral, r.directional
        );
    }
    Ok(())
}

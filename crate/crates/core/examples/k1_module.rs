//! The module K₁ over ℬ₁: action table, the [e,f] relation and weights.
//!
//!     cargo run --example k1_module [K] [ZETA]

use taffine::examplecase::{k1_weight, B1Generator, K1Module, K1Vector, Params, XiMode};
use taffine::scalar::{parse_rational, rat};

fn main() -> taffine::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let zeta = args.get(1).and_then(|s| parse_rational(s)).unwrap_or(rat(1, 2));
    let p = Params::new(k, zeta.clone())?;
    let m = K1Module::new(p.clone());

    let v = K1Vector::basis(zeta.clone());
    for g in [B1Generator::E, B1Generator::F, B1Generator::C, B1Generator::D, B1Generator::T2d1, B1Generator::Teps(1)] {
        let out = m.act(g, &v)?;
        let terms: Vec<String> = out.terms().map(|(mu, c)| format!("({c}) v_{mu}")).collect();
        println!("{g:?} v_{zeta} = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    }

    println!("\n[e,f] = t_2f1 on |mu - zeta| <= 100: {}", m.check_bracket_ef(50));
    let mut off = m.clone();
    off.f_scale = rat(-1, 1);
    println!("with f scaled by -1 instead of -1/2: {}", off.check_bracket_ef(50));

    let mut special = m.clone();
    special.xi = XiMode::Specialized(rat(1, 4));
    println!("f injective with xi formal: {}", m.injectivity_witness(B1Generator::F, 20)?);
    println!("f injective at xi = 1/4:    {}", special.injectivity_witness(B1Generator::F, 20)?);

    for j in -1..=1 {
        let mu = &zeta + rat(2 * j, 1);
        println!("wt(v_{mu}) = {}", k1_weight(&p, &mu)?);
    }
    println!("wt(v_{}) -> {:?}", &zeta + rat(1, 1), k1_weight(&p, &(&zeta + rat(1, 1))).err());
    Ok(())
}

//! The 2-quasi-integrable, non-highest-weight example, step by step.
//!
//!     cargo run --example quasi_integrable [K] [WINDOW]

use taffine::examplecase::{self as ex, Params};
use taffine::scalar::rat;

fn main() -> taffine::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let k = args.first().and_then(|s| s.parse().ok()).unwrap_or(2);
    let n = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let p = Params::new(k, rat(1, 2))?;

    println!("rho = {}", ex::rho(&p));
    let [t1, t2, t3] = ex::levi_types(&p)?;
    println!("Levi types of P1, P2, P3: {t1}, {t2}, {t3}");
    println!("step 1 bound: {}", ex::step1_bound(&p)?.to_json());
    let s2 = ex::step2_scalar(&p, 6)?;
    println!("step 2: r = {}, s = {}", s2.r, s2.s);
    let s3 = ex::step3_checks(&p, n);
    println!("step 3: independent {}, covers window {}, identities {} {}", s3.independent, s3.covers_window, s3.identity_delta_minus_2ek, s3.identity_2delta_minus_e1_e2);
    let s4 = ex::step4_checks(&p, n)?;
    println!("step 4: S(1) {:?}, S(2) {:?}, direction {:?}, quasi-integrable t = {:?}, label(2f1) = {:?}", s4.s1, s4.s2, s4.direction, s4.quasi_integrable, s4.label_2d1);

    let report = ex::verify_example(&p, n)?;
    println!();
    for s in &report.steps {
        println!("{:<16} {}", s.name, if s.pass { "pass" } else { "FAIL" });
    }
    Ok(())
}

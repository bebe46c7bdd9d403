//! Runs the acceptance criteria; TAFFINE_SEED fixes the random functionals.
//!
//!     cargo run --example selftest [ID]

use taffine::acceptance;

fn main() {
    let seed = acceptance::seed_from_env();
    let ids: Vec<u8> = match std::env::args().nth(1).and_then(|s| s.parse().ok()) {
        Some(id) => vec![id],
        None => (1..=9).collect(),
    };
    for id in ids {
        match acceptance::run(id, seed) {
            Some(r) => println!("{}", r.line()),
            None => println!("no criterion {id}"),
        }
    }
}

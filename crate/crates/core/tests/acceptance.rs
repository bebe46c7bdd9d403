//! One line per criterion.
//!
//! Criterion 6 compares the Step-1 bound with `ϱ + 2Zδ₁ − {0,1,2}ε_k`, a set
//! the induction cannot produce: its `−ε_k` layer sits over `ϱ ± δ₁ + 2Zδ₁`,
//! not `ϱ + 2Zδ₁`. The criterion is run as written, reported as FAIL, and
//! listed below as an expected failure. The binary exits nonzero on any
//! other failure, and also if an expected failure starts passing.

use taffine::acceptance;

const EXPECTED_FAILURES: &[u8] = &[6];

fn main() {
    let seed = acceptance::seed_from_env();
    println!("acceptance suite, seed {seed}");
    let reports = acceptance::run_all(seed);
    for r in &reports {
        println!("{}", r.line());
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    println!("{}/{} criteria pass", reports.len() - failed.len(), reports.len());

    let unexpected: Vec<u8> = failed.iter().copied().filter(|id| !EXPECTED_FAILURES.contains(id)).collect();
    let fixed: Vec<u8> = EXPECTED_FAILURES.iter().copied().filter(|id| !failed.contains(id)).collect();
    if !failed.is_empty() {
        println!("failing: {failed:?} (expected: {EXPECTED_FAILURES:?})");
    }
    if !unexpected.is_empty() || !fixed.is_empty() {
        println!("unexpected failures: {unexpected:?}; expected failures now passing: {fixed:?}");
        std::process::exit(1);
    }
}

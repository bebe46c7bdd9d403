//! The even-part split R(1), R(2) and the closed sets S(1), S(2).
//!
//!     cargo run --example subsystems

use taffine::subsystems::{SubsystemId, Subsystems};
use taffine::{Family, RootSystem};

fn main() -> taffine::Result<()> {
    for family in Family::ALL {
        let sys = RootSystem::from_parts(family, 2, 1)?;
        let sub = Subsystems::new(&sys);
        println!("{family}(2,1)");
        for i in [SubsystemId::ONE, SubsystemId::TWO] {
            let r = sub.r_window(i, 2);
            let s = sub.s_window(i, 2);
            let closed = sub.check_s_closed(i, 4).is_empty();
            println!("  R({}) has {:>3} roots, S({}) has {:>3}, S closed on N=4: {closed}", i.index(), r.len(), i.index(), s.len());
        }
        let lvl0: Vec<String> = sub.s_window(SubsystemId::ONE, 0).iter().map(|r| r.to_string()).collect();
        println!("  S(1) at level 0: {}", lvl0.join(", "));
    }
    Ok(())
}

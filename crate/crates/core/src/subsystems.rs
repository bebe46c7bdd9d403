//! The even-part split `R_0 = R(1) ∪ R(2)`, the closed subsets
//! `S(i) = Zδ ∪ R(i) ∪ (R ∩ ½R(i))`, and bounded closedness certificates.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{RootVec, Weight};
use crate::rootsys::{shapes, Family, Progression, RootSystem};

/// Which affine component, 1 or 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubsystemId(u8);

impl SubsystemId {
    pub const ONE: SubsystemId = SubsystemId(1);
    pub const TWO: SubsystemId = SubsystemId(2);

    pub fn new(index: u8) -> Result<Self> {
        match index {
            1 | 2 => Ok(SubsystemId(index)),
            _ => Err(Error::rejected(format!("subsystem index must be 1 or 2, got {index}"))),
        }
    }

    pub fn index(&self) -> u8 {
        self.0
    }

    pub fn other(&self) -> SubsystemId {
        SubsystemId(3 - self.0)
    }
}

#[derive(Clone, Debug)]
struct EvenPart {
    zero: Progression,
    dots: HashMap<RootVec, Progression>,
}

impl EvenPart {
    fn contains(&self, v: &RootVec) -> bool {
        if v.dot_is_zero() {
            return self.zero.contains(v.dlt());
        }
        self.dots.get(&v.dot()).is_some_and(|p| p.contains(v.dlt()))
    }
}

/// `(2δ_{n,1} + (1 − δ_{n,1}))Zδ`
fn kron_zero(n: usize) -> Progression {
    if n == 1 {
        Progression::new(2, 0)
    } else {
        Progression::ALL
    }
}

fn even_rows(sys: &RootSystem, id: SubsystemId) -> EvenPart {
    use shapes::*;
    let spec = sys.spec();
    let d = sys.dims();
    let z = Progression::ALL;
    let p = Progression::new;
    let (zero, rows): (Progression, Vec<(Vec<RootVec>, Progression)>) = match (spec.family, id.0) {
        (Family::A2Mix | Family::A2Odd, 1) => (
            kron_zero(spec.l),
            vec![(del_del(d), z), (two_del(d), p(2, 0))],
        ),
        (Family::A2Mix, _) => (
            z,
            vec![(eps(d), z), (eps_eps(d), z), (two_eps(d), p(2, 1))],
        ),
        (Family::A2Odd, _) => (
            kron_zero(spec.k),
            vec![(eps_eps(d), z), (two_eps(d), p(2, 1))],
        ),
        (Family::A4, 1) => (
            p(2, 0),
            vec![(del(d), p(2, 1)), (del_del(d), p(2, 0)), (two_del(d), p(4, 0))],
        ),
        (Family::A4, _) => (
            p(2, 0),
            vec![(eps(d), p(2, 0)), (eps_eps(d), p(2, 0)), (two_eps(d), p(4, 2))],
        ),
        // δ_j ± δ_s with j = s allowed: the 2δ_j and the zero dot.
        (Family::D2, 1) => (p(2, 0), vec![(del_del(d), p(2, 0)), (two_del(d), p(2, 0))]),
        (Family::D2, _) => (z, vec![(eps(d), z), (eps_eps(d), p(2, 0))]),
    };
    let dots = rows
        .into_iter()
        .flat_map(|(ds, prog)| ds.into_iter().map(move |x| (x, prog)))
        .collect();
    EvenPart { zero, dots }
}

/// `R(1)`, `R(2)` and the derived `S(i)` membership for one root system.
#[derive(Clone, Debug)]
pub struct Subsystems<'a> {
    sys: &'a RootSystem,
    parts: [EvenPart; 2],
}

impl<'a> Subsystems<'a> {
    pub fn new(sys: &'a RootSystem) -> Self {
        Self {
            sys,
            parts: [even_rows(sys, SubsystemId::ONE), even_rows(sys, SubsystemId::TWO)],
        }
    }

    pub fn system(&self) -> &RootSystem {
        self.sys
    }

    fn part(&self, i: SubsystemId) -> &EvenPart {
        &self.parts[(i.0 - 1) as usize]
    }

    pub fn in_r(&self, i: SubsystemId, v: &RootVec) -> bool {
        self.part(i).contains(v)
    }

    pub fn in_s(&self, i: SubsystemId, v: &RootVec) -> bool {
        v.dot_is_zero()
            || self.in_r(i, v)
            || (self.sys.contains(v) && self.in_r(i, &v.scale(2)))
    }

    pub fn in_r_i(&self, i: SubsystemId, w: &Weight) -> Result<bool> {
        Ok(self.in_r(i, &self.sys.root_vec(w)?))
    }

    pub fn in_s_i(&self, i: SubsystemId, w: &Weight) -> Result<bool> {
        Ok(self.in_s(i, &self.sys.root_vec(w)?))
    }

    pub fn r_window(&self, i: SubsystemId, n: u32) -> Vec<RootVec> {
        self.sys
            .enumerate_window(n)
            .into_iter()
            .filter(|v| self.in_r(i, v))
            .collect()
    }

    pub fn s_window(&self, i: SubsystemId, n: u32) -> Vec<RootVec> {
        self.sys
            .enumerate_window(n)
            .into_iter()
            .filter(|v| self.in_s(i, v))
            .collect()
    }

    /// Bounded closedness certificate for `S(i)`.
    pub fn check_s_closed(&self, i: SubsystemId, n: u32) -> Vec<ClosureViolation> {
        check_closed(self.sys, |v| self.in_s(i, v), n)
    }
}

/// `α, β` in the subset with `α + β ∈ R` outside the subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureViolation {
    #[serde(serialize_with = "crate::json::ser_root")]
    pub a: RootVec,
    #[serde(serialize_with = "crate::json::ser_root")]
    pub b: RootVec,
    #[serde(serialize_with = "crate::json::ser_root")]
    pub sum: RootVec,
}

/// Checks `(T + T) ∩ R ⊆ T` for members of `T` in the window `N`; sums land
/// in the window `2N`.
pub fn check_closed(
    sys: &RootSystem,
    member: impl Fn(&RootVec) -> bool,
    n: u32,
) -> Vec<ClosureViolation> {
    let members: Vec<RootVec> = sys.enumerate_window(n).into_iter().filter(|v| member(v)).collect();
    check_closed_among(&members, |v| sys.contains(v), member)
}

/// Closedness of `members` inside an arbitrary ambient set.
pub fn check_closed_among(
    members: &[RootVec],
    in_ambient: impl Fn(&RootVec) -> bool,
    member: impl Fn(&RootVec) -> bool,
) -> Vec<ClosureViolation> {
    let mut out = Vec::new();
    for (x, a) in members.iter().enumerate() {
        for b in &members[x..] {
            let sum = a.add(b);
            if in_ambient(&sum) && !member(&sum) {
                out.push(ClosureViolation {
                    a: a.clone(),
                    b: b.clone(),
                    sum,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(f: Family, k: usize, l: usize) -> RootSystem {
        RootSystem::from_parts(f, k, l).unwrap()
    }

    fn rv(s: &RootSystem, lit: &str) -> RootVec {
        RootVec::parse(lit, s.dims()).unwrap()
    }

    #[test]
    fn r_i_examples() {
        let d2 = sys(Family::D2, 2, 2);
        let sub = Subsystems::new(&d2);
        assert!(sub.in_r(SubsystemId::TWO, &rv(&d2, "e1 + d")));
        assert!(!sub.in_r(SubsystemId::ONE, &rv(&d2, "d")));
        assert!(sub.in_r(SubsystemId::ONE, &rv(&d2, "2d")));

        let a2mix = sys(Family::A2Mix, 2, 1);
        let sub = Subsystems::new(&a2mix);
        assert!(!sub.in_r(SubsystemId::ONE, &rv(&a2mix, "d")));
        assert!(sub.in_r(SubsystemId::ONE, &rv(&a2mix, "2d")));
        let a2mix2 = sys(Family::A2Mix, 2, 2);
        assert!(Subsystems::new(&a2mix2).in_r(SubsystemId::ONE, &rv(&a2mix2, "d")));
    }

    #[test]
    fn s_i_examples() {
        let s = sys(Family::A2Mix, 2, 2);
        let sub = Subsystems::new(&s);
        assert!(sub.in_s(SubsystemId::ONE, &rv(&s, "f1")));
        assert!(!sub.in_s(SubsystemId::TWO, &rv(&s, "f1")));
        for f in Family::ALL {
            let s = sys(f, 2, 2);
            let sub = Subsystems::new(&s);
            for i in [SubsystemId::ONE, SubsystemId::TWO] {
                assert!(sub.in_s(i, &rv(&s, "d")));
                assert!(sub.in_s(i, &rv(&s, "-3d")));
            }
        }
    }

    #[test]
    fn weight_entry_points_validate() {
        let s = sys(Family::A2Mix, 2, 2);
        let sub = Subsystems::new(&s);
        let w = Weight::parse("f1", s.dims()).unwrap();
        assert!(sub.in_s_i(SubsystemId::ONE, &w).unwrap());
        assert!(sub.in_r_i(SubsystemId::ONE, &Weight::parse("1/2f1", s.dims()).unwrap()).is_err());
        assert!(SubsystemId::new(3).is_err());
        assert_eq!(SubsystemId::ONE.other(), SubsystemId::TWO);
    }

    #[test]
    fn closure_counterexample() {
        let s = sys(Family::A2Mix, 3, 1);
        let t = [rv(&s, "0"), rv(&s, "e1 - e2"), rv(&s, "e2 - e3")];
        let viol = check_closed(&s, |v| t.contains(v), 2);
        assert!(viol.iter().any(|x| x.sum == rv(&s, "e1 - e3")));
    }

    #[test]
    fn imaginary_line_is_closed() {
        let s = sys(Family::A4, 2, 2);
        assert!(check_closed(&s, |v| v.dot_is_zero(), 6).is_empty());
    }

    #[test]
    fn s_i_closed_small() {
        for f in Family::ALL {
            let s = match RootSystem::from_parts(f, 2, 1) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let sub = Subsystems::new(&s);
            for i in [SubsystemId::ONE, SubsystemId::TWO] {
                assert!(sub.check_s_closed(i, 4).is_empty(), "{f} S({})", i.index());
            }
        }
    }
}

//! Recognition of finite root systems by Gram fingerprints.
//!
//! A component is matched against model root sets of the same rank. Two sets
//! match when their sorted rows of Gram values agree after normalizing by
//! the largest absolute norm (either sign of the form is tried).

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Dims, RootVec};
use crate::linalg::rank_i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LeviType {
    A,
    B,
    C,
    D,
    BC,
    B0p,
    #[serde(rename = "Cn_super")]
    CnSuper,
    #[serde(rename = "Dk1_super")]
    Dk1Super,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl LeviType {
    pub fn code(&self) -> &'static str {
        match self {
            LeviType::A => "A",
            LeviType::B => "B",
            LeviType::C => "C",
            LeviType::D => "D",
            LeviType::BC => "BC",
            LeviType::B0p => "B0p",
            LeviType::CnSuper => "Cn_super",
            LeviType::Dk1Super => "Dk1_super",
            LeviType::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub rank: usize,
    pub type_code: LeviType,
    pub root_count: usize,
    pub has_nonsingular: bool,
    /// Human-readable name such as `A1`, `C(2)`, `D(3,1)`, `B(0,2)`.
    pub name: String,
    #[serde(serialize_with = "crate::json::ser_roots")]
    pub roots: Vec<RootVec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LeviDescriptor {
    pub components: Vec<Component>,
}

impl LeviDescriptor {
    /// Component names joined with ` + `, or `0` for an empty descriptor.
    pub fn summary(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components
            .iter()
            .map(|c| c.name.as_str())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for LeviDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

fn name_of(t: LeviType, rank: usize) -> String {
    match t {
        LeviType::A | LeviType::B | LeviType::C | LeviType::D | LeviType::BC => {
            format!("{}{rank}", t.code())
        }
        LeviType::B0p => format!("B(0,{rank})"),
        LeviType::CnSuper => format!("C({rank})"),
        LeviType::Dk1Super => format!("D({},1)", rank - 1),
        LeviType::Unknown => format!("UNKNOWN{rank}"),
    }
}

type Fingerprint = Vec<Vec<Ratio<i64>>>;

fn fingerprint(roots: &[RootVec], sign: i64) -> Option<Fingerprint> {
    let max = roots.iter().map(|r| r.norm().abs()).max()?;
    if max == 0 {
        return None;
    }
    let mut rows: Vec<Vec<Ratio<i64>>> = roots
        .iter()
        .map(|a| {
            let mut row: Vec<Ratio<i64>> = roots
                .iter()
                .map(|b| Ratio::new(sign * a.form(b), max))
                .collect();
            row.sort();
            row
        })
        .collect();
    rows.sort();
    Some(rows)
}

fn pm(v: RootVec) -> [RootVec; 2] {
    let n = v.neg();
    [v, n]
}

fn e(d: Dims, i: usize) -> RootVec {
    RootVec::eps(d, i)
}

fn f(d: Dims, p: usize) -> RootVec {
    RootVec::del(d, p)
}

/// `±ε_i ± ε_j`, `i < j ≤ n`.
fn eps_pairs(d: Dims, n: usize) -> Vec<RootVec> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.extend(pm(e(d, i).add(&e(d, j))));
            out.extend(pm(e(d, i).sub(&e(d, j))));
        }
    }
    out
}

fn del_pairs(d: Dims, n: usize) -> Vec<RootVec> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.extend(pm(f(d, i).add(&f(d, j))));
            out.extend(pm(f(d, i).sub(&f(d, j))));
        }
    }
    out
}

fn model(t: LeviType, n: usize) -> Option<Vec<RootVec>> {
    let d = Dims::new(n + 1, n + 1);
    let v = match t {
        LeviType::A => {
            let mut out = Vec::new();
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    if i != j {
                        out.push(e(d, i).sub(&e(d, j)));
                    }
                }
            }
            out
        }
        LeviType::B => {
            let mut out = eps_pairs(d, n);
            (1..=n).for_each(|i| out.extend(pm(e(d, i))));
            out
        }
        LeviType::C => {
            let mut out = eps_pairs(d, n);
            (1..=n).for_each(|i| out.extend(pm(e(d, i).scale(2))));
            out
        }
        LeviType::D if n >= 4 => eps_pairs(d, n),
        LeviType::BC => {
            let mut out = eps_pairs(d, n);
            (1..=n).for_each(|i| {
                out.extend(pm(e(d, i)));
                out.extend(pm(e(d, i).scale(2)));
            });
            out
        }
        LeviType::B0p => {
            let mut out = del_pairs(d, n);
            (1..=n).for_each(|i| {
                out.extend(pm(f(d, i)));
                out.extend(pm(f(d, i).scale(2)));
            });
            out
        }
        // osp(2|2n−2)
        LeviType::CnSuper if n >= 2 => {
            let mut out = del_pairs(d, n - 1);
            for i in 1..n {
                out.extend(pm(f(d, i).scale(2)));
                out.extend(pm(e(d, 1).add(&f(d, i))));
                out.extend(pm(e(d, 1).sub(&f(d, i))));
            }
            out
        }
        // D(m,1) = osp(2m|2) with m = n − 1 ≥ 2
        LeviType::Dk1Super if n >= 3 => {
            let m = n - 1;
            let mut out = eps_pairs(d, m);
            out.extend(pm(f(d, 1).scale(2)));
            for i in 1..=m {
                out.extend(pm(e(d, i).add(&f(d, 1))));
                out.extend(pm(e(d, i).sub(&f(d, 1))));
            }
            out
        }
        _ => return None,
    };
    Some(v)
}

fn expected_count(t: LeviType, n: usize) -> Option<usize> {
    Some(match t {
        LeviType::A => n * (n + 1),
        LeviType::B | LeviType::C => 2 * n * n,
        LeviType::D if n >= 4 => 2 * n * (n - 1),
        LeviType::BC | LeviType::B0p => 2 * n * n + 2 * n,
        LeviType::CnSuper if n >= 2 => 2 * (n - 1) * (n + 1),
        LeviType::Dk1Super if n >= 3 => 2 * (n - 1) * (n - 1) + 2 * (n - 1) + 2,
        _ => return None,
    })
}

const REAL_ORDER: [LeviType; 5] = [LeviType::A, LeviType::B, LeviType::C, LeviType::D, LeviType::B0p];
const SUPER_ORDER: [LeviType; 2] = [LeviType::CnSuper, LeviType::Dk1Super];

fn match_type(roots: &[RootVec], rank: usize, isotropic: bool) -> LeviType {
    let order: &[LeviType] = if isotropic { &SUPER_ORDER } else { &REAL_ORDER };
    let (Some(fp_pos), Some(fp_neg)) = (fingerprint(roots, 1), fingerprint(roots, -1)) else {
        return LeviType::Unknown;
    };
    for &t in order {
        if expected_count(t, rank) != Some(roots.len()) {
            continue;
        }
        let Some(m) = model(t, rank) else { continue };
        let Some(fm) = fingerprint(&m, 1) else { continue };
        if fm == fp_pos || fm == fp_neg {
            return t;
        }
    }
    LeviType::Unknown
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Splits the nonzero roots into connected components: `α ~ β` when
/// `(α, β) ≠ 0` or `α ± β` is a root; an isotropic `α` is joined to `−α`.
fn components(roots: &[RootVec]) -> Vec<Vec<RootVec>> {
    let set: HashSet<&RootVec> = roots.iter().collect();
    let index: HashMap<&RootVec, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let mut parent: Vec<usize> = (0..roots.len()).collect();
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for (i, a) in roots.iter().enumerate() {
        if let Some(&j) = index.get(&a.neg()) {
            union(&mut parent, i, j);
        }
        for (j, b) in roots.iter().enumerate().skip(i + 1) {
            if a.form(b) != 0 || set.contains(&a.add(b)) || set.contains(&a.sub(b)) {
                union(&mut parent, i, j);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<RootVec>> = HashMap::new();
    for (i, r) in roots.iter().enumerate() {
        let g = find(&mut parent, i);
        groups.entry(g).or_default().push(r.clone());
    }
    let mut out: Vec<Vec<RootVec>> = groups.into_values().collect();
    for g in &mut out {
        g.sort();
    }
    out.sort();
    out
}

/// Recognizes a finite root set closed under negation.
///
/// Non-reduced components without isotropic roots are reported as `B(0,p)`;
/// use [`recognize_with_parity`] to tell them apart from `BC_p`.
pub fn recognize(roots: &[RootVec]) -> Result<LeviDescriptor> {
    recognize_inner(roots, None::<fn(&RootVec) -> bool>)
}

/// Like [`recognize`], with an oddness predicate: a non-reduced component is
/// `B(0,p)` when its short roots are odd and `BC_p` otherwise.
pub fn recognize_with_parity(
    roots: &[RootVec],
    is_odd: impl Fn(&RootVec) -> bool,
) -> Result<LeviDescriptor> {
    recognize_inner(roots, Some(is_odd))
}

fn recognize_inner(
    roots: &[RootVec],
    is_odd: Option<impl Fn(&RootVec) -> bool>,
) -> Result<LeviDescriptor> {
    let set: HashSet<&RootVec> = roots.iter().collect();
    if let Some(bad) = roots.iter().find(|r| !set.contains(&r.neg())) {
        return Err(Error::rejected(format!(
            "root set is not closed under negation: {bad} present, {} absent",
            bad.neg()
        )));
    }
    let mut nonzero: Vec<RootVec> = set.into_iter().filter(|r| !r.is_zero()).cloned().collect();
    nonzero.sort();
    let mut comps: Vec<Component> = components(&nonzero)
        .into_iter()
        .map(|c| {
            let rank = rank_i64(&c.iter().map(|r| r.raw().to_vec()).collect::<Vec<_>>());
            let has_nonsingular = c.iter().any(|r| r.norm() == 0);
            let mut t = match_type(&c, rank, has_nonsingular);
            if t == LeviType::B0p {
                if let Some(odd) = &is_odd {
                    let cs: HashSet<&RootVec> = c.iter().collect();
                    let short_odd = c
                        .iter()
                        .filter(|r| cs.contains(&r.scale(2)))
                        .all(|r| odd(r));
                    if !short_odd {
                        t = LeviType::BC;
                    }
                }
            }
            Component {
                rank,
                type_code: t,
                root_count: c.len(),
                has_nonsingular,
                name: name_of(t, rank),
                roots: c,
            }
        })
        .collect();
    comps.sort_by(|a, b| {
        (a.type_code, a.rank, &a.roots).cmp(&(b.type_code, b.rank, &b.roots))
    });
    Ok(LeviDescriptor { components: comps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(d: Dims, xs: &[&str]) -> Vec<RootVec> {
        xs.iter().map(|x| RootVec::parse(x, d).unwrap()).collect()
    }

    fn with_neg(v: Vec<RootVec>) -> Vec<RootVec> {
        let mut out: Vec<RootVec> = v.iter().flat_map(|r| [r.clone(), r.neg()]).collect();
        out.push(RootVec::zero(v[0].dims()));
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn a1_from_long_odd_line() {
        let d = Dims::new(2, 1);
        let r = recognize(&parse(d, &["0", "2f1", "-2f1"])).unwrap();
        assert_eq!(r.summary(), "A1");
    }

    #[test]
    fn c2_super() {
        let d = Dims::new(2, 1);
        let r = recognize(&with_neg(parse(d, &["e2 + f1", "e2 - f1", "2f1"]))).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].type_code, LeviType::CnSuper);
        assert_eq!(r.summary(), "C(2)");
        assert!(r.components[0].has_nonsingular);
    }

    #[test]
    fn b0p_and_bc() {
        let d = Dims::new(1, 1);
        let roots = parse(d, &["0", "f1", "-f1", "2f1", "-2f1"]);
        assert_eq!(recognize(&roots).unwrap().summary(), "B(0,1)");
        let r = recognize_with_parity(&roots, |_| false).unwrap();
        assert_eq!(r.summary(), "BC1");
    }

    #[test]
    fn classical_types() {
        let d = Dims::new(4, 1);
        let a2 = with_neg(parse(d, &["e1 - e2", "e2 - e3", "e1 - e3"]));
        assert_eq!(recognize(&a2).unwrap().summary(), "A2");
        let b2 = with_neg(parse(d, &["e1", "e2", "e1 + e2", "e1 - e2"]));
        assert_eq!(recognize(&b2).unwrap().summary(), "B2");
        let c3 = with_neg(parse(
            d,
            &["2e1", "2e2", "2e3", "e1 + e2", "e1 - e2", "e1 + e3", "e1 - e3", "e2 + e3", "e2 - e3"],
        ));
        assert_eq!(recognize(&c3).unwrap().summary(), "C3");
        let d3 = with_neg(parse(d, &["e1 + e2", "e1 - e2", "e1 + e3", "e1 - e3", "e2 + e3", "e2 - e3"]));
        assert_eq!(recognize(&d3).unwrap().summary(), "A3");
        let d4 = with_neg(model(LeviType::D, 4).unwrap());
        let d4: Vec<RootVec> = d4
            .iter()
            .map(|r| RootVec::from_parts(&r.eps_coeffs()[..4], &[0], 0))
            .collect();
        assert_eq!(recognize(&d4).unwrap().summary(), "D4");
    }

    #[test]
    fn orthogonal_sum() {
        let d = Dims::new(3, 1);
        let r = recognize(&with_neg(parse(d, &["e1 - e2", "2f1"]))).unwrap();
        assert_eq!(r.summary(), "A1 + A1");
    }

    #[test]
    fn dk1_super() {
        for k in 2..=4 {
            let d = Dims::new(k, 1);
            let mut gens = vec![RootVec::del(d, 1).scale(2)];
            for i in 1..=k {
                gens.push(RootVec::eps(d, i).add(&RootVec::del(d, 1)));
                gens.push(RootVec::eps(d, i).sub(&RootVec::del(d, 1)));
                for j in i + 1..=k {
                    gens.push(RootVec::eps(d, i).add(&RootVec::eps(d, j)));
                    gens.push(RootVec::eps(d, i).sub(&RootVec::eps(d, j)));
                }
            }
            let r = recognize(&with_neg(gens)).unwrap();
            assert_eq!(r.summary(), format!("D({k},1)"));
            assert_eq!(r.components[0].type_code, LeviType::Dk1Super);
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let d = Dims::new(1, 1);
        assert!(recognize(&parse(d, &["0", "e1"])).is_err());
    }

    #[test]
    fn unknown_fallback() {
        let d = Dims::new(2, 1);
        // isotropic pair alone matches nothing
        let r = recognize(&parse(d, &["0", "e1 + f1", "-e1 - f1"])).unwrap();
        assert_eq!(r.components[0].type_code, LeviType::Unknown);
    }
}

//! Triangular decompositions, parabolic subsets built from nested
//! functionals, Levi cores, and recognition of finite root systems.

mod recognize;

pub use recognize::{
    recognize, recognize_with_parity, Component, LeviDescriptor, LeviType,
};

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{Dims, RootVec};
use crate::linalg::common_denominator;
use crate::rootsys::RootSystem;
use crate::scalar::{fmt_rational, Rational};
use crate::subsystems::{check_closed_among, ClosureViolation};

/// A rational linear functional on `span{ε_i, δ_p, δ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    dims: Dims,
    values: Vec<Rational>,
    // values scaled by a positive common denominator, for fast sign tests
    scaled: Vec<i64>,
}

impl Functional {
    /// Values in coordinate order `ε_1..ε_k, δ_1..δ_l, δ`.
    pub fn new(dims: Dims, values: Vec<Rational>) -> Result<Self> {
        if values.len() != dims.k + dims.l + 1 {
            return Err(Error::rejected(format!(
                "functional needs {} values, got {}",
                dims.k + dims.l + 1,
                values.len()
            )));
        }
        let den = common_denominator(&values);
        let scaled = values
            .iter()
            .map(|v| {
                (v * Rational::from_integer(den.clone()))
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::rejected("functional values too large"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { dims, values, scaled })
    }

    pub fn zero(dims: Dims) -> Self {
        Self::new(dims, vec![Rational::zero(); dims.k + dims.l + 1]).unwrap()
    }

    /// From integer values, coordinate order as in [`Functional::new`].
    pub fn from_ints(dims: Dims, values: &[i64]) -> Result<Self> {
        Self::new(dims, values.iter().map(|&v| crate::scalar::rat_int(v)).collect())
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, v: &RootVec) -> Rational {
        v.raw()
            .iter()
            .zip(&self.values)
            .map(|(&x, c)| c * Rational::from_integer(BigInt::from(x)))
            .sum()
    }

    pub fn sign(&self, v: &RootVec) -> Ordering {
        let s: i128 = v
            .raw()
            .iter()
            .zip(&self.scaled)
            .map(|(&x, &c)| x as i128 * c as i128)
            .sum();
        s.cmp(&0)
    }

    fn symbols(dims: Dims) -> Vec<String> {
        (1..=dims.k)
            .map(|i| format!("e{i}"))
            .chain((1..=dims.l).map(|p| format!("f{p}")))
            .chain(std::iter::once("d".to_string()))
            .collect()
    }

    /// Parses `{"e1": "1/2", "f1": 0, "d": 1}`; absent symbols are 0.
    pub fn from_json(v: &Value, dims: Dims) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::rejected("functional must be a JSON object"))?;
        let syms = Self::symbols(dims);
        let mut values = vec![Rational::zero(); syms.len()];
        for (key, val) in obj {
            let idx = syms
                .iter()
                .position(|s| s == key)
                .ok_or_else(|| Error::rejected(format!("unknown basis symbol {key:?}")))?;
            values[idx] = json::parse_rational_value(val)?;
        }
        Self::new(dims, values)
    }

    pub fn to_json(&self) -> Value {
        let m: Map<String, Value> = Self::symbols(self.dims)
            .into_iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| (s, Value::String(fmt_rational(v))))
            .collect();
        Value::Object(m)
    }
}

/// `S = S⁺ ∪ S° ∪ S⁻` by the sign of a functional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Triangular {
    #[serde(serialize_with = "json::ser_roots")]
    pub plus: Vec<RootVec>,
    #[serde(serialize_with = "json::ser_roots")]
    pub circ: Vec<RootVec>,
    #[serde(serialize_with = "json::ser_roots")]
    pub minus: Vec<RootVec>,
}

impl Triangular {
    pub fn is_trivial(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }
}

pub fn triangular(roots: &[RootVec], f: &Functional) -> Triangular {
    let mut t = Triangular::default();
    for r in roots {
        match f.sign(r) {
            Ordering::Greater => t.plus.push(r.clone()),
            Ordering::Equal => t.circ.push(r.clone()),
            Ordering::Less => t.minus.push(r.clone()),
        }
    }
    t
}

/// `P = Δ⁺ ∪ Δ°⁺ ∪ Δ°°`: positive for `outer`, or `outer`-neutral and
/// nonnegative for `inner`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicSpec {
    pub outer: Functional,
    pub inner: Functional,
}

impl ParabolicSpec {
    pub fn new(outer: Functional, inner: Functional) -> Result<Self> {
        if outer.dims() != inner.dims() {
            return Err(Error::rejected("outer and inner functionals differ in dims"));
        }
        Ok(Self { outer, inner })
    }

    pub fn contains(&self, v: &RootVec) -> bool {
        match self.outer.sign(v) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => self.inner.sign(v) != Ordering::Less,
        }
    }

    /// The part of `P` inside a finite root set.
    pub fn restrict(&self, roots: &[RootVec]) -> Vec<RootVec> {
        roots.iter().filter(|r| self.contains(r)).cloned().collect()
    }
}

/// Window-`N` portion of the parabolic set in `R`.
pub fn parabolic_set(sys: &RootSystem, p: &ParabolicSpec, n: u32) -> Vec<RootVec> {
    p.restrict(&sys.enumerate_window(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "lowercase")]
pub enum ParabolicViolation {
    /// Neither `α` nor `−α` is in `P`.
    Covering {
        #[serde(serialize_with = "json::ser_root")]
        root: RootVec,
    },
    /// `α, β ∈ P`, `α + β ∈ Δ ∖ P`.
    Closure(ClosureViolation),
}

/// Checks `Δ = P ∪ −P` on the window `N` and `Δ ∩ (P + P) ⊆ P` for summands
/// in the window `N`.
pub fn is_parabolic(
    sys: &RootSystem,
    member: impl Fn(&RootVec) -> bool,
    n: u32,
) -> Vec<ParabolicViolation> {
    let window = sys.enumerate_window(n);
    parabolic_violations(&window, |v| sys.contains(v), member)
}

/// Parabolicity of `member` inside a finite root set `universe`.
pub fn is_parabolic_in(
    universe: &[RootVec],
    member: impl Fn(&RootVec) -> bool,
) -> Vec<ParabolicViolation> {
    let set: HashSet<&RootVec> = universe.iter().collect();
    parabolic_violations(universe, |v| set.contains(v), member)
}

fn parabolic_violations(
    window: &[RootVec],
    in_ambient: impl Fn(&RootVec) -> bool,
    member: impl Fn(&RootVec) -> bool,
) -> Vec<ParabolicViolation> {
    let mut out: Vec<ParabolicViolation> = window
        .iter()
        .filter(|a| !member(a) && !member(&a.neg()))
        .map(|a| ParabolicViolation::Covering { root: a.clone() })
        .collect();
    let members: Vec<RootVec> = window.iter().filter(|a| member(a)).cloned().collect();
    out.extend(
        check_closed_among(&members, in_ambient, &member)
            .into_iter()
            .map(ParabolicViolation::Closure),
    );
    out
}

/// `P ∩ −P`, sorted.
pub fn levi_core(p: &[RootVec]) -> Vec<RootVec> {
    let set: HashSet<&RootVec> = p.iter().collect();
    let mut out: Vec<RootVec> = p.iter().filter(|a| set.contains(&a.neg())).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// Groups a root list by δ-level; handy for reports.
pub fn by_level(roots: &[RootVec]) -> BTreeMap<i64, Vec<RootVec>> {
    let mut m: BTreeMap<i64, Vec<RootVec>> = BTreeMap::new();
    for r in roots {
        m.entry(r.dlt()).or_default().push(r.clone());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use serde_json::json;

    fn sys(f: Family, k: usize, l: usize) -> RootSystem {
        RootSystem::from_parts(f, k, l).unwrap()
    }

    fn rv(s: &RootSystem, lit: &str) -> RootVec {
        RootVec::parse(lit, s.dims()).unwrap()
    }

    #[test]
    fn zero_functional_is_trivial() {
        let s = sys(Family::A2Mix, 2, 1);
        let w = s.enumerate_window(2);
        let t = triangular(&w, &Functional::zero(s.dims()));
        assert!(t.is_trivial());
        assert_eq!(t.circ.len(), w.len());
    }

    #[test]
    fn delta_functional_keeps_level_zero() {
        let s = sys(Family::A4, 2, 2);
        let w = s.enumerate_window(2);
        let f = Functional::from_json(&json!({"d": 1}), s.dims()).unwrap();
        let t = triangular(&w, &f);
        assert!(t.circ.iter().all(|r| r.dlt() == 0));
        assert_eq!(t.circ.len(), w.iter().filter(|r| r.dlt() == 0).count());
        assert!(t.plus.iter().all(|r| r.dlt() > 0));
    }

    #[test]
    fn sign_split_on_pair() {
        let s = sys(Family::A2Mix, 2, 1);
        let f = Functional::from_json(&json!({"e1": 1}), s.dims()).unwrap();
        let t = triangular(&[rv(&s, "e1"), rv(&s, "-e1")], &f);
        assert_eq!(t.plus, vec![rv(&s, "e1")]);
        assert_eq!(t.minus, vec![rv(&s, "-e1")]);
        assert!(t.circ.is_empty());
    }

    #[test]
    fn functional_json() {
        let d = Dims::new(2, 1);
        let f = Functional::from_json(&json!({"e1": "1/2", "f1": -3, "d": "2/3"}), d).unwrap();
        assert_eq!(f.to_json(), json!({"e1": "1/2", "f1": "-3", "d": "2/3"}));
        assert!(Functional::from_json(&json!({"e3": 1}), d).is_err());
        assert!(Functional::from_json(&json!([1]), d).is_err());
        let r = RootVec::parse("e1 + f1 + 3d", d).unwrap();
        assert_eq!(f.eval(&r), crate::scalar::rat(1, 2) - crate::scalar::rat(3, 1) + crate::scalar::rat(2, 1));
        assert_eq!(f.sign(&r), Ordering::Less);
    }

    #[test]
    fn trivial_pair_gives_everything() {
        let s = sys(Family::D2, 2, 2);
        let z = Functional::zero(s.dims());
        let p = ParabolicSpec::new(z.clone(), z).unwrap();
        assert_eq!(parabolic_set(&s, &p, 3), s.enumerate_window(3));
        assert!(is_parabolic(&s, |v| p.contains(v), 3).is_empty());
    }

    #[test]
    fn positive_levels_always_included() {
        let s = sys(Family::A2Odd, 2, 1);
        let outer = Functional::from_json(&json!({"d": 1}), s.dims()).unwrap();
        let inner = Functional::from_json(&json!({"e1": -2, "f1": 1}), s.dims()).unwrap();
        let p = ParabolicSpec::new(outer, inner).unwrap();
        let set = parabolic_set(&s, &p, 3);
        for r in s.enumerate_window(3).iter().filter(|r| r.dlt() > 0) {
            assert!(set.contains(r));
        }
        assert!(is_parabolic(&s, |v| p.contains(v), 3).is_empty());
    }

    #[test]
    fn non_parabolic_small_set() {
        let s = sys(Family::A2Mix, 2, 1);
        let p = [rv(&s, "0"), rv(&s, "e1 - e2")];
        let viol = is_parabolic(&s, |v| p.contains(v), 1);
        assert!(viol.contains(&ParabolicViolation::Covering { root: rv(&s, "e1 + e2") }));
        assert!(is_parabolic(&s, |v| s.contains(v), 2).is_empty());
    }

    #[test]
    fn levi_core_examples() {
        let s = sys(Family::A2Odd, 2, 1);
        let p1: Vec<RootVec> = ["0", "e2 + f1", "e2 - f1", "2f1", "-2f1"]
            .iter()
            .map(|x| rv(&s, x))
            .collect();
        let core = levi_core(&p1);
        let expect: Vec<RootVec> = ["-2f1", "0", "2f1"].iter().map(|x| rv(&s, x)).collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(core, expect);
        let sym = s.enumerate_window(0);
        assert_eq!(levi_core(&sym), sym);
    }
}

//! Root systems of the four twisted affine families.
//!
//! Every family's root set is `Zδ` together with finitely many dot roots
//! `α̇ ∈ span{ε_i, δ_p}`, each carrying an arithmetic progression of allowed
//! δ-levels. Membership is decided by looking up the dot part in that
//! catalog and checking the level's congruence class.
//!
//! | code    | algebra                         | `Zδ` dot roots                 | other levels |
//! |---------|---------------------------------|--------------------------------|--------------|
//! | `A2MIX` | A(2k,2l−1)^(2)                  | ε_i, δ_j, ε±ε, δ±δ, ε±δ        | 2ε_i on 2Z+1, 2δ_j on 2Z |
//! | `A2ODD` | A(2k−1,2l−1)^(2), (k,l)≠(1,1)   | ε±ε, δ±δ, ε±δ                  | 2ε_i on 2Z+1, 2δ_j on 2Z |
//! | `A4`    | A(2k,2l)^(4)                    | ε_i, δ_j                       | ε±ε, δ±δ, ε±δ on 2Z; 2ε_i on 4Z+2; 2δ_j on 4Z |
//! | `D2`    | D(k+1,l)^(2)                    | ε_i, δ_j                       | 2δ_j, ε±ε, δ±δ, ε±δ on 2Z |

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Dims, RootVec, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// A(2k−1, 2l−1)^(2)
    #[serde(rename = "A2ODD")]
    A2Odd,
    /// A(2k, 2l−1)^(2)
    #[serde(rename = "A2MIX")]
    A2Mix,
    /// A(2k, 2l)^(4)
    #[serde(rename = "A4")]
    A4,
    /// D(k+1, l)^(2)
    #[serde(rename = "D2")]
    D2,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A2Odd, Family::A2Mix, Family::A4, Family::D2];

    pub fn code(&self) -> &'static str {
        match self {
            Family::A2Odd => "A2ODD",
            Family::A2Mix => "A2MIX",
            Family::A4 => "A4",
            Family::D2 => "D2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A2ODD" => Ok(Family::A2Odd),
            "A2MIX" => Ok(Family::A2Mix),
            "A4" => Ok(Family::A4),
            "D2" => Ok(Family::D2),
            other => Err(Error::rejected(format!(
                "unknown family {other:?}; expected A2ODD, A2MIX, A4 or D2"
            ))),
        }
    }
}

/// A validated `(family, k, l)` triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub family: Family,
    pub k: usize,
    pub l: usize,
}

impl RootSystemSpec {
    pub fn new(family: Family, k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::rejected(format!("need k >= 1 and l >= 1, got ({k}, {l})")));
        }
        if family == Family::A2Odd && (k, l) == (1, 1) {
            return Err(Error::rejected("A2ODD excludes (k, l) = (1, 1)"));
        }
        Ok(Self { family, k, l })
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.k, self.l)
    }
}

/// `{n : n ≡ offset (mod modulus)}`, the allowed δ-levels over a dot root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Progression {
    #[serde(rename = "r")]
    pub modulus: u8,
    #[serde(rename = "k")]
    pub offset: u8,
}

impl Progression {
    pub const ALL: Progression = Progression { modulus: 1, offset: 0 };

    pub const fn new(modulus: u8, offset: u8) -> Self {
        Self { modulus, offset }
    }

    pub fn contains(&self, n: i64) -> bool {
        n.rem_euclid(self.modulus as i64) == self.offset as i64
    }

    /// Members in `[-bound, bound]`, ascending.
    pub fn levels(&self, bound: i64) -> impl Iterator<Item = i64> + '_ {
        (-bound..=bound).filter(move |&n| self.contains(n))
    }
}

/// Generators for the dot-root shapes appearing in the tables.
pub(crate) mod shapes {
    use super::*;

    pub fn eps(d: Dims) -> Vec<RootVec> {
        (1..=d.k).flat_map(|i| signed(RootVec::eps(d, i))).collect()
    }

    pub fn del(d: Dims) -> Vec<RootVec> {
        (1..=d.l).flat_map(|p| signed(RootVec::del(d, p))).collect()
    }

    pub fn two_eps(d: Dims) -> Vec<RootVec> {
        (1..=d.k).flat_map(|i| signed(RootVec::eps(d, i).scale(2))).collect()
    }

    pub fn two_del(d: Dims) -> Vec<RootVec> {
        (1..=d.l).flat_map(|p| signed(RootVec::del(d, p).scale(2))).collect()
    }

    /// `±ε_i ± ε_r`, `i < r`.
    pub fn eps_eps(d: Dims) -> Vec<RootVec> {
        let mut out = vec![];
        for i in 1..=d.k {
            for r in i + 1..=d.k {
                out.extend(four_signs(&RootVec::eps(d, i), &RootVec::eps(d, r)));
            }
        }
        out
    }

    /// `±δ_j ± δ_s`, `j < s`.
    pub fn del_del(d: Dims) -> Vec<RootVec> {
        let mut out = vec![];
        for j in 1..=d.l {
            for s in j + 1..=d.l {
                out.extend(four_signs(&RootVec::del(d, j), &RootVec::del(d, s)));
            }
        }
        out
    }

    /// `±ε_i ± δ_j`.
    pub fn eps_del(d: Dims) -> Vec<RootVec> {
        let mut out = vec![];
        for i in 1..=d.k {
            for j in 1..=d.l {
                out.extend(four_signs(&RootVec::eps(d, i), &RootVec::del(d, j)));
            }
        }
        out
    }

    fn signed(v: RootVec) -> [RootVec; 2] {
        let n = v.neg();
        [v, n]
    }

    fn four_signs(a: &RootVec, b: &RootVec) -> [RootVec; 4] {
        [a.add(b), a.sub(b), a.neg().add(b), a.neg().sub(b)]
    }
}

/// Dot-root catalog rows `(dot roots, progression)` for a family.
fn table_rows(spec: &RootSystemSpec) -> Vec<(Vec<RootVec>, Progression)> {
    use shapes::*;
    let d = spec.dims();
    let z = Progression::ALL;
    match spec.family {
        Family::A2Mix => vec![
            (eps(d), z),
            (del(d), z),
            (eps_eps(d), z),
            (del_del(d), z),
            (eps_del(d), z),
            (two_eps(d), Progression::new(2, 1)),
            (two_del(d), Progression::new(2, 0)),
        ],
        Family::A2Odd => vec![
            (eps_eps(d), z),
            (del_del(d), z),
            (eps_del(d), z),
            (two_eps(d), Progression::new(2, 1)),
            (two_del(d), Progression::new(2, 0)),
        ],
        Family::A4 => vec![
            (eps(d), z),
            (del(d), z),
            (eps_eps(d), Progression::new(2, 0)),
            (del_del(d), Progression::new(2, 0)),
            (eps_del(d), Progression::new(2, 0)),
            (two_eps(d), Progression::new(4, 2)),
            (two_del(d), Progression::new(4, 0)),
        ],
        Family::D2 => vec![
            (eps(d), z),
            (del(d), z),
            (two_del(d), Progression::new(2, 0)),
            (eps_eps(d), Progression::new(2, 0)),
            (del_del(d), Progression::new(2, 0)),
            (eps_del(d), Progression::new(2, 0)),
        ],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Zero,
    Imaginary,
    Realx,
    Nonsingularx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthLabel {
    Sh,
    Ex,
    Lg,
}

/// Classification record of a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootClass {
    pub kind: RootKind,
    pub length_label: Option<LengthLabel>,
    pub progression: Option<Progression>,
}

/// A root system with its dot-root catalog materialized.
#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    catalog: HashMap<RootVec, Progression>,
    min_real_norm: i64,
}

impl RootSystem {
    pub fn new(spec: RootSystemSpec) -> Self {
        let mut catalog = HashMap::new();
        for (dots, prog) in table_rows(&spec) {
            for dot in dots {
                let prev = catalog.insert(dot, prog);
                debug_assert!(prev.is_none() || prev == Some(prog));
            }
        }
        let min_real_norm = catalog
            .keys()
            .map(|d| d.norm().abs())
            .filter(|&n| n != 0)
            .min()
            .expect("every family has a real dot root");
        Self {
            spec,
            catalog,
            min_real_norm,
        }
    }

    pub fn from_parts(family: Family, k: usize, l: usize) -> Result<Self> {
        Ok(Self::new(RootSystemSpec::new(family, k, l)?))
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn dims(&self) -> Dims {
        self.spec.dims()
    }

    /// Membership of an integer vector in R.
    pub fn contains(&self, v: &RootVec) -> bool {
        if v.dot_is_zero() {
            return true;
        }
        match self.catalog.get(&v.dot()) {
            Some(p) => p.contains(v.dlt()),
            None => false,
        }
    }

    /// Validates that `w` is a lattice root candidate of the right dims.
    pub fn root_vec(&self, w: &Weight) -> Result<RootVec> {
        if w.dims() != self.dims() {
            return Err(Error::rejected(format!(
                "weight dims {:?} do not match {:?}",
                w.dims(),
                self.dims()
            )));
        }
        w.to_root_vec()
    }

    pub fn is_root(&self, w: &Weight) -> Result<bool> {
        Ok(self.contains(&self.root_vec(w)?))
    }

    /// Every root with `|δ-coefficient| ≤ n`, sorted by level then coordinates.
    pub fn enumerate_window(&self, n: u32) -> Vec<RootVec> {
        let n = n as i64;
        let mut out = Vec::new();
        let mut dots: Vec<(&RootVec, &Progression)> = self.catalog.iter().collect();
        dots.sort();
        for lvl in -n..=n {
            out.push(RootVec::delta(self.dims()).scale(lvl));
            for (dot, p) in &dots {
                if p.contains(lvl) {
                    out.push(dot.with_dlt(lvl));
                }
            }
        }
        out.sort();
        out
    }

    /// Ṙ, including 0.
    pub fn dot_roots(&self) -> BTreeSet<RootVec> {
        let mut s: BTreeSet<RootVec> = self.catalog.keys().cloned().collect();
        s.insert(RootVec::zero(self.dims()));
        s
    }

    /// Nonzero dot roots whose δ-string is real.
    pub fn dot_real(&self) -> BTreeSet<RootVec> {
        self.catalog.keys().filter(|d| d.norm() != 0).cloned().collect()
    }

    /// Ṙ×_ns: nonzero isotropic dot roots.
    pub fn dot_nonsingular(&self) -> BTreeSet<RootVec> {
        self.catalog.keys().filter(|d| d.norm() == 0).cloned().collect()
    }

    pub fn dot_short(&self) -> BTreeSet<RootVec> {
        self.dot_real()
            .into_iter()
            .filter(|d| d.norm().abs() == self.min_real_norm)
            .collect()
    }

    /// `2Ṙ_sh ∩ Ṙ`.
    pub fn dot_extra_long(&self) -> BTreeSet<RootVec> {
        self.dot_short()
            .iter()
            .map(|d| d.scale(2))
            .filter(|d| self.catalog.contains_key(d))
            .collect()
    }

    pub fn dot_long(&self) -> BTreeSet<RootVec> {
        let sh = self.dot_short();
        let ex = self.dot_extra_long();
        self.dot_real()
            .into_iter()
            .filter(|d| !sh.contains(d) && !ex.contains(d))
            .collect()
    }

    /// Length label of a nonzero real dot root.
    pub fn length_label(&self, dot: &RootVec) -> Option<LengthLabel> {
        let n = dot.norm().abs();
        if n == 0 || !self.catalog.contains_key(dot) {
            return None;
        }
        if n == self.min_real_norm {
            return Some(LengthLabel::Sh);
        }
        if dot.raw().iter().all(|x| x % 2 == 0) {
            let half = RootVec::from_parts(
                &dot.eps_coeffs().iter().map(|x| x / 2).collect::<Vec<_>>(),
                &dot.del_coeffs().iter().map(|x| x / 2).collect::<Vec<_>>(),
                0,
            );
            if half.norm().abs() == self.min_real_norm && self.catalog.contains_key(&half) {
                return Some(LengthLabel::Ex);
            }
        }
        Some(LengthLabel::Lg)
    }

    /// `S_α̇ = (r·Z + k)δ` for a nonzero dot root.
    pub fn s_alpha(&self, dot: &RootVec) -> Result<Progression> {
        if dot.dlt() != 0 {
            return Err(Error::rejected(format!("{dot} has a nonzero δ-coefficient")));
        }
        if dot.is_zero() {
            return Err(Error::rejected("S_α̇ is defined for nonzero dot roots"));
        }
        self.catalog
            .get(dot)
            .copied()
            .ok_or_else(|| Error::rejected(format!("{dot} is not a dot root")))
    }

    pub fn s_alpha_weight(&self, w: &Weight) -> Result<Progression> {
        if !w.dlt.is_zero() {
            return Err(Error::rejected(format!("{w} has a nonzero δ-coefficient")));
        }
        self.s_alpha(&self.root_vec(w)?)
    }

    pub fn classify(&self, v: &RootVec) -> Result<RootClass> {
        if !self.contains(v) {
            return Err(Error::rejected(format!("{v} is not a root of {}", self.spec.family)));
        }
        if v.is_zero() {
            return Ok(RootClass {
                kind: RootKind::Zero,
                length_label: None,
                progression: None,
            });
        }
        if v.dot_is_zero() {
            return Ok(RootClass {
                kind: RootKind::Imaginary,
                length_label: None,
                progression: None,
            });
        }
        let dot = v.dot();
        let progression = Some(self.catalog[&dot]);
        if v.norm() != 0 {
            Ok(RootClass {
                kind: RootKind::Realx,
                length_label: self.length_label(&dot),
                progression,
            })
        } else {
            Ok(RootClass {
                kind: RootKind::Nonsingularx,
                length_label: None,
                progression,
            })
        }
    }

    pub fn classify_weight(&self, w: &Weight) -> Result<RootClass> {
        self.classify(&self.root_vec(w)?)
    }

    /// Real roots with nonzero norm in a window.
    pub fn real_x_window(&self, n: u32) -> Vec<RootVec> {
        self.enumerate_window(n)
            .into_iter()
            .filter(|v| v.norm() != 0)
            .collect()
    }
}

/// Strip the δ-component: `w ↦ ẇ`.
pub fn dot_of(w: &Weight) -> Weight {
    let mut out = w.clone();
    out.dlt = crate::scalar::Scalar::zero();
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
    fn spec_validation() {
        assert!(RootSystemSpec::new(Family::A2Odd, 1, 1).is_err());
        assert!(RootSystemSpec::new(Family::A2Odd, 2, 1).is_ok());
        assert!(RootSystemSpec::new(Family::A2Mix, 0, 1).is_err());
        assert!(RootSystemSpec::new(Family::D2, 1, 0).is_err());
        assert!("B2".parse::<Family>().is_err());
        for f in Family::ALL {
            assert_eq!(f.code().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn membership_examples_a2mix() {
        let s = sys(Family::A2Mix, 2, 2);
        assert!(s.contains(&rv(&s, "2e1 + 3d")));
        assert!(!s.contains(&rv(&s, "2e1 + 2d")));
        assert!(s.contains(&rv(&s, "0")));
        assert!(s.contains(&rv(&s, "e1 + f1 + 7d")));
        assert!(!s.contains(&rv(&s, "2e1 + e2")));
    }

    #[test]
    fn is_root_rejects_non_lattice_input() {
        let s = sys(Family::A2Mix, 2, 2);
        let half = Weight::parse("1/2e1", s.dims()).unwrap();
        assert!(matches!(s.is_root(&half), Err(Error::Rejected(_))));
        let lvl = Weight::parse("e1 + L0", s.dims()).unwrap();
        assert!(s.is_root(&lvl).is_err());
        let wrong_dims = Weight::parse("e1", Dims::new(1, 1)).unwrap();
        assert!(s.is_root(&wrong_dims).is_err());
    }

    #[test]
    fn window_counts_small_a2mix() {
        let s = sys(Family::A2Mix, 1, 1);
        assert_eq!(s.enumerate_window(0).len(), 11);
        assert_eq!(s.enumerate_window(1).len(), 33);
        for f in Family::ALL {
            let s = sys(f, 2, 2);
            assert!(s.enumerate_window(0).contains(&RootVec::zero(s.dims())));
        }
    }

    #[test]
    fn classify_examples() {
        let s = sys(Family::A2Mix, 2, 2);
        assert_eq!(s.classify(&rv(&s, "d")).unwrap().kind, RootKind::Imaginary);
        assert_eq!(s.classify(&rv(&s, "0")).unwrap().kind, RootKind::Zero);
        let ns = s.classify(&rv(&s, "e1 + f1")).unwrap();
        assert_eq!(ns.kind, RootKind::Nonsingularx);
        assert_eq!(ns.length_label, None);
        let ex = s.classify(&rv(&s, "2e1 + d")).unwrap();
        assert_eq!(ex.kind, RootKind::Realx);
        assert_eq!(ex.length_label, Some(LengthLabel::Ex));
        assert_eq!(ex.progression, Some(Progression::new(2, 1)));
        assert_eq!(
            s.classify(&rv(&s, "e1 - e2 + 4d")).unwrap().length_label,
            Some(LengthLabel::Lg)
        );
        assert!(s.classify(&rv(&s, "2e1")).is_err());
    }

    #[test]
    fn s_alpha_examples() {
        let a2mix = sys(Family::A2Mix, 2, 2);
        assert_eq!(a2mix.s_alpha(&rv(&a2mix, "2e1")).unwrap(), Progression::new(2, 1));
        assert_eq!(a2mix.s_alpha(&rv(&a2mix, "f1")).unwrap(), Progression::new(1, 0));
        let a4 = sys(Family::A4, 2, 2);
        assert_eq!(a4.s_alpha(&rv(&a4, "2f1")).unwrap(), Progression::new(4, 0));
        let d2 = sys(Family::D2, 2, 2);
        assert_eq!(d2.s_alpha(&rv(&d2, "e1 + f1")).unwrap(), Progression::new(2, 0));
        assert!(d2.s_alpha(&rv(&d2, "0")).is_err());
        assert!(d2.s_alpha(&rv(&d2, "e1 + d")).is_err());
        assert!(d2.s_alpha(&rv(&d2, "2e1")).is_err());
    }

    #[test]
    fn dot_of_examples() {
        let d = Dims::new(2, 2);
        let p = |s: &str| Weight::parse(s, d).unwrap();
        assert_eq!(dot_of(&p("e1 + 5d")), p("e1"));
        assert_eq!(dot_of(&p("d")), p("0"));
        assert_eq!(dot_of(&p("2f1 - 4d")), p("2f1"));
    }

    #[test]
    fn dot_root_partitions_a2mix() {
        let s = sys(Family::A2Mix, 1, 1);
        assert_eq!(s.dot_roots().len(), 13);
        let d = s.dims();
        let sh: BTreeSet<_> = ["e1", "-e1", "f1", "-f1"].iter().map(|x| rv(&s, x)).collect();
        assert_eq!(s.dot_short(), sh);
        let ex: BTreeSet<_> = ["2e1", "-2e1", "2f1", "-2f1"].iter().map(|x| rv(&s, x)).collect();
        assert_eq!(s.dot_extra_long(), ex);
        assert!(s.dot_long().is_empty());
        assert_eq!(s.dot_nonsingular().len(), 4);
        assert!(s.dot_roots().contains(&RootVec::zero(d)));
    }

    #[test]
    fn a2odd_has_no_extra_long() {
        let s = sys(Family::A2Odd, 2, 1);
        // shortest real dot roots are ±ε1±ε2 (norm 2); 2ε_i, 2δ_1 are long
        assert!(s.dot_extra_long().is_empty());
        assert_eq!(s.dot_short().len(), 4);
        assert_eq!(s.dot_long().len(), 6);
    }
}

//! Symbolic weight supports as finite unions of translated lattice cones,
//! the sets `𝔅` and `ℭ`, shadow checks, and the tight/hybrid classifiers.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::lattice::{Dims, RootVec, Weight};
use crate::linalg::{coordinates, rank, solve_cone, Sign, Solve};
use crate::rootsys::RootSystem;
use crate::scalar::{Rational, Scalar};
use crate::subsystems::{SubsystemId, Subsystems};

/// Rational coordinates `(ε.., δ_p.., δ, Λ₀)`, or `None` if some coefficient
/// involves ξ.
fn rat_vec(w: &Weight) -> Option<Vec<Rational>> {
    w.coords().map(|(_, s)| s.as_rational()).collect()
}

/// `base + offsets + span_Z(zgens) + span_N(ngens)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    #[serde(serialize_with = "json::ser_weight")]
    pub base: Weight,
    #[serde(serialize_with = "ser_weights")]
    pub zgens: Vec<Weight>,
    #[serde(serialize_with = "ser_weights")]
    pub ngens: Vec<Weight>,
    #[serde(serialize_with = "ser_weights")]
    pub offsets: Vec<Weight>,
}

fn ser_weights<S: serde::Serializer, T: AsRef<[Weight]>>(
    ws: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ws.as_ref().iter().map(|w| w.to_string()))
}

impl Piece {
    /// Generators and offsets must be ξ-free; an empty offset list means `{0}`.
    pub fn new(base: Weight, zgens: Vec<Weight>, ngens: Vec<Weight>, offsets: Vec<Weight>) -> Result<Self> {
        let dims = base.dims();
        let mut offsets = if offsets.is_empty() {
            vec![Weight::zero(dims)]
        } else {
            offsets
        };
        for w in zgens.iter().chain(&ngens).chain(&offsets) {
            if w.dims() != dims {
                return Err(Error::rejected(format!("{w} does not match the base dims {dims:?}")));
            }
            if rat_vec(w).is_none() {
                return Err(Error::rejected(format!("generator or offset {w} must be free of x")));
            }
        }
        let mut seen = HashSet::new();
        offsets.retain(|o| seen.insert(o.clone()));
        Ok(Self { base, zgens, ngens, offsets })
    }

    /// `base + span_Z(zgens)`.
    pub fn coset(base: Weight, zgens: Vec<Weight>) -> Result<Self> {
        Self::new(base, zgens, vec![], vec![])
    }

    pub fn dims(&self) -> Dims {
        self.base.dims()
    }

    fn cone_gens(&self) -> Vec<(Vec<Rational>, Sign)> {
        self.zgens
            .iter()
            .map(|g| (rat_vec(g).unwrap(), Sign::Free))
            .chain(self.ngens.iter().map(|g| (rat_vec(g).unwrap(), Sign::NonNeg)))
            .collect()
    }

    /// `v ∈ span_Z(zgens) + span_N(ngens)` for a rational vector.
    fn lattice_contains(&self, v: &[Rational], bound: u32) -> Solve {
        solve_cone(&self.cone_gens(), v, bound)
    }

    fn contains(&self, lambda: &Weight, bound: u32) -> Result<bool> {
        let mut indeterminate = false;
        for o in &self.offsets {
            let Some(diff) = lambda.sub(&self.base).and_then(|d| d.sub(o)).ok().as_ref().and_then(rat_vec) else {
                continue;
            };
            match self.lattice_contains(&diff, bound) {
                Solve::Found(_) => return Ok(true),
                Solve::Indeterminate => indeterminate = true,
                Solve::NotInSpan | Solve::NoSolution => {}
            }
        }
        if indeterminate {
            Err(Error::Indeterminate {
                bound,
                msg: format!("membership of {lambda} in a piece"),
            })
        } else {
            Ok(false)
        }
    }

    /// Whether a positive real multiple of `v` lies in the real cone
    /// `span_R(zgens) + span_{R≥0}(ngens)`.
    fn recession_contains(&self, v: &[Rational], bound: u32) -> Result<bool> {
        let gens = self.cone_gens();
        let vecs: Vec<Vec<Rational>> = gens.iter().map(|g| g.0.clone()).collect();
        if rank(&vecs) == vecs.len() {
            return Ok(match coordinates(&vecs, v) {
                Some(c) => gens
                    .iter()
                    .zip(&c)
                    .all(|((_, s), x)| *s == Sign::Free || !x.is_negative()),
                None => false,
            });
        }
        for m in 1..=bound.max(1) {
            let target: Vec<Rational> = v.iter().map(|x| x * Rational::from_integer(BigInt::from(m))).collect();
            match solve_cone(&gens, &target, bound) {
                Solve::Found(_) => return Ok(true),
                Solve::NotInSpan => return Ok(false),
                _ => {}
            }
        }
        Err(Error::Indeterminate {
            bound,
            msg: "recession cone membership with dependent generators".into(),
        })
    }
}

/// A finite union of [`Piece`]s; no pieces means the empty support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetSupport {
    #[serde(skip)]
    dims: Dims,
    pub pieces: Vec<Piece>,
}

impl CosetSupport {
    pub fn empty(dims: Dims) -> Self {
        Self { dims, pieces: vec![] }
    }

    pub fn new(dims: Dims, pieces: Vec<Piece>) -> Result<Self> {
        if let Some(p) = pieces.iter().find(|p| p.dims() != dims) {
            return Err(Error::rejected(format!("piece dims {:?} differ from {dims:?}", p.dims())));
        }
        Ok(Self { dims, pieces })
    }

    pub fn single(piece: Piece) -> Self {
        Self { dims: piece.dims(), pieces: vec![piece] }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("support serializes")
    }

    /// Parses `{"pieces": [{"base", "zgens", "ngens", "offsets"}]}`.
    pub fn from_json(v: &Value, dims: Dims) -> Result<Self> {
        let pieces = v
            .get("pieces")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::rejected("support needs a \"pieces\" array"))?;
        let list = |p: &Value, key: &str| -> Result<Vec<Weight>> {
            match p.get(key) {
                None => Ok(vec![]),
                Some(x) => json::parse_weight_list(x, dims),
            }
        };
        let pieces = pieces
            .iter()
            .map(|p| {
                let base = p
                    .get("base")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::rejected("piece needs a \"base\" literal"))?;
                Piece::new(
                    Weight::parse(base, dims)?,
                    list(p, "zgens")?,
                    list(p, "ngens")?,
                    list(p, "offsets")?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims, pieces)
    }
}

fn indeterminate_or<T>(hit: bool, bound: u32, msg: impl Into<String>, value: T) -> Result<T> {
    if hit {
        Err(Error::Indeterminate { bound, msg: msg.into() })
    } else {
        Ok(value)
    }
}

/// `λ ∈ s`, searching generator coefficients within `bound` when the
/// generators are dependent.
pub fn member(s: &CosetSupport, lambda: &Weight, bound: u32) -> Result<bool> {
    if lambda.dims() != s.dims {
        return Err(Error::rejected(format!("{lambda} does not match dims {:?}", s.dims)));
    }
    let mut indeterminate = false;
    for p in &s.pieces {
        match p.contains(lambda, bound) {
            Ok(true) => return Ok(true),
            Ok(false) => {}
            Err(Error::Indeterminate { .. }) => indeterminate = true,
            Err(e) => return Err(e),
        }
    }
    indeterminate_or(indeterminate, bound, format!("membership of {lambda}"), false)
}

/// `α ∈ 𝔅`: every forward `α`-ray meets `s` finitely often. This holds iff
/// no piece's recession cone contains a positive multiple of `α`.
pub fn b_set_member(alpha: &Weight, s: &CosetSupport, bound: u32) -> Result<bool> {
    let Some(a) = rat_vec(alpha) else {
        // an x-dependent step meets each piece at most once per offset
        return Ok(true);
    };
    for p in &s.pieces {
        if p.recession_contains(&a, bound)? {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Cover {
    Yes,
    No,
    Unknown,
}

/// Whether `point + L(piece)` lies inside `s`, where `L` is the cone of
/// `piece`. Answers structurally when one piece of `s` absorbs it, and
/// otherwise searches small cone elements for a point outside `s`.
fn translate_covered(point: &Weight, piece: &Piece, s: &CosetSupport, bound: u32) -> Cover {
    for q in &s.pieces {
        if !matches!(q.contains(point, bound), Ok(true)) {
            continue;
        }
        let absorbs = piece.zgens.iter().all(|g| {
            let v = rat_vec(g).unwrap();
            let nv: Vec<Rational> = v.iter().map(|x| -x).collect();
            q.lattice_contains(&v, bound).found() && q.lattice_contains(&nv, bound).found()
        }) && piece
            .ngens
            .iter()
            .all(|g| q.lattice_contains(&rat_vec(g).unwrap(), bound).found());
        if absorbs {
            return Cover::Yes;
        }
    }
    // counterexample search over small cone elements
    let gens: Vec<(Weight, bool)> = piece
        .zgens
        .iter()
        .map(|g| (g.clone(), true))
        .chain(piece.ngens.iter().map(|g| (g.clone(), false)))
        .collect();
    let c: i64 = if gens.len() <= 3 { 3 } else { 1 };
    let ranges: Vec<(i64, i64)> = gens.iter().map(|(_, free)| (if *free { -c } else { 0 }, c)).collect();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let mut q = point.clone();
        for ((g, _), &m) in gens.iter().zip(&cur) {
            q = q.add(&g.scale(&Scalar::from_int(m))).unwrap();
        }
        if let Ok(false) = member(s, &q, bound) {
            return Cover::No;
        }
        let mut i = 0;
        while i < cur.len() {
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
            i += 1;
        }
        if i == cur.len() {
            break;
        }
    }
    Cover::Unknown
}

/// `α ∈ ℭ`: `α + s ⊆ s`.
pub fn c_set_member(alpha: &Weight, s: &CosetSupport, bound: u32) -> Result<bool> {
    if alpha.is_zero() || s.is_empty() {
        return Ok(true);
    }
    let mut unknown = false;
    for p in &s.pieces {
        for o in &p.offsets {
            let point = p.base.add(o)?.add(alpha)?;
            match translate_covered(&point, p, s, bound) {
                Cover::Yes => {}
                Cover::No => return Ok(false),
                Cover::Unknown => unknown = true,
            }
        }
    }
    indeterminate_or(unknown, bound, format!("translation invariance under {alpha}"), true)
}

/// `a ⊆ b`, decided piecewise as in [`c_set_member`].
pub fn support_subset(a: &CosetSupport, b: &CosetSupport, bound: u32) -> Result<bool> {
    let mut unknown = false;
    for p in &a.pieces {
        for o in &p.offsets {
            let point = p.base.add(o)?;
            match translate_covered(&point, p, b, bound) {
                Cover::Yes => {}
                Cover::No => return Ok(false),
                Cover::Unknown => unknown = true,
            }
        }
    }
    indeterminate_or(unknown, bound, "support inclusion", true)
}

pub fn support_eq(a: &CosetSupport, b: &CosetSupport, bound: u32) -> Result<bool> {
    Ok(support_subset(a, b, bound)? && support_subset(b, a, bound)?)
}

/// A point of `a` outside `b` among the bases, offsets and small cone
/// translates of `a`, if one is found.
pub fn difference_witness(a: &CosetSupport, b: &CosetSupport, bound: u32) -> Option<Weight> {
    for p in &a.pieces {
        for o in &p.offsets {
            let point = p.base.add(o).ok()?;
            for g in std::iter::once(Weight::zero(a.dims)).chain(p.zgens.iter().cloned()).chain(p.zgens.iter().map(Weight::neg)) {
                let q = point.add(&g).ok()?;
                if let Ok(false) = member(b, &q, bound) {
                    return Some(q);
                }
            }
        }
    }
    None
}

/// Local-action label of a real root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Ln,
    In,
}

/// Real roots of a window mapped to `ln`/`in`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionLabeling {
    labels: BTreeMap<RootVec, Label>,
}

impl ActionLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_fn<'a>(roots: impl IntoIterator<Item = &'a RootVec>, f: impl Fn(&RootVec) -> Label) -> Self {
        Self {
            labels: roots.into_iter().map(|r| (r.clone(), f(r))).collect(),
        }
    }

    pub fn insert(&mut self, root: RootVec, label: Label) {
        self.labels.insert(root, label);
    }

    pub fn get(&self, root: &RootVec) -> Option<Label> {
        self.labels.get(root).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootVec, Label)> {
        self.labels.iter().map(|(r, l)| (r, *l))
    }

    /// Pairs `α`, `2α` that are both labeled but differently.
    pub fn doubling_conflicts(&self) -> Vec<(RootVec, RootVec)> {
        self.labels
            .iter()
            .filter_map(|(r, l)| {
                let d = r.scale(2);
                match self.labels.get(&d) {
                    Some(m) if m != l => Some((r.clone(), d)),
                    _ => None,
                }
            })
            .collect()
    }

    /// Reflects every δ-level: the label of `α̇ + nδ` moves to `α̇ − nδ`.
    pub fn mirrored(&self) -> Self {
        Self {
            labels: self
                .labels
                .iter()
                .map(|(r, l)| (r.with_dlt(-r.dlt()), *l))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let m: serde_json::Map<String, Value> = self
            .labels
            .iter()
            .map(|(r, l)| (r.to_string(), json!(l)))
            .collect();
        Value::Object(m)
    }

    pub fn from_json(v: &Value, dims: Dims) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::rejected("labeling must be an object of root literal -> \"ln\"|\"in\""))?;
        let mut out = Self::new();
        for (k, val) in obj {
            let r = RootVec::parse(k, dims)?;
            let l: Label = serde_json::from_value(val.clone())
                .map_err(|_| Error::rejected(format!("label for {k} must be \"ln\" or \"in\"")))?;
            out.insert(r, l);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShadowReason {
    /// Labeled `ln` but not in `𝔅`.
    LnOutsideB,
    /// Labeled `in` but not in `ℭ`.
    InOutsideC,
    /// A real root carrying no label.
    Unlabeled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowViolation {
    #[serde(serialize_with = "json::ser_root")]
    pub root: RootVec,
    pub label: Option<Label>,
    pub reason: ShadowReason,
}

/// Shadow axioms on the real roots of the window `n`.
pub fn shadow_check(
    sys: &RootSystem,
    labeling: &ActionLabeling,
    s: &CosetSupport,
    n: u32,
    bound: u32,
) -> Result<Vec<ShadowViolation>> {
    shadow_check_on(&sys.real_x_window(n), labeling, s, bound)
}

/// Shadow axioms on an explicit list of real roots.
pub fn shadow_check_on(
    roots: &[RootVec],
    labeling: &ActionLabeling,
    s: &CosetSupport,
    bound: u32,
) -> Result<Vec<ShadowViolation>> {
    let mut out = Vec::new();
    for r in roots {
        let w = lift(r, s.dims)?;
        let label = labeling.get(r);
        let reason = match label {
            None => Some(ShadowReason::Unlabeled),
            Some(Label::Ln) => (!b_set_member(&w, s, bound)?).then_some(ShadowReason::LnOutsideB),
            Some(Label::In) => (!c_set_member(&w, s, bound)?).then_some(ShadowReason::InOutsideC),
        };
        if let Some(reason) = reason {
            out.push(ShadowViolation { root: r.clone(), label, reason });
        }
    }
    Ok(out)
}

fn lift(r: &RootVec, dims: Dims) -> Result<Weight> {
    if r.dims() != dims {
        return Err(Error::rejected(format!("{r} does not match dims {dims:?}")));
    }
    Ok(r.to_weight())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tightness {
    Tight,
    Hybrid,
}

/// Real roots of `S(i)` in the window grouped by dot root, levels ascending.
fn s_real_strings(
    sys: &RootSystem,
    i: SubsystemId,
    labeling: &ActionLabeling,
    n: u32,
) -> Result<BTreeMap<RootVec, Vec<(i64, Label)>>> {
    let sub = Subsystems::new(sys);
    let mut strings: BTreeMap<RootVec, Vec<(i64, Label)>> = BTreeMap::new();
    for r in sub.s_window(i, n).into_iter().filter(|r| r.norm() != 0) {
        let l = labeling
            .get(&r)
            .ok_or_else(|| Error::rejected(format!("labeling is not total: {r} missing")))?;
        strings.entry(r.dot()).or_default().push((r.dlt(), l));
    }
    for v in strings.values_mut() {
        v.sort();
    }
    Ok(strings)
}

/// Tight iff some real dot class of `S(i)` is labeled uniformly on the window.
pub fn classify_tightness(
    sys: &RootSystem,
    i: SubsystemId,
    labeling: &ActionLabeling,
    n: u32,
) -> Result<Tightness> {
    let strings = s_real_strings(sys, i, labeling, n)?;
    let uniform = strings
        .values()
        .any(|s| s.iter().all(|x| x.1 == s[0].1));
    Ok(if uniform { Tightness::Tight } else { Tightness::Hybrid })
}

/// `+1` when every real dot class of `S(i)` is `ln` exactly on a nonempty
/// upper segment of the window, `−1` for lower segments, `None` otherwise
/// (including tight labelings).
pub fn hybrid_direction(
    sys: &RootSystem,
    i: SubsystemId,
    labeling: &ActionLabeling,
    n: u32,
) -> Result<Option<i8>> {
    if classify_tightness(sys, i, labeling, n)? == Tightness::Tight {
        return Ok(None);
    }
    let strings = s_real_strings(sys, i, labeling, n)?;
    let segment = |s: &Vec<(i64, Label)>, up: bool| {
        let labels: Vec<Label> = s.iter().map(|x| x.1).collect();
        let seq: Vec<Label> = if up { labels } else { labels.into_iter().rev().collect() };
        let first_ln = seq.iter().position(|&l| l == Label::Ln);
        match first_ln {
            Some(p) => seq[p..].iter().all(|&l| l == Label::Ln),
            None => false,
        }
    };
    if strings.values().all(|s| segment(s, true)) {
        Ok(Some(1))
    } else if strings.values().all(|s| segment(s, false)) {
        Ok(Some(-1))
    } else {
        Ok(None)
    }
}

/// `Some(t)` when every real root of `S(t)` is `ln` and the other side is
/// hybrid.
pub fn quasi_integrable_check(
    sys: &RootSystem,
    labeling: &ActionLabeling,
    n: u32,
) -> Result<Option<u8>> {
    for t in [SubsystemId::ONE, SubsystemId::TWO] {
        let strings = s_real_strings(sys, t, labeling, n)?;
        let integrable = strings.values().flatten().all(|x| x.1 == Label::Ln);
        if integrable && classify_tightness(sys, t.other(), labeling, n)? == Tightness::Hybrid {
            return Ok(Some(t.index()));
        }
    }
    Ok(None)
}

const EXTREMAL_BOUND: u32 = 64;

/// A window element `λ` with `(λ + span_N S) ∩ window = {λ}`, searched in
/// window order.
pub fn extremal_weight(window: &[Weight], s: &[Weight]) -> Result<Weight> {
    if window.is_empty() {
        return Err(Error::rejected("support window is empty"));
    }
    if s.is_empty() {
        return Err(Error::rejected("S is empty"));
    }
    let mut gens = Vec::new();
    for a in s {
        let v = rat_vec(a).ok_or_else(|| Error::rejected(format!("{a} must be free of x")))?;
        if a.eps.iter().chain(&a.del).all(Scalar::is_zero) && a.lam0.is_zero() {
            return Err(Error::rejected(format!("{a} is imaginary or zero")));
        }
        gens.push((v, Sign::NonNeg));
    }
    let mut indeterminate = false;
    'outer: for lam in window {
        for other in window {
            if other == lam {
                continue;
            }
            let Some(diff) = other.sub(lam).ok().as_ref().and_then(rat_vec) else {
                continue;
            };
            match solve_cone(&gens, &diff, EXTREMAL_BOUND) {
                Solve::Found(c) if c.iter().any(|x| !x.is_zero()) => continue 'outer,
                Solve::Indeterminate => {
                    indeterminate = true;
                    continue 'outer;
                }
                _ => {}
            }
        }
        return Ok(lam.clone());
    }
    if indeterminate {
        Err(Error::Indeterminate {
            bound: EXTREMAL_BOUND,
            msg: "no certified extremal weight".into(),
        })
    } else {
        Err(Error::NotFound("no extremal weight in the window".into()))
    }
}

/// Multiplicity cap for an induced generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cap {
    Finite(u32),
    Unbounded,
}

/// `base + {Σ c_g·(−g) : 0 ≤ c_g ≤ cap(g)}`: capped generators become
/// offsets, unbounded ones monoid generators.
pub fn induce_support_bound(base: &CosetSupport, neg_gens: &[(Weight, Cap)]) -> Result<CosetSupport> {
    for (g, _) in neg_gens {
        if g.dims() != base.dims {
            return Err(Error::rejected(format!("{g} does not match dims {:?}", base.dims)));
        }
    }
    let mut shifts = vec![Weight::zero(base.dims)];
    let mut extra_ngens = Vec::new();
    for (g, cap) in neg_gens {
        match cap {
            Cap::Finite(c) => {
                let mut next = Vec::new();
                for s in &shifts {
                    for m in 0..=*c {
                        next.push(s.sub(&g.scale(&Scalar::from_int(m as i64)))?);
                    }
                }
                shifts = next;
            }
            Cap::Unbounded => extra_ngens.push(g.neg()),
        }
    }
    let pieces = base
        .pieces
        .iter()
        .map(|p| {
            let mut offsets = Vec::new();
            let mut seen = BTreeSet::new();
            for o in &p.offsets {
                for s in &shifts {
                    let w = o.add(s)?;
                    if seen.insert(w.to_string()) {
                        offsets.push(w);
                    }
                }
            }
            let mut ngens = p.ngens.clone();
            ngens.extend(extra_ngens.iter().cloned());
            Piece::new(p.base.clone(), p.zgens.clone(), ngens, offsets)
        })
        .collect::<Result<Vec<_>>>()?;
    CosetSupport::new(base.dims, pieces)
}

/// Points of `s` inside a box: the finite set `{base + o + Σ c·g : |c| ≤ r}`
/// per piece, useful for brute-force comparisons.
pub fn sample_points(s: &CosetSupport, r: i64) -> Vec<Weight> {
    let mut out = BTreeMap::new();
    for p in &s.pieces {
        let gens: Vec<(Weight, bool)> = p
            .zgens
            .iter()
            .map(|g| (g.clone(), true))
            .chain(p.ngens.iter().map(|g| (g.clone(), false)))
            .collect();
        let ranges: Vec<(i64, i64)> = gens.iter().map(|(_, f)| (if *f { -r } else { 0 }, r)).collect();
        for o in &p.offsets {
            let start = p.base.add(o).unwrap();
            let mut cur: Vec<i64> = ranges.iter().map(|x| x.0).collect();
            loop {
                let mut q = start.clone();
                for ((g, _), &m) in gens.iter().zip(&cur) {
                    q = q.add(&g.scale(&Scalar::from_int(m))).unwrap();
                }
                out.insert(q.to_string(), q);
                let mut i = 0;
                while i < cur.len() {
                    if cur[i] < ranges[i].1 {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = ranges[i].0;
                    i += 1;
                }
                if i == cur.len() {
                    break;
                }
            }
        }
    }
    out.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn d() -> Dims {
        Dims::new(2, 1)
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s, d()).unwrap()
    }

    // ϱ for k = 2, ζ = 1/2
    fn rho() -> Weight {
        w("3e1 + 2e2 + 1/2f1 + 6L0")
    }

    fn k1_support() -> CosetSupport {
        CosetSupport::single(Piece::coset(rho(), vec![w("2f1")]).unwrap())
    }

    #[test]
    fn membership() {
        let s = k1_support();
        assert!(member(&s, &rho().add(&w("4f1")).unwrap(), 10).unwrap());
        assert!(!member(&s, &rho().add(&w("f1")).unwrap(), 10).unwrap());
        assert!(!member(&CosetSupport::empty(d()), &rho(), 10).unwrap());
        assert!(!member(&s, &rho().add(&w("(x)e1")).unwrap(), 10).unwrap());
    }

    #[test]
    fn dependent_generators_can_be_indeterminate() {
        let p = Piece::new(w("0"), vec![], vec![w("2e1"), w("3e1")], vec![]).unwrap();
        let s = CosetSupport::single(p);
        assert!(member(&s, &w("7e1"), 5).unwrap());
        assert!(matches!(member(&s, &w("e1"), 5), Err(Error::Indeterminate { .. })));
    }

    #[test]
    fn b_and_c_sets() {
        let s = k1_support();
        assert!(b_set_member(&w("e2"), &s, 10).unwrap());
        assert!(!b_set_member(&w("2f1"), &s, 10).unwrap());
        assert!(b_set_member(&w("2f1"), &CosetSupport::empty(d()), 10).unwrap());
        assert!(c_set_member(&w("2f1"), &s, 10).unwrap());
        assert!(c_set_member(&w("-2f1"), &s, 10).unwrap());
        assert!(!c_set_member(&w("e1"), &s, 10).unwrap());
        assert!(c_set_member(&w("0"), &s, 10).unwrap());
    }

    #[test]
    fn induce_examples() {
        let s = k1_support();
        let g1 = w("e2 - f1");
        let g2 = w("e2 + f1");
        let out = induce_support_bound(&s, &[(g1, Cap::Finite(1)), (g2, Cap::Finite(1))]).unwrap();
        assert_eq!(out.pieces[0].offsets.len(), 4);
        let same = induce_support_bound(&s, &[]).unwrap();
        assert!(support_eq(&same, &s, 10).unwrap());
        let ray = induce_support_bound(&s, &[(w("e1"), Cap::Unbounded)]).unwrap();
        assert_eq!(ray.pieces[0].ngens, vec![w("-e1")]);
        assert!(member(&ray, &rho().sub(&w("5e1")).unwrap(), 10).unwrap());
    }

    #[test]
    fn shadow_examples() {
        let sys = RootSystem::from_parts(Family::A2Odd, 2, 1).unwrap();
        let s = k1_support();
        let pair: Vec<RootVec> = ["2f1", "-2f1"].iter().map(|x| RootVec::parse(x, d()).unwrap()).collect();
        let all_in = ActionLabeling::from_fn(&pair, |_| Label::In);
        assert!(shadow_check_on(&pair, &all_in, &s, 10).unwrap().is_empty());
        let mut bad = all_in.clone();
        bad.insert(pair[0].clone(), Label::Ln);
        let v = shadow_check_on(&pair, &bad, &s, 10).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].reason, ShadowReason::LnOutsideB);
        let real = sys.real_x_window(1);
        let all_ln = ActionLabeling::from_fn(&real, |_| Label::Ln);
        assert!(shadow_check(&sys, &all_ln, &CosetSupport::empty(d()), 1, 10).unwrap().is_empty());
        let v = shadow_check(&sys, &ActionLabeling::new(), &CosetSupport::empty(d()), 0, 10).unwrap();
        assert!(v.iter().all(|x| x.reason == ShadowReason::Unlabeled));
    }

    #[test]
    fn tightness_basics() {
        let sys = RootSystem::from_parts(Family::A2Odd, 2, 1).unwrap();
        let real = sys.real_x_window(4);
        let all_ln = ActionLabeling::from_fn(&real, |_| Label::Ln);
        let all_in = ActionLabeling::from_fn(&real, |_| Label::In);
        for i in [SubsystemId::ONE, SubsystemId::TWO] {
            assert_eq!(classify_tightness(&sys, i, &all_ln, 4).unwrap(), Tightness::Tight);
            assert_eq!(classify_tightness(&sys, i, &all_in, 4).unwrap(), Tightness::Tight);
            assert_eq!(hybrid_direction(&sys, i, &all_ln, 4).unwrap(), None);
        }
        assert_eq!(quasi_integrable_check(&sys, &all_ln, 4).unwrap(), None);
        assert!(classify_tightness(&sys, SubsystemId::ONE, &ActionLabeling::new(), 2).is_err());
    }

    #[test]
    fn extremal_examples() {
        let r = rho();
        let up = r.add(&w("e1")).unwrap();
        assert_eq!(extremal_weight(&[r.clone(), up.clone()], &[w("e1")]).unwrap(), up);
        assert_eq!(extremal_weight(&[r.clone()], &[w("e1")]).unwrap(), r);
        let win: Vec<Weight> = (0..3).map(|j| r.sub(&w("e2").scale(&Scalar::from_int(j))).unwrap()).collect();
        assert_eq!(extremal_weight(&win, &[w("e2")]).unwrap(), r);
        assert!(extremal_weight(&win, &[w("d")]).is_err());
        assert!(extremal_weight(&[], &[w("e1")]).is_err());
        let cyc = [r.clone(), r.add(&w("e1")).unwrap()];
        assert!(matches!(
            extremal_weight(&cyc, &[w("e1"), w("-e1")]),
            Err(Error::NotFound(_)) | Err(Error::Indeterminate { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = induce_support_bound(&k1_support(), &[(w("e2 - f1"), Cap::Finite(1))]).unwrap();
        let v = s.to_json();
        let back = CosetSupport::from_json(&v, d()).unwrap();
        assert_eq!(back, s);
        assert!(CosetSupport::from_json(&json!({"pieces": [{"zgens": []}]}), d()).is_err());
        assert!(Piece::new(w("0"), vec![w("(x)e1")], vec![], vec![]).is_err());
    }
}

//! The quasi-integrable, non-highest-weight example over `A(2k−1,1)^(2)`:
//! the module `K₁` over `ℬ₁`, the nested parabolic sets `P₁ ⊆ 𝔰₂`,
//! `P₂ ⊆ 𝔰₃`, `P₃ ⊆ R`, and the combinatorial content of Steps 1–4.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::decomp::{
    is_parabolic, is_parabolic_in, levi_core, parabolic_set, recognize, Functional, LeviDescriptor,
    ParabolicSpec,
};
use crate::error::{Error, Result};
use crate::lattice::{form_eval, level, Dims, RootVec, Weight};
use crate::linalg::{coordinates, rank, solve_cone, Sign, Solve};
use crate::rootsys::{Family, RootSystem};
use crate::scalar::{fmt_rational, rat, rat_int, Rational, Scalar};
use crate::subsystems::{SubsystemId, Subsystems};
use crate::supportcalc::{
    self, hybrid_direction, induce_support_bound, quasi_integrable_check, shadow_check, support_eq,
    support_subset, ActionLabeling, Cap, CosetSupport, Label, Piece, Tightness,
};

/// `k ≥ 2` and `ζ ∈ Q ∖ Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub k: usize,
    pub zeta: Rational,
}

impl Params {
    pub fn new(k: usize, zeta: Rational) -> Result<Self> {
        if k < 2 {
            return Err(Error::rejected(format!("the example needs k >= 2, got {k}")));
        }
        if zeta.is_integer() {
            return Err(Error::rejected(format!("zeta must not be an integer, got {}", fmt_rational(&zeta))));
        }
        Ok(Self { k, zeta })
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.k, 1)
    }

    pub fn system(&self) -> RootSystem {
        RootSystem::from_parts(Family::A2Odd, self.k, 1).expect("k >= 2 is a valid A2ODD rank")
    }
}

impl Default for Params {
    fn default() -> Self {
        Self { k: 2, zeta: rat(1, 2) }
    }
}

fn e(d: Dims, i: usize) -> RootVec {
    RootVec::eps(d, i)
}

fn f1(d: Dims) -> RootVec {
    RootVec::del(d, 1)
}

fn pm(v: RootVec) -> [RootVec; 2] {
    let n = v.neg();
    [v, n]
}

fn sorted(mut v: Vec<RootVec>) -> Vec<RootVec> {
    v.sort();
    v.dedup();
    v
}

// ---------------------------------------------------------------------------
// K₁

/// A finite combination `Σ c_μ v_μ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct K1Vector {
    terms: BTreeMap<Rational, Scalar>,
}

impl K1Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(mu: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(mu, Scalar::one());
        v
    }

    pub fn add_term(&mut self, mu: Rational, c: Scalar) {
        let entry = self.terms.entry(mu.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn coeff(&self, mu: &Rational) -> Scalar {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, o: &K1Vector) -> K1Vector {
        let mut out = self.clone();
        for (mu, c) in &o.terms {
            out.add_term(mu.clone(), -c);
        }
        out
    }
}

/// Generators of `ℬ₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B1Generator {
    E,
    F,
    C,
    D,
    T2d1,
    /// `t_{ε_i}`, 1-based.
    Teps(usize),
}

/// How ξ enters the `f`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XiMode {
    Formal,
    /// Diagnostic: ξ replaced by a rational.
    Specialized(Rational),
}

/// `K₁` with its action table; `f_scale` is the `−1/2` in front of the
/// `f`-action and may be perturbed for diagnostics.
#[derive(Clone, Debug)]
pub struct K1Module {
    pub params: Params,
    pub f_scale: Rational,
    pub xi: XiMode,
}

impl K1Module {
    pub fn new(params: Params) -> Self {
        Self { params, f_scale: rat(-1, 2), xi: XiMode::Formal }
    }

    fn xi(&self) -> Scalar {
        match &self.xi {
            XiMode::Formal => Scalar::xi(),
            XiMode::Specialized(r) => Scalar::from_rational(r.clone()),
        }
    }

    /// Coefficient of `v_{μ−2}` in `f v_μ`.
    pub fn f_coeff(&self, mu: &Rational) -> Scalar {
        let m1 = mu - Rational::one();
        (self.xi() - Scalar::from_rational(&m1 * &m1)).scale(&self.f_scale)
    }

    fn act_basis(&self, g: B1Generator, mu: &Rational) -> (Rational, Scalar) {
        let k = self.params.k as i64;
        let two = rat_int(2);
        match g {
            B1Generator::E => (mu + &two, Scalar::one()),
            B1Generator::F => (mu - &two, self.f_coeff(mu)),
            B1Generator::C => (mu.clone(), Scalar::from_int(2 * k + 2)),
            B1Generator::D => (mu.clone(), Scalar::zero()),
            B1Generator::T2d1 => (mu.clone(), Scalar::from_rational(-(&two * mu))),
            B1Generator::Teps(i) => (mu.clone(), Scalar::from_int(k - i as i64 + 2)),
        }
    }

    pub fn act(&self, g: B1Generator, v: &K1Vector) -> Result<K1Vector> {
        if let B1Generator::Teps(i) = g {
            if !(1..=self.params.k).contains(&i) {
                return Err(Error::rejected(format!("t_eps index {i} outside 1..={}", self.params.k)));
            }
        }
        let mut out = K1Vector::zero();
        for (mu, c) in v.terms() {
            let (nu, a) = self.act_basis(g, mu);
            out.add_term(nu, &a * c);
        }
        Ok(out)
    }

    fn mu_window(&self, radius: i64) -> impl Iterator<Item = Rational> + '_ {
        (-radius..=radius).map(move |j| &self.params.zeta + rat_int(2 * j))
    }

    /// `(ef − fe) v_μ = t_{2δ₁} v_μ` for `μ ∈ ζ + 2[−radius, radius]`.
    pub fn check_bracket_ef(&self, radius: i64) -> bool {
        self.mu_window(radius).all(|mu| {
            let v = K1Vector::basis(mu);
            let ef = self.act(B1Generator::E, &self.act(B1Generator::F, &v).unwrap()).unwrap();
            let fe = self.act(B1Generator::F, &self.act(B1Generator::E, &v).unwrap()).unwrap();
            ef.sub(&fe) == self.act(B1Generator::T2d1, &v).unwrap()
        })
    }

    /// Every basis action coefficient of `g ∈ {e, f}` on the window is nonzero.
    pub fn injectivity_witness(&self, g: B1Generator, radius: i64) -> Result<bool> {
        if !matches!(g, B1Generator::E | B1Generator::F) {
            return Err(Error::rejected("injectivity is checked for e and f only"));
        }
        Ok(self.mu_window(radius).all(|mu| {
            let w = self.act(g, &K1Vector::basis(mu)).unwrap();
            w.terms().count() == 1
        }))
    }
}

/// The weight of `v_μ`: `Σ(k−i+2)ε_i + μδ₁ + (2k+2)Λ₀`.
pub fn k1_weight(p: &Params, mu: &Rational) -> Result<Weight> {
    let q = (mu - &p.zeta) / rat_int(2);
    if !q.is_integer() {
        return Err(Error::rejected(format!(
            "mu = {} is not in zeta + 2Z",
            fmt_rational(mu)
        )));
    }
    let k = p.k as i64;
    Ok(Weight::from_pairings(
        (1..=k).map(|i| Scalar::from_int(k - i + 2)).collect(),
        vec![Scalar::from_rational(-mu)],
        Scalar::from_int(2 * k + 2),
        Scalar::zero(),
    ))
}

/// `ϱ`, the weight of `v_ζ`.
pub fn rho(p: &Params) -> Weight {
    k1_weight(p, &p.zeta).expect("zeta is in its own coset")
}

/// `supp(K₁) = ϱ + 2Zδ₁`.
pub fn k1_support(p: &Params) -> CosetSupport {
    let d = p.dims();
    CosetSupport::single(Piece::coset(rho(p), vec![f1(d).scale(2).to_weight()]).unwrap())
}

// ---------------------------------------------------------------------------
// Parabolic data

/// `𝔰₁ = {0, ±2δ₁}`.
pub fn s1_listed(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v = vec![RootVec::zero(d)];
    v.extend(pm(f1(d).scale(2)));
    sorted(v)
}

/// `𝔰₂ = {0, ±ε_k±δ₁, ±2δ₁}`.
pub fn s2_listed(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v = s1_listed(p);
    v.extend(pm(e(d, p.k).add(&f1(d))));
    v.extend(pm(e(d, p.k).sub(&f1(d))));
    sorted(v)
}

/// `𝔰₃ = {0, ±2δ₁, ±ε_i±ε_j, ±ε_i±δ₁}`.
pub fn s3_listed(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v = s1_listed(p);
    for i in 1..=p.k {
        v.extend(pm(e(d, i).add(&f1(d))));
        v.extend(pm(e(d, i).sub(&f1(d))));
        for j in i + 1..=p.k {
            v.extend(pm(e(d, i).add(&e(d, j))));
            v.extend(pm(e(d, i).sub(&e(d, j))));
        }
    }
    sorted(v)
}

pub fn p1_listed(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v = s1_listed(p);
    v.push(e(d, p.k).add(&f1(d)));
    v.push(e(d, p.k).sub(&f1(d)));
    sorted(v)
}

pub fn p2_listed(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v = s2_listed(p);
    for i in 1..=p.k {
        for j in i + 1..=p.k {
            v.push(e(d, i).add(&e(d, j)));
            v.push(e(d, i).sub(&e(d, j)));
        }
        if i < p.k {
            v.push(e(d, i).add(&f1(d)));
            v.push(e(d, i).sub(&f1(d)));
        }
    }
    sorted(v)
}

/// The listing of `P₃` on the window `n`, together with `Z^{>0}δ`.
pub fn p3_listed(p: &Params, n: u32) -> Vec<RootVec> {
    let d = p.dims();
    let n = n as i64;
    let mut dots: Vec<(RootVec, i64, i64)> = Vec::new(); // (dot, first level, step)
    for i in 1..=p.k {
        for j in 1..=p.k {
            if i != j {
                for s1 in [1, -1] {
                    for s2 in [1, -1] {
                        dots.push((e(d, i).scale(s1).add(&e(d, j).scale(s2)), 0, 1));
                    }
                }
            }
        }
        for s in [1, -1] {
            dots.push((e(d, i).scale(2 * s), 1, 2));
            for t in [1, -1] {
                dots.push((e(d, i).scale(s).add(&f1(d).scale(t)), 0, 1));
            }
        }
    }
    for s in [1, -1] {
        dots.push((f1(d).scale(2 * s), 0, 2));
    }
    let mut v = vec![RootVec::zero(d)];
    for (dot, start, step) in dots {
        let mut lvl = start;
        while lvl <= n {
            v.push(dot.with_dlt(lvl));
            lvl += step;
        }
    }
    for lvl in 1..=n {
        v.push(RootVec::delta(d).scale(lvl));
    }
    sorted(v)
}

/// `P₁`: `f_outer(ε_k) = 1`, zero elsewhere, inner functional zero.
pub fn p1_spec(p: &Params) -> ParabolicSpec {
    let d = p.dims();
    let mut vals = vec![0; p.k + 2];
    vals[p.k - 1] = 1;
    ParabolicSpec::new(Functional::from_ints(d, &vals).unwrap(), Functional::zero(d)).unwrap()
}

/// `P₂`: `f_outer(ε_i) = k − i`, inner functional zero.
pub fn p2_spec(p: &Params) -> ParabolicSpec {
    let d = p.dims();
    let mut vals: Vec<i64> = (1..=p.k).map(|i| (p.k - i) as i64).collect();
    vals.extend([0, 0]);
    ParabolicSpec::new(Functional::from_ints(d, &vals).unwrap(), Functional::zero(d)).unwrap()
}

/// `P₃`: `f_outer(δ) = 1`, zero on dot roots, inner functional zero.
pub fn p3_spec(p: &Params) -> ParabolicSpec {
    let d = p.dims();
    let mut vals = vec![0; p.k + 2];
    vals[p.k + 1] = 1;
    ParabolicSpec::new(Functional::from_ints(d, &vals).unwrap(), Functional::zero(d)).unwrap()
}

pub fn p1(p: &Params) -> Vec<RootVec> {
    p1_spec(p).restrict(&s2_listed(p))
}

pub fn p2(p: &Params) -> Vec<RootVec> {
    p2_spec(p).restrict(&s3_listed(p))
}

pub fn p3(p: &Params, n: u32) -> Vec<RootVec> {
    parabolic_set(&p.system(), &p3_spec(p), n)
}

/// Recognized Levi types of `P₁`, `P₂`, `P₃`.
pub fn levi_types(p: &Params) -> Result<[LeviDescriptor; 3]> {
    Ok([
        recognize(&levi_core(&p1(p)))?,
        recognize(&levi_core(&p2(p)))?,
        recognize(&levi_core(&p3(p, 2)))?,
    ])
}

// ---------------------------------------------------------------------------
// Step 1

/// Induced bound from `ϱ + 2Zδ₁` along `−ε_k ± δ₁`, each used at most once.
pub fn step1_bound(p: &Params) -> Result<CosetSupport> {
    step1_bound_from(p, &k1_support(p), Some(1))
}

/// Step 1 with an arbitrary base; `cap = None` drops the multiplicity caps.
pub fn step1_bound_from(p: &Params, base: &CosetSupport, cap: Option<u32>) -> Result<CosetSupport> {
    if base.dims() != p.dims() {
        return Err(Error::rejected("base support does not match (k, 1)"));
    }
    let d = p.dims();
    let cap = cap.map_or(Cap::Unbounded, Cap::Finite);
    let gens = [
        (e(d, p.k).sub(&f1(d)).to_weight(), cap),
        (e(d, p.k).add(&f1(d)).to_weight(), cap),
    ];
    induce_support_bound(base, &gens)
}

fn rho_piece(p: &Params, zgen: RootVec, offsets: Vec<RootVec>) -> CosetSupport {
    CosetSupport::single(
        Piece::new(
            rho(p),
            vec![zgen.to_weight()],
            vec![],
            offsets.iter().map(RootVec::to_weight).collect(),
        )
        .unwrap(),
    )
}

/// `ϱ + 2Zδ₁ − {0, 1, 2}ε_k`, as written.
pub fn step1_literal_target(p: &Params) -> CosetSupport {
    let d = p.dims();
    let ek = e(d, p.k);
    rho_piece(p, f1(d).scale(2), vec![RootVec::zero(d), ek.neg(), ek.scale(-2)])
}

/// `ϱ + 2Zδ₁ + {0, −ε_k + δ₁, −2ε_k}`: the set the induction actually
/// produces. The middle layer sits over odd multiples of `δ₁`.
pub fn step1_parity_target(p: &Params) -> CosetSupport {
    let d = p.dims();
    let ek = e(d, p.k);
    rho_piece(p, f1(d).scale(2), vec![RootVec::zero(d), ek.neg().add(&f1(d)), ek.scale(-2)])
}

/// `ϱ + Zδ₁ − {0, 1, 2}ε_k`.
pub fn step1_coarse_target(p: &Params) -> CosetSupport {
    let d = p.dims();
    let ek = e(d, p.k);
    rho_piece(p, f1(d), vec![RootVec::zero(d), ek.neg(), ek.scale(-2)])
}

// ---------------------------------------------------------------------------
// Step 2

/// Every nonzero target root is a nonnegative or nonpositive integer
/// combination of `b`.
pub fn base_check(b: &[RootVec], target: &[RootVec], bound: u32) -> Result<bool> {
    let gens: Vec<Vec<Rational>> = b.iter().map(RootVec::to_rationals).collect();
    let independent = rank(&gens) == gens.len();
    for t in target.iter().filter(|t| !t.is_zero()) {
        let tv = t.to_rationals();
        if independent {
            let Some(c) = coordinates(&gens, &tv) else { return Ok(false) };
            let integral = c.iter().all(|x| x.is_integer());
            let same_sign = c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive());
            if !(integral && same_sign) {
                return Ok(false);
            }
        } else {
            let cone: Vec<(Vec<Rational>, Sign)> = gens.iter().map(|g| (g.clone(), Sign::NonNeg)).collect();
            let neg: Vec<Rational> = tv.iter().map(|x| -x).collect();
            let up = solve_cone(&cone, &tv, bound);
            let down = solve_cone(&cone, &neg, bound);
            if up.found() || down.found() {
                continue;
            }
            if matches!(up, Solve::Indeterminate) || matches!(down, Solve::Indeterminate) {
                return Err(Error::Indeterminate { bound, msg: format!("base expansion of {t}") });
            }
            return Ok(false);
        }
    }
    Ok(true)
}

/// `B = {ε_j − ε_{j+1}, ε_k − δ₁, 2δ₁}`.
pub fn base_b(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v: Vec<RootVec> = (1..p.k).map(|j| e(d, j).sub(&e(d, j + 1))).collect();
    v.push(e(d, p.k).sub(&f1(d)));
    v.push(f1(d).scale(2));
    v
}

/// `B′ = {ε_i − ε_{i+1} (i ≤ k−2), ε_{k−1} + ε_k, −ε_k − δ₁, 2δ₁}`.
pub fn base_b_prime(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v: Vec<RootVec> = (1..p.k - 1).map(|i| e(d, i).sub(&e(d, i + 1))).collect();
    v.push(e(d, p.k - 1).add(&e(d, p.k)));
    v.push(e(d, p.k).add(&f1(d)).neg());
    v.push(f1(d).scale(2));
    v
}

/// The base `{ε_i − ε_{i+1}, ε_{k−1} + ε_k}` of `D(k)` and its roots `±ε_i±ε_j`.
pub fn dk_base_and_roots(p: &Params) -> (Vec<RootVec>, Vec<RootVec>) {
    let d = p.dims();
    let mut b: Vec<RootVec> = (1..p.k).map(|i| e(d, i).sub(&e(d, i + 1))).collect();
    b.push(e(d, p.k - 1).add(&e(d, p.k)));
    let roots = s3_listed(p)
        .into_iter()
        .filter(|r| r.del_coeffs()[0] == 0)
        .collect();
    (b, roots)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step2Scalar {
    /// Largest `j` with `ϱ − jε_k + nδ₁` in the Step-1 bound.
    pub r: i64,
    /// `μ(t_{β_{k−1}})` for `μ = ϱ − rε_k + mδ₁`.
    pub s: String,
    /// `s = 5 − r` held for every sampled `m` and every `r ∈ {0, 1, 2}`.
    pub five_minus_r: bool,
    /// `μ + β_k` left the Step-1 bound for every sampled `m`.
    pub e_beta_k_vanishes: bool,
}

/// The scalar `s = ϱ(t_{ε_{k−1}}) + ϱ(t_{ε_k}) − r` of Step 2, with `r`
/// read off the Step-1 bound.
pub fn step2_scalar(p: &Params, window: i64) -> Result<Step2Scalar> {
    let d = p.dims();
    let bound = step1_bound(p)?;
    let rho = rho(p);
    let ek = e(d, p.k).to_weight();
    let fd = f1(d).to_weight();
    let at = |j: i64, m: i64| -> Weight {
        rho.sub(&ek.scale(&Scalar::from_int(j)))
            .unwrap()
            .add(&fd.scale(&Scalar::from_int(m)))
            .unwrap()
    };
    let mut r = None;
    for j in (0..=4).rev() {
        let mut hit = false;
        for m in -window..=window {
            if supportcalc::member(&bound, &at(j, m), 16)? {
                hit = true;
                break;
            }
        }
        if hit {
            r = Some(j);
            break;
        }
    }
    let r = r.ok_or_else(|| Error::NotFound("no layer of the Step-1 bound in the window".into()))?;
    let beta = e(d, p.k - 1).add(&e(d, p.k)).to_weight();
    let mut five_minus_r = true;
    for j in 0..=2 {
        for m in -window..=window {
            let s = form_eval(&at(j, m), &beta)?;
            five_minus_r &= s == Scalar::from_int(5 - j);
        }
    }
    let s = form_eval(&at(r, 0), &beta)?;
    let beta_k = e(d, p.k).add(&f1(d)).neg().to_weight();
    let mut vanishes = true;
    for m in -window..=window {
        vanishes &= !supportcalc::member(&bound, &at(r, m).add(&beta_k)?, 16)?;
    }
    Ok(Step2Scalar {
        r,
        s: s.to_string(),
        five_minus_r,
        e_beta_k_vanishes: vanishes,
    })
}

// ---------------------------------------------------------------------------
// Step 3

/// `Δ = {−2δ₁, δ₁ + ε_k, ε_{i−1} − ε_i (2 ≤ i ≤ k), δ − 2ε₁}`.
pub fn step3_delta(p: &Params) -> Vec<RootVec> {
    let d = p.dims();
    let mut v = vec![f1(d).scale(-2), f1(d).add(&e(d, p.k))];
    v.extend((2..=p.k).map(|i| e(d, i - 1).sub(&e(d, i))));
    v.push(RootVec::delta(d).sub(&e(d, 1).scale(2)));
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step3Report {
    pub independent: bool,
    pub all_roots: bool,
    pub covers_window: bool,
    #[serde(serialize_with = "crate::json::ser_roots")]
    pub uncovered: Vec<RootVec>,
    pub identity_delta_minus_2ek: bool,
    pub identity_2delta_minus_e1_e2: bool,
    pub in_unipotent_parts: bool,
}

impl Step3Report {
    pub fn pass(&self) -> bool {
        self.independent
            && self.all_roots
            && self.covers_window
            && self.identity_delta_minus_2ek
            && self.identity_2delta_minus_e1_e2
            && self.in_unipotent_parts
    }
}

pub fn step3_checks(p: &Params, n: u32) -> Step3Report {
    step3_checks_with(p, &step3_delta(p), n)
}

/// Step 3 against an arbitrary candidate `Δ` (e.g. with an element removed).
pub fn step3_checks_with(p: &Params, delta: &[RootVec], n: u32) -> Step3Report {
    let d = p.dims();
    let sys = p.system();
    let gens: Vec<Vec<Rational>> = delta.iter().map(RootVec::to_rationals).collect();
    let independent = rank(&gens) == gens.len();
    let all_roots = delta.iter().all(|g| sys.contains(g));
    let mut uncovered = Vec::new();
    for r in sys.enumerate_window(n).iter().filter(|r| !r.is_zero()) {
        let ok = independent
            && match coordinates(&gens, &r.to_rationals()) {
                Some(c) => {
                    c.iter().all(|x| x.is_integer())
                        && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()))
                }
                None => false,
            };
        if !ok {
            uncovered.push(r.clone());
        }
    }
    let dl = RootVec::delta(d);
    let g_top = dl.sub(&e(d, 1).scale(2));
    // δ − 2ε_k = 2(ε_{k−1} − ε_k) + ⋯ + 2(ε₁ − ε₂) + (δ − 2ε₁)
    let mut rhs = g_top.clone();
    for i in 1..p.k {
        rhs = rhs.add(&e(d, i).sub(&e(d, i + 1)).scale(2));
    }
    let id1 = rhs == dl.sub(&e(d, p.k).scale(2));
    // 2δ − (ε₁ + ε₂) = (δ − 2ε₁) + (ε₁ + ε₂) + 2(ε₁ − ε₂) + (δ − 2ε₁)
    let e12 = e(d, 1).add(&e(d, 2));
    let rhs2 = g_top.add(&e12).add(&e(d, 1).sub(&e(d, 2)).scale(2)).add(&g_top);
    let id2 = rhs2 == dl.scale(2).sub(&e12);
    // Δ ∖ {−2δ₁} ⊆ ⋃ (P_i ∖ −P_i)
    let strict = |set: &[RootVec], x: &RootVec| set.contains(x) && !set.contains(&x.neg());
    let (q1, q2, q3) = (p1(p), p2(p), p3(p, 2));
    let in_unipotent_parts = delta
        .iter()
        .filter(|g| **g != f1(d).scale(-2))
        .all(|g| strict(&q1, g) || strict(&q2, g) || strict(&q3, g));
    Step3Report {
        independent,
        all_roots,
        covers_window: uncovered.is_empty(),
        uncovered,
        identity_delta_minus_2ek: id1,
        identity_2delta_minus_e1_e2: id2,
        in_unipotent_parts,
    }
}

// ---------------------------------------------------------------------------
// Step 4

/// Step 4's labeling on the real roots of the window: `S(2)` entirely `ln`;
/// on `S(1)`, `±2δ₁ + 2nδ` is `ln` for `n > 0` and `in` for `n ≤ 0`.
pub fn derived_labeling(p: &Params, n: u32) -> ActionLabeling {
    let sys = p.system();
    let sub = Subsystems::new(&sys);
    let real = sys.real_x_window(n);
    ActionLabeling::from_fn(&real, |r| {
        if sub.in_s(SubsystemId::ONE, r) && r.dlt() <= 0 {
            Label::In
        } else {
            Label::Ln
        }
    })
}

/// A support compatible with [`derived_labeling`]:
/// `ϱ + 2Zδ₁ + N(−δ) + {0, −ε_k + δ₁, −2ε_k}`.
pub fn model_support(p: &Params) -> CosetSupport {
    let d = p.dims();
    let ek = e(d, p.k);
    let offsets = [RootVec::zero(d), ek.neg().add(&f1(d)), ek.scale(-2)];
    CosetSupport::single(
        Piece::new(
            rho(p),
            vec![f1(d).scale(2).to_weight()],
            vec![RootVec::delta(d).neg().to_weight()],
            offsets.iter().map(RootVec::to_weight).collect(),
        )
        .unwrap(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step4Report {
    pub s1: Tightness,
    pub s2: Tightness,
    pub direction: Option<i8>,
    pub quasi_integrable: Option<u8>,
    pub label_2d1: Option<Label>,
    pub label_minus_2d1: Option<Label>,
    pub doubling_consistent: bool,
    pub shadow_violations: usize,
}

impl Step4Report {
    pub fn pass(&self) -> bool {
        self.s1 == Tightness::Hybrid
            && self.s2 == Tightness::Tight
            && self.direction == Some(1)
            && self.quasi_integrable == Some(2)
            && self.label_2d1 == Some(Label::In)
            && self.label_minus_2d1 == Some(Label::In)
            && self.doubling_consistent
            && self.shadow_violations == 0
    }
}

pub fn step4_checks(p: &Params, n: u32) -> Result<Step4Report> {
    let sys = p.system();
    let d = p.dims();
    let lab = derived_labeling(p, n);
    let shadow = shadow_check(&sys, &lab, &model_support(p), n, 16)?;
    Ok(Step4Report {
        s1: supportcalc::classify_tightness(&sys, SubsystemId::ONE, &lab, n)?,
        s2: supportcalc::classify_tightness(&sys, SubsystemId::TWO, &lab, n)?,
        direction: hybrid_direction(&sys, SubsystemId::ONE, &lab, n)?,
        quasi_integrable: quasi_integrable_check(&sys, &lab, n)?,
        label_2d1: lab.get(&f1(d).scale(2)),
        label_minus_2d1: lab.get(&f1(d).scale(-2)),
        doubling_consistent: lab.doubling_conflicts().is_empty(),
        shadow_violations: shadow.len(),
    })
}

// ---------------------------------------------------------------------------
// sl2 strings

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Report {
    pub dim: usize,
    /// h-eigenvalues of the string, ascending.
    pub support: Vec<i64>,
    /// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f` on the basis.
    pub representation: bool,
    pub integral: bool,
    pub directional: bool,
}

impl Sl2Report {
    pub fn pass(&self) -> bool {
        self.representation && self.integral && self.directional
    }
}

/// The `dim`-dimensional irreducible string, built from explicit matrices
/// and read back through the lattice form with `α = ε₁`, `λ = (h/2)α`.
pub fn sl2_string_oracle(dim: usize) -> Result<Sl2Report> {
    if dim == 0 {
        return Err(Error::rejected("dim must be positive"));
    }
    let n = dim as i64;
    // column j holds the image of v_j
    let mut h = vec![vec![0i64; dim]; dim];
    let mut ef = vec![vec![0i64; dim]; dim];
    let mut fm = vec![vec![0i64; dim]; dim];
    for j in 0..dim {
        let jj = j as i64;
        h[j][j] = n - 1 - 2 * jj;
        if j + 1 < dim {
            fm[j + 1][j] = 1;
        }
        if j > 0 {
            ef[j - 1][j] = jj * (n - jj);
        }
    }
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| (0..dim).map(|t| a[i][t] * b[t][j]).sum()).collect())
            .collect()
    };
    let sub = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..dim).map(|i| (0..dim).map(|j| a[i][j] - b[i][j]).collect()).collect()
    };
    let scale = |a: &Vec<Vec<i64>>, c: i64| -> Vec<Vec<i64>> {
        a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
    };
    let representation = sub(&mul(&ef, &fm), &mul(&fm, &ef)) == h
        && sub(&mul(&h, &ef), &mul(&ef, &h)) == scale(&ef, 2)
        && sub(&mul(&h, &fm), &mul(&fm, &h)) == scale(&fm, -2);
    let support: BTreeSet<i64> = (0..dim).map(|j| h[j][j]).collect();

    let d = Dims::new(1, 1);
    let alpha = RootVec::eps(d, 1).to_weight();
    let aa = form_eval(&alpha, &alpha)?;
    let wt = |m: i64| alpha.scale(&Scalar::from_rational(rat(m, 2)));
    let mut integral = true;
    let mut directional = true;
    for &m in &support {
        let lam = wt(m);
        let pairing = (form_eval(&lam, &alpha)?.scale(&rat_int(2)))
            .as_rational()
            .zip(aa.as_rational())
            .map(|(x, y)| x / y);
        let Some(c) = pairing.filter(|c| c.is_integer()) else {
            integral = false;
            continue;
        };
        let c = c.to_integer();
        // λ ∓ α has h-eigenvalue m ∓ 2
        if c > 0.into() {
            directional &= support.contains(&(m - 2));
        } else if c < 0.into() {
            directional &= support.contains(&(m + 2));
        }
    }
    Ok(Sl2Report {
        dim,
        support: support.into_iter().collect(),
        representation,
        integral,
        directional,
    })
}

// ---------------------------------------------------------------------------
// Report

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepResult {
    pub name: String,
    pub pass: bool,
    pub witnesses: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleReport {
    pub k: usize,
    pub zeta: String,
    pub window: u32,
    pub steps: Vec<StepResult>,
}

impl ExampleReport {
    pub fn all_pass(&self) -> bool {
        self.steps.iter().all(|s| s.pass)
    }
}

fn roots_json(v: &[RootVec]) -> Value {
    crate::json::roots(v)
}

/// Runs every check of the example on the window `n`.
pub fn verify_example(p: &Params, n: u32) -> Result<ExampleReport> {
    let sys = p.system();
    let mut steps = Vec::new();
    let mut push = |name: &str, pass: bool, witnesses: Value| {
        steps.push(StepResult { name: name.into(), pass, witnesses });
    };

    let module = K1Module::new(p.clone());
    let radius = (n as i64).max(10);
    let bracket = module.check_bracket_ef(radius);
    let inj_e = module.injectivity_witness(B1Generator::E, radius)?;
    let inj_f = module.injectivity_witness(B1Generator::F, radius)?;
    push(
        "k1_action",
        bracket && inj_e && inj_f,
        json!({
            "mu_radius": radius,
            "bracket_ef": bracket,
            "e_injective": inj_e,
            "f_injective": inj_f,
            "f_coeff_at_zeta": crate::json::scalar(&module.f_coeff(&p.zeta)),
        }),
    );

    let r = rho(p);
    let support_ok = (-radius..=radius).all(|j| {
        let mu = &p.zeta + rat_int(2 * j);
        let w = k1_weight(p, &mu).unwrap();
        supportcalc::member(&k1_support(p), &w, 8).unwrap_or(false)
            && level(&w) == Scalar::from_int(2 * p.k as i64 + 2)
    });
    let off_coset = k1_weight(p, &(&p.zeta + Rational::one())).is_err();
    push(
        "k1_support",
        support_ok && off_coset,
        json!({ "rho": r.to_string(), "level": level(&r).to_string(), "coset_enforced": off_coset }),
    );

    let (q1, q2, q3) = (p1(p), p2(p), p3(p, n));
    let q3_listed = p3_listed(p, n);
    let v1 = is_parabolic_in(&s2_listed(p), |x| q1.contains(x));
    let v2 = is_parabolic_in(&s3_listed(p), |x| q2.contains(x));
    let spec3 = p3_spec(p);
    let v3 = is_parabolic(&sys, |x| spec3.contains(x), n);
    let level0: Vec<RootVec> = sys.enumerate_window(0);
    push(
        "parabolic_sets",
        q1 == p1_listed(p)
            && q2 == p2_listed(p)
            && q3 == q3_listed
            && v1.is_empty()
            && v2.is_empty()
            && v3.is_empty()
            && level0 == s3_listed(p),
        json!({
            "P1": roots_json(&q1),
            "P2": roots_json(&q2),
            "P3_size": q3.len(),
            "P3_matches_listing_with_positive_imaginary": q3 == q3_listed,
            "violations": [v1.len(), v2.len(), v3.len()],
            "functionals": [p1_spec(p).outer.to_json(), p2_spec(p).outer.to_json(), p3_spec(p).outer.to_json()],
        }),
    );

    let cores = [levi_core(&q1), levi_core(&q2), levi_core(&q3)];
    let types = [recognize(&cores[0])?, recognize(&cores[1])?, recognize(&cores[2])?];
    let want = ["A1".to_string(), "C(2)".to_string(), format!("D({},1)", p.k)];
    let names: Vec<String> = types.iter().map(|t| t.summary()).collect();
    push(
        "levi_types",
        names == want
            && cores[0] == s1_listed(p)
            && cores[1] == s2_listed(p)
            && cores[2] == s3_listed(p),
        json!({ "types": names }),
    );

    let bound = step1_bound(p)?;
    let parity = step1_parity_target(p);
    let literal = step1_literal_target(p);
    let coarse = step1_coarse_target(p);
    let eq_parity = support_eq(&bound, &parity, 16)?;
    let in_coarse = support_subset(&bound, &coarse, 16)?;
    let eq_literal = support_eq(&bound, &literal, 16)?;
    let witness = supportcalc::difference_witness(&bound, &literal, 16);
    push(
        "step1_bound",
        eq_parity && in_coarse,
        json!({
            "bound": bound.to_json(),
            "equals_rho_2Zf1_plus_0_f1-ek_-2ek": eq_parity,
            "within_rho_Zf1_minus_012ek": in_coarse,
            "equals_rho_2Zf1_minus_012ek": eq_literal,
            "outside_rho_2Zf1_minus_012ek": witness.map(|w| w.to_string()),
        }),
    );

    let s3 = s3_listed(p);
    let (dk_b, dk_roots) = dk_base_and_roots(p);
    let b_ok = base_check(&base_b(p), &s3, 16)?;
    let bp_ok = base_check(&base_b_prime(p), &s3, 16)?;
    let dk_ok = base_check(&dk_b, &dk_roots, 16)?;
    let s2 = step2_scalar(p, 2 * n as i64)?;
    push(
        "step2",
        b_ok && bp_ok && dk_ok && s2.r == 2 && s2.five_minus_r && s2.e_beta_k_vanishes,
        json!({
            "B": roots_json(&base_b(p)),
            "B_prime": roots_json(&base_b_prime(p)),
            "B_is_base": b_ok,
            "B_prime_is_base": bp_ok,
            "Dk_base": dk_ok,
            "scalar": s2,
            "depends_on": format!("rho(t_e{}) + rho(t_e{}) = 3 + 2; other rho not checked", p.k - 1, p.k),
        }),
    );

    let s3r = step3_checks(p, n);
    push(
        "step3",
        s3r.pass(),
        json!({ "delta": roots_json(&step3_delta(p)), "report": s3r }),
    );

    let s4 = step4_checks(p, n)?;
    push("step4", s4.pass(), serde_json::to_value(&s4).unwrap());

    Ok(ExampleReport {
        k: p.k,
        zeta: fmt_rational(&p.zeta),
        window: n,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(k: usize) -> Params {
        Params::new(k, rat(1, 2)).unwrap()
    }

    #[test]
    fn params_validate() {
        assert!(Params::new(1, rat(1, 2)).is_err());
        assert!(Params::new(2, rat(2, 1)).is_err());
    }

    #[test]
    fn action_table() {
        let p = params(2);
        let m = K1Module::new(p.clone());
        let v = K1Vector::basis(p.zeta.clone());
        assert_eq!(m.act(B1Generator::E, &v).unwrap(), K1Vector::basis(rat(5, 2)));
        let c = m.act(B1Generator::C, &v).unwrap();
        assert_eq!(c.coeff(&p.zeta), Scalar::from_int(6));
        let f = m.act(B1Generator::F, &v).unwrap();
        let want = Scalar::from_coeffs([(1, rat(-1, 2)), (0, rat(1, 8))]);
        assert_eq!(f.coeff(&rat(-3, 2)), want);
        assert!(m.act(B1Generator::D, &v).unwrap().is_zero());
        assert!(m.act(B1Generator::Teps(3), &v).is_err());
    }

    #[test]
    fn bracket_and_perturbation() {
        let p = params(2);
        let mut m = K1Module::new(p);
        assert!(m.check_bracket_ef(10));
        assert!(m.check_bracket_ef(0));
        m.f_scale = rat(-1, 1);
        assert!(!m.check_bracket_ef(0));
    }

    #[test]
    fn injectivity() {
        let p = params(2);
        let mut m = K1Module::new(p);
        assert!(m.injectivity_witness(B1Generator::E, 10).unwrap());
        assert!(m.injectivity_witness(B1Generator::F, 10).unwrap());
        // ξ = (μ − 1)² at μ = 1/2
        m.xi = XiMode::Specialized(rat(1, 4));
        assert!(!m.injectivity_witness(B1Generator::F, 10).unwrap());
    }

    #[test]
    fn rho_pairings() {
        let p = params(3);
        let r = rho(&p);
        let d = p.dims();
        let t2d1 = form_eval(&r, &f1(d).scale(2).to_weight()).unwrap();
        assert_eq!(t2d1, Scalar::from_int(-1));
        for i in 1..=3 {
            let t = form_eval(&r, &e(d, i).to_weight()).unwrap();
            assert_eq!(t, Scalar::from_int(3 - i as i64 + 2));
        }
        assert_eq!(level(&r), Scalar::from_int(8));
        assert!(k1_weight(&p, &rat(3, 2)).is_err());
    }

    #[test]
    fn step1_layers() {
        let p = params(2);
        let b = step1_bound(&p).unwrap();
        assert!(support_eq(&b, &step1_parity_target(&p), 16).unwrap());
        assert!(support_subset(&b, &step1_coarse_target(&p), 16).unwrap());
        assert!(!support_subset(&b, &step1_literal_target(&p), 16).unwrap());
        let empty = CosetSupport::empty(p.dims());
        assert!(step1_bound_from(&p, &empty, Some(1)).unwrap().is_empty());
        let uncapped = step1_bound_from(&p, &k1_support(&p), None).unwrap();
        assert!(support_subset(&b, &uncapped, 16).unwrap());
        assert!(!support_subset(&uncapped, &b, 16).unwrap());
    }

    #[test]
    fn bases() {
        for k in 2..=4 {
            let p = params(k);
            let s3 = s3_listed(&p);
            assert!(base_check(&base_b(&p), &s3, 8).unwrap());
            assert!(base_check(&base_b_prime(&p), &s3, 8).unwrap());
            let mut short = base_b(&p);
            short.pop();
            assert!(!base_check(&short, &s3, 8).unwrap());
        }
    }

    #[test]
    fn step2_values() {
        let s = step2_scalar(&params(3), 6).unwrap();
        assert_eq!(s.r, 2);
        assert_eq!(s.s, "3");
        assert!(s.five_minus_r && s.e_beta_k_vanishes);
    }

    #[test]
    fn step3_and_reduced_delta() {
        for k in 2..=4 {
            let p = params(k);
            assert!(step3_checks(&p, 4).pass());
            let mut delta = step3_delta(&p);
            delta.remove(1);
            let r = step3_checks_with(&p, &delta, 4);
            assert!(r.independent && !r.covers_window);
        }
    }

    #[test]
    fn sl2_small() {
        let r = sl2_string_oracle(3).unwrap();
        assert_eq!(r.support, vec![-2, 0, 2]);
        assert!(r.pass());
        assert_eq!(sl2_string_oracle(1).unwrap().support, vec![0]);
        assert_eq!(sl2_string_oracle(4).unwrap().support, vec![-3, -1, 1, 3]);
        assert!(sl2_string_oracle(0).is_err());
    }

    #[test]
    fn step4_and_report() {
        for k in 2..=3 {
            let p = params(k);
            let s4 = step4_checks(&p, 6).unwrap();
            assert!(s4.pass(), "{s4:?}");
            let rep = verify_example(&p, 4).unwrap();
            let failed: Vec<_> = rep.steps.iter().filter(|s| !s.pass).collect();
            assert!(failed.is_empty(), "{failed:?}");
        }
    }

    #[test]
    fn labeling_values() {
        let p = params(2);
        let d = p.dims();
        let lab = derived_labeling(&p, 6);
        let r = |s: &str| RootVec::parse(s, d).unwrap();
        assert_eq!(lab.get(&r("2f1")), Some(Label::In));
        assert_eq!(lab.get(&r("-2f1 - 2d")), Some(Label::In));
        assert_eq!(lab.get(&r("2f1 + 4d")), Some(Label::Ln));
        assert_eq!(lab.get(&r("e1 - e2 - 3d")), Some(Label::Ln));
        // ±2δ₁ lives on even levels only
        assert!(!p.system().contains(&r("2f1 + 3d")));
        assert_eq!(lab.get(&r("2f1 + 3d")), None);
    }

    #[test]
    fn p3_is_listing_plus_positive_imaginary() {
        let p = params(2);
        assert_eq!(p3(&p, 3), p3_listed(&p, 3));
        assert!(p3(&p, 3).contains(&RootVec::delta(p.dims())));
    }
}

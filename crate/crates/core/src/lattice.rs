//! Weight lattice over the basis `ε_1..ε_k, δ_1..δ_l, δ, Λ₀` and the invariant
//! form.
//!
//! Two representations live here:
//!
//! * [`Weight`] carries [`Scalar`] coefficients and can hold module weights
//!   such as ϱ (rational entries, a nonzero level, ξ-dependence).
//! * [`RootVec`] is the integer vector `(ε-part, δ_p-part, δ-coefficient)`
//!   used by every root-system computation. Converting a `Weight` into a
//!   `RootVec` is the "lattice root candidate" check: integer coefficients
//!   and a vanishing `Λ₀` part.
//!
//! The form is `(ε_i,ε_j)=δ_ij`, `(δ_p,δ_q)=−δ_pq`, `(ε_i,δ_p)=0`, `δ`
//! orthogonal to every root, `(Λ₀,δ)=1`, `(Λ₀,Λ₀)=0`. The identification of
//! `h` with `h*` goes through this form, so `λ(t_α)` is `form(λ, α)`, the
//! eigenvalue of the central element `c` is `form(λ, δ)` and `λ(d)` is the
//! δ-coefficient.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, rat_int, Rational, Scalar};

/// Ambient dimensions `(k, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dims {
    pub k: usize,
    pub l: usize,
}

impl Dims {
    pub fn new(k: usize, l: usize) -> Self {
        Self { k, l }
    }
}

/// One basis vector of the weight space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `ε_i`, 1-based.
    Eps(usize),
    /// `δ_p`, 1-based.
    Del(usize),
    /// The null root δ.
    Delta,
    /// `Λ₀`, dual to the canonical central element.
    Lam0,
}

impl Basis {
    pub fn symbol(&self) -> String {
        match self {
            Basis::Eps(i) => format!("e{i}"),
            Basis::Del(p) => format!("f{p}"),
            Basis::Delta => "d".into(),
            Basis::Lam0 => "L0".into(),
        }
    }
}

/// An exact weight.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    pub eps: Vec<Scalar>,
    pub del: Vec<Scalar>,
    pub dlt: Scalar,
    pub lam0: Scalar,
}

impl Weight {
    pub fn zero(dims: Dims) -> Self {
        Self {
            eps: vec![Scalar::zero(); dims.k],
            del: vec![Scalar::zero(); dims.l],
            dlt: Scalar::zero(),
            lam0: Scalar::zero(),
        }
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.eps.len(), self.del.len())
    }

    pub fn basis(dims: Dims, b: Basis) -> Result<Self> {
        let mut w = Self::zero(dims);
        *w.coord_mut(b)? = Scalar::one();
        Ok(w)
    }

    pub fn coord(&self, b: Basis) -> Result<&Scalar> {
        match b {
            Basis::Eps(i) if (1..=self.eps.len()).contains(&i) => Ok(&self.eps[i - 1]),
            Basis::Del(p) if (1..=self.del.len()).contains(&p) => Ok(&self.del[p - 1]),
            Basis::Delta => Ok(&self.dlt),
            Basis::Lam0 => Ok(&self.lam0),
            _ => Err(Error::rejected(format!(
                "basis vector {} outside dims {:?}",
                b.symbol(),
                self.dims()
            ))),
        }
    }

    pub fn coord_mut(&mut self, b: Basis) -> Result<&mut Scalar> {
        let dims = self.dims();
        match b {
            Basis::Eps(i) if (1..=dims.k).contains(&i) => Ok(&mut self.eps[i - 1]),
            Basis::Del(p) if (1..=dims.l).contains(&p) => Ok(&mut self.del[p - 1]),
            Basis::Delta => Ok(&mut self.dlt),
            Basis::Lam0 => Ok(&mut self.lam0),
            _ => Err(Error::rejected(format!(
                "basis vector {} outside dims {dims:?}",
                b.symbol()
            ))),
        }
    }

    /// All coordinates in basis order.
    pub fn coords(&self) -> impl Iterator<Item = (Basis, &Scalar)> {
        self.eps
            .iter()
            .enumerate()
            .map(|(i, s)| (Basis::Eps(i + 1), s))
            .chain(self.del.iter().enumerate().map(|(p, s)| (Basis::Del(p + 1), s)))
            .chain(std::iter::once((Basis::Delta, &self.dlt)))
            .chain(std::iter::once((Basis::Lam0, &self.lam0)))
    }

    pub fn is_zero(&self) -> bool {
        self.coords().all(|(_, s)| s.is_zero())
    }

    fn zip_with(&self, other: &Weight, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Weight> {
        check_dims(self, other)?;
        Ok(Weight {
            eps: self.eps.iter().zip(&other.eps).map(|(a, b)| f(a, b)).collect(),
            del: self.del.iter().zip(&other.del).map(|(a, b)| f(a, b)).collect(),
            dlt: f(&self.dlt, &other.dlt),
            lam0: f(&self.lam0, &other.lam0),
        })
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Weight {
        Weight {
            eps: self.eps.iter().map(|a| a * s).collect(),
            del: self.del.iter().map(|a| a * s).collect(),
            dlt: &self.dlt * s,
            lam0: &self.lam0 * s,
        }
    }

    pub fn neg(&self) -> Weight {
        self.scale(&Scalar::from_int(-1))
    }

    /// The projection onto `span{ε_i, δ_p}` (δ and Λ₀ parts dropped).
    pub fn dot_part(&self) -> Weight {
        let mut w = self.clone();
        w.dlt = Scalar::zero();
        w.lam0 = Scalar::zero();
        w
    }

    /// Rebuilds the unique weight with prescribed pairings against the basis:
    /// `(w, ε_i)`, `(w, δ_p)`, `(w, δ)` (the level) and `(w, Λ₀)`.
    pub fn from_pairings(
        with_eps: Vec<Scalar>,
        with_del: Vec<Scalar>,
        with_delta: Scalar,
        with_lam0: Scalar,
    ) -> Weight {
        Weight {
            eps: with_eps,
            del: with_del.into_iter().map(|s| -s).collect(),
            dlt: with_lam0,
            lam0: with_delta,
        }
    }

    /// Integer root-lattice view; fails unless every coefficient is an integer
    /// and the `Λ₀` coefficient vanishes.
    pub fn to_root_vec(&self) -> Result<RootVec> {
        if !self.lam0.is_zero() {
            return Err(Error::rejected(format!("{self} has a nonzero L0 part")));
        }
        let int = |s: &Scalar| {
            s.as_integer()
                .ok_or_else(|| Error::rejected(format!("{self} has a non-integer coefficient")))
        };
        let mut c = SmallVec::with_capacity(self.eps.len() + self.del.len() + 1);
        for s in self.eps.iter().chain(&self.del).chain(std::iter::once(&self.dlt)) {
            c.push(int(s)?);
        }
        Ok(RootVec { k: self.eps.len() as u16, c })
    }

    pub fn parse(s: &str, dims: Dims) -> Result<Weight> {
        crate::literal::parse_weight(s, dims)
    }
}

fn check_dims(a: &Weight, b: &Weight) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::rejected(format!(
            "dimension mismatch: {:?} vs {:?}",
            a.dims(),
            b.dims()
        )));
    }
    Ok(())
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (b, s) in self.coords() {
            if s.is_zero() {
                continue;
            }
            let sym = b.symbol();
            match s.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    let abs = r.abs();
                    let mag = if abs.is_one() { String::new() } else { fmt_rational(&abs) };
                    match (first, neg) {
                        (true, false) => write!(f, "{mag}{sym}")?,
                        (true, true) => write!(f, "-{mag}{sym}")?,
                        (false, false) => write!(f, " + {mag}{sym}")?,
                        (false, true) => write!(f, " - {mag}{sym}")?,
                    }
                }
                None => {
                    if first {
                        write!(f, "({s}){sym}")?;
                    } else {
                        write!(f, " + ({s}){sym}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

/// The form table for given `(k, l)`; evaluates the invariant form on
/// weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormTable {
    pub k: usize,
    pub l: usize,
}

impl FormTable {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::rejected("form table needs k >= 1 and l >= 1"));
        }
        Ok(Self { k, l })
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.k, self.l)
    }

    pub fn eval(&self, a: &Weight, b: &Weight) -> Result<Scalar> {
        if a.dims() != self.dims() || b.dims() != self.dims() {
            return Err(Error::rejected(format!(
                "weights of dims {:?}/{:?} used with form table {:?}",
                a.dims(),
                b.dims(),
                self.dims()
            )));
        }
        Ok(pair(a, b))
    }
}

fn pair(a: &Weight, b: &Weight) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.eps.iter().zip(&b.eps) {
        acc += &(x * y);
    }
    for (x, y) in a.del.iter().zip(&b.del) {
        acc -= &(x * y);
    }
    acc += &(&a.dlt * &b.lam0);
    acc += &(&a.lam0 * &b.dlt);
    acc
}

/// The invariant form `(a, b)`.
pub fn form_eval(a: &Weight, b: &Weight) -> Result<Scalar> {
    check_dims(a, b)?;
    Ok(pair(a, b))
}

/// `(w, δ)`: the scalar by which the canonical central element acts.
pub fn level(w: &Weight) -> Scalar {
    w.lam0.clone()
}

/// The vector `t_w` representing `w` through the form. Coordinates are
/// shared between `h` and `h*`, so this is the identity; `λ(t_α)` is then
/// `form_eval(λ, t_rep(α))`.
pub fn t_rep(w: &Weight) -> Weight {
    w.clone()
}

/// An integer vector in the root lattice `span_Z{ε_i, δ_p, δ}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootVec {
    k: u16,
    c: SmallVec<[i64; 8]>,
}

impl RootVec {
    pub fn zero(dims: Dims) -> Self {
        Self {
            k: dims.k as u16,
            c: SmallVec::from_elem(0, dims.k + dims.l + 1),
        }
    }

    pub fn from_parts(eps: &[i64], del: &[i64], dlt: i64) -> Self {
        let mut c: SmallVec<[i64; 8]> = SmallVec::with_capacity(eps.len() + del.len() + 1);
        c.extend_from_slice(eps);
        c.extend_from_slice(del);
        c.push(dlt);
        Self { k: eps.len() as u16, c }
    }

    pub fn dims(&self) -> Dims {
        let k = self.k as usize;
        Dims::new(k, self.c.len() - k - 1)
    }

    /// `ε_i` (1-based).
    pub fn eps(dims: Dims, i: usize) -> Self {
        assert!((1..=dims.k).contains(&i), "eps index {i} out of range");
        let mut v = Self::zero(dims);
        v.c[i - 1] = 1;
        v
    }

    /// `δ_p` (1-based).
    pub fn del(dims: Dims, p: usize) -> Self {
        assert!((1..=dims.l).contains(&p), "del index {p} out of range");
        let mut v = Self::zero(dims);
        v.c[dims.k + p - 1] = 1;
        v
    }

    pub fn delta(dims: Dims) -> Self {
        let mut v = Self::zero(dims);
        *v.c.last_mut().unwrap() = 1;
        v
    }

    pub fn eps_coeffs(&self) -> &[i64] {
        &self.c[..self.k as usize]
    }

    pub fn del_coeffs(&self) -> &[i64] {
        &self.c[self.k as usize..self.c.len() - 1]
    }

    /// Coefficient of δ.
    pub fn dlt(&self) -> i64 {
        *self.c.last().unwrap()
    }

    /// All coordinates: ε-part, δ_p-part, δ-coefficient.
    pub fn raw(&self) -> &[i64] {
        &self.c
    }

    pub fn with_dlt(&self, n: i64) -> Self {
        let mut v = self.clone();
        *v.c.last_mut().unwrap() = n;
        v
    }

    /// Projection onto `span{ε_i, δ_p}`.
    pub fn dot(&self) -> Self {
        self.with_dlt(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn dot_is_zero(&self) -> bool {
        self.c[..self.c.len() - 1].iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Self {
        Self {
            k: self.k,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, o: &RootVec) -> Self {
        debug_assert_eq!(self.dims(), o.dims());
        Self {
            k: self.k,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &RootVec) -> Self {
        debug_assert_eq!(self.dims(), o.dims());
        Self {
            k: self.k,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, m: i64) -> Self {
        Self {
            k: self.k,
            c: self.c.iter().map(|x| x * m).collect(),
        }
    }

    /// The form on the root lattice (δ is isotropic and orthogonal to all).
    pub fn form(&self, o: &RootVec) -> i64 {
        let k = self.k as usize;
        let n = self.c.len() - 1;
        let mut acc = 0;
        for i in 0..k {
            acc += self.c[i] * o.c[i];
        }
        for i in k..n {
            acc -= self.c[i] * o.c[i];
        }
        acc
    }

    pub fn norm(&self) -> i64 {
        self.form(self)
    }

    pub fn to_weight(&self) -> Weight {
        let k = self.k as usize;
        let n = self.c.len() - 1;
        Weight {
            eps: self.c[..k].iter().map(|&x| Scalar::from_int(x)).collect(),
            del: self.c[k..n].iter().map(|&x| Scalar::from_int(x)).collect(),
            dlt: Scalar::from_int(self.c[n]),
            lam0: Scalar::zero(),
        }
    }

    /// Rational coordinates (ε, δ_p, δ), used by the exact solvers.
    pub fn to_rationals(&self) -> Vec<Rational> {
        self.c.iter().map(|&x| rat_int(x)).collect()
    }

    pub fn parse(s: &str, dims: Dims) -> Result<RootVec> {
        Weight::parse(s, dims)?.to_root_vec()
    }
}

impl Ord for RootVec {
    /// δ-level first, then the remaining coordinates lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dlt()
            .cmp(&other.dlt())
            .then_with(|| self.k.cmp(&other.k))
            .then_with(|| self.c.cmp(&other.c))
    }
}

impl PartialOrd for RootVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k as usize;
        let n = self.c.len() - 1;
        let mut first = true;
        for (idx, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let sym = if idx < k {
                format!("e{}", idx + 1)
            } else if idx < n {
                format!("f{}", idx - k + 1)
            } else {
                "d".to_string()
            };
            let mag = if x.abs() == 1 { String::new() } else { x.abs().to_string() };
            match (first, x < 0) {
                (true, false) => write!(f, "{mag}{sym}")?,
                (true, true) => write!(f, "-{mag}{sym}")?,
                (false, false) => write!(f, " + {mag}{sym}")?,
                (false, true) => write!(f, " - {mag}{sym}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl From<&RootVec> for Weight {
    fn from(r: &RootVec) -> Weight {
        r.to_weight()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn d() -> Dims {
        Dims::new(2, 2)
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s, d()).unwrap()
    }

    #[test]
    fn form_examples() {
        assert_eq!(form_eval(&w("e1"), &w("e1")).unwrap(), Scalar::from_int(1));
        assert_eq!(form_eval(&w("f1"), &w("f1")).unwrap(), Scalar::from_int(-1));
        assert_eq!(form_eval(&w("d"), &w("e1 + f1 + 5d")).unwrap(), Scalar::zero());
        assert_eq!(form_eval(&w("L0"), &w("d")).unwrap(), Scalar::from_int(1));
        assert_eq!(form_eval(&w("L0"), &w("L0")).unwrap(), Scalar::zero());
        assert_eq!(form_eval(&w("e1"), &w("f1")).unwrap(), Scalar::zero());
    }

    #[test]
    fn form_rejects_mismatched_dims() {
        let a = Weight::parse("e1", Dims::new(1, 1)).unwrap();
        assert!(matches!(form_eval(&a, &w("e1")), Err(Error::Rejected(_))));
        let table = FormTable::new(2, 2).unwrap();
        assert!(table.eval(&a, &a).is_err());
        assert!(FormTable::new(0, 1).is_err());
    }

    #[test]
    fn level_of_weights() {
        assert_eq!(level(&w("3L0 + e1")), Scalar::from_int(3));
        assert_eq!(level(&w("e1 - f2 + 7d")), Scalar::zero());
        // level agrees with the form against δ
        let x = w("(1/2 - x)L0 + e2");
        assert_eq!(level(&x), form_eval(&x, &w("d")).unwrap());
    }

    #[test]
    fn t_rep_pairs_through_the_form() {
        let lam = w("2e1 + 1/2f1 + 6L0");
        let alpha = w("2f1");
        assert_eq!(
            form_eval(&lam, &t_rep(&alpha)).unwrap(),
            Scalar::from_rational(rat(-1, 1))
        );
        assert_eq!(form_eval(&Weight::zero(d()), &t_rep(&alpha)).unwrap(), Scalar::zero());
    }

    #[test]
    fn from_pairings_inverts_the_form() {
        let target = w("(x)e1 - 3e2 + 1/3f1 + 2d + 5L0");
        let basis: Vec<Weight> = [Basis::Eps(1), Basis::Eps(2)]
            .iter()
            .map(|b| Weight::basis(d(), *b).unwrap())
            .collect();
        let with_eps = basis.iter().map(|b| form_eval(&target, b).unwrap()).collect();
        let with_del = (1..=2)
            .map(|p| form_eval(&target, &Weight::basis(d(), Basis::Del(p)).unwrap()).unwrap())
            .collect();
        let rebuilt = Weight::from_pairings(
            with_eps,
            with_del,
            form_eval(&target, &w("d")).unwrap(),
            form_eval(&target, &w("L0")).unwrap(),
        );
        assert_eq!(rebuilt, target);
    }

    #[test]
    fn root_vec_conversion() {
        let r = w("e1 - 2f2 + 3d").to_root_vec().unwrap();
        assert_eq!(r.eps_coeffs(), &[1, 0]);
        assert_eq!(r.del_coeffs(), &[0, -2]);
        assert_eq!(r.dlt(), 3);
        assert_eq!(r.norm(), 1 - 4);
        assert_eq!(r.to_weight(), w("e1 - 2f2 + 3d"));
        assert!(w("1/2e1").to_root_vec().is_err());
        assert!(w("e1 + L0").to_root_vec().is_err());
        assert!(w("(x)e1").to_root_vec().is_err());
    }

    #[test]
    fn root_vec_display_and_order() {
        let dims = d();
        let a = RootVec::from_parts(&[1, -1], &[0, 2], -3);
        assert_eq!(a.to_string(), "e1 - e2 + 2f2 - 3d");
        assert_eq!(RootVec::zero(dims).to_string(), "0");
        assert!(RootVec::delta(dims) > RootVec::eps(dims, 1));
        assert_eq!(RootVec::parse(&a.to_string(), dims).unwrap(), a);
    }
}

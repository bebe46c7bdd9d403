//! Exact rational linear algebra and a bounded solver for
//! `target ∈ span_Z(free gens) + span_N(nonneg gens)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{rat_int, Rational};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<Rational>> = vectors.to_vec();
    rref(&mut m).len()
}

pub fn rank_i64(vectors: &[Vec<i64>]) -> usize {
    let v: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|r| r.iter().map(|&x| rat_int(x)).collect())
        .collect();
    rank(&v)
}

/// Whether a generator may take any integer coefficient or only `≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Free,
    NonNeg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    /// Integer coefficients, one per generator.
    Found(Vec<BigInt>),
    /// The target is not in the rational span of the generators.
    NotInSpan,
    /// Generators are independent and the unique rational solution is not
    /// admissible (non-integral or wrong sign).
    NoSolution,
    /// Generators are dependent and no admissible solution was found among
    /// free-parameter values within the bound.
    Indeterminate,
}

impl Solve {
    pub fn found(&self) -> bool {
        matches!(self, Solve::Found(_))
    }
}

/// Cap on enumerated free-parameter combinations in [`solve_cone`].
const MAX_ENUM: u64 = 250_000;

/// Finds integer coefficients `c` with `Σ c_g·g = target`, `c_g ≥ 0` for
/// [`Sign::NonNeg`] generators.
///
/// Independent generators are decided exactly. Otherwise the free parameters
/// of the solution space are enumerated in `[-bound, bound]` (or
/// `[0, bound]` for nonneg generators).
pub fn solve_cone(gens: &[(Vec<Rational>, Sign)], target: &[Rational], bound: u32) -> Solve {
    let dim = target.len();
    let m = gens.len();
    if m == 0 {
        return if target.iter().all(|x| x.is_zero()) {
            Solve::Found(vec![])
        } else {
            Solve::NotInSpan
        };
    }
    // augmented matrix, rows = coordinates
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = gens.iter().map(|(g, _)| g[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&m) {
        return Solve::NotInSpan;
    }
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();

    let check = |free_vals: &[BigInt]| -> Option<Vec<BigInt>> {
        let mut coeffs = vec![BigInt::zero(); m];
        for (f, v) in free.iter().zip(free_vals) {
            coeffs[*f] = v.clone();
        }
        for (row, &pc) in pivots.iter().enumerate() {
            let mut val = a[row][m].clone();
            for (f, v) in free.iter().zip(free_vals) {
                val -= &a[row][*f] * Rational::from_integer(v.clone());
            }
            if !val.is_integer() {
                return None;
            }
            let n = val.to_integer();
            if gens[pc].1 == Sign::NonNeg && n.is_negative() {
                return None;
            }
            coeffs[pc] = n;
        }
        Some(coeffs)
    };

    if free.is_empty() {
        return match check(&[]) {
            Some(c) => Solve::Found(c),
            None => Solve::NoSolution,
        };
    }

    let b = bound as i64;
    let ranges: Vec<(i64, i64)> = free
        .iter()
        .map(|&f| match gens[f].1 {
            Sign::Free => (-b, b),
            Sign::NonNeg => (0, b),
        })
        .collect();
    let total: u64 = ranges
        .iter()
        .map(|(lo, hi)| (hi - lo + 1) as u64)
        .try_fold(1u64, |acc, n| acc.checked_mul(n))
        .unwrap_or(u64::MAX);
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    // enumerate small magnitudes first so witnesses stay minimal
    let mut order: Vec<Vec<i64>> = Vec::new();
    if total <= MAX_ENUM {
        loop {
            order.push(cur.clone());
            let mut i = 0;
            loop {
                if i == cur.len() {
                    break;
                }
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
        order.sort_by_key(|v| v.iter().map(|x| x.abs()).sum::<i64>());
    }
    for vals in order {
        let vals: Vec<BigInt> = vals.into_iter().map(BigInt::from).collect();
        if let Some(c) = check(&vals) {
            return Solve::Found(c);
        }
    }
    Solve::Indeterminate
}

/// Unique rational coordinates of `target` in terms of linearly independent
/// `gens`, or `None` when `target` is outside their span.
pub fn coordinates(gens: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let dim = target.len();
    let m = gens.len();
    let mut a: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = gens.iter().map(|g| g[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&m) || pivots.len() < m {
        return None;
    }
    let mut out = vec![Rational::zero(); m];
    for (row, &pc) in pivots.iter().enumerate() {
        out[pc] = a[row][m].clone();
    }
    Some(out)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

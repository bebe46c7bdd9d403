//! Exact scalars: univariate polynomials over the rationals in a formal
//! transcendental `x` (written ξ in the docs).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shorthand for an exact rational number.
pub type Rational = BigRational;

/// Build a rational from a numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Converts an integral rational to `i64`, if it fits.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// A polynomial in ξ with rational coefficients, stored sparsely.
///
/// The map never holds a zero coefficient, so structural equality is ring
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    coeffs: BTreeMap<u32, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The formal transcendental ξ.
    pub fn xi() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn monomial(exp: u32, c: Rational) -> Self {
        let mut s = Self::zero();
        if !c.is_zero() {
            s.coeffs.insert(exp, c);
        }
        s
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(0, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, Rational)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (e, c) in it {
            s.add_term(e, &c);
        }
        s
    }

    fn add_term(&mut self, exp: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of ξ^exp.
    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Some(r)` when the scalar has no ξ-dependence.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().as_ref().and_then(rational_to_i64)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * r)).collect(),
        }
    }

    /// Substitute a rational value for ξ.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let top = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for e in (0..=top).rev() {
            acc = acc * x + self.coeff(e);
        }
        acc
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, &-c);
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl fmt::Display for Scalar {
    /// Highest power first, e.g. `-3x + 1/2`, `x^2 - 1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag = fmt_rational(&abs);
            match *e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if *e == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coefficients_are_pruned() {
        let a = Scalar::from_coeffs([(1, rat(1, 2)), (0, rat(3, 1))]);
        let b = Scalar::from_coeffs([(1, rat(-1, 2))]);
        let s = &a + &b;
        assert_eq!(s, Scalar::from_int(3));
        assert_eq!(s.degree(), Some(0));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_and_eval() {
        // (x - 1/4)(x + 1/4) = x^2 - 1/16
        let p = &Scalar::xi() - &Scalar::from_rational(rat(1, 4));
        let q = &Scalar::xi() + &Scalar::from_rational(rat(1, 4));
        let pq = &p * &q;
        assert_eq!(pq.coeff(2), rat(1, 1));
        assert_eq!(pq.coeff(1), rat(0, 1));
        assert_eq!(pq.coeff(0), rat(-1, 16));
        assert_eq!(pq.eval(&rat(1, 4)), rat(0, 1));
        assert_eq!(pq.eval(&rat(1, 1)), rat(15, 16));
    }

    #[test]
    fn display() {
        let s = Scalar::from_coeffs([(1, rat(-3, 1)), (0, rat(1, 2))]);
        assert_eq!(s.to_string(), "-3x + 1/2");
        assert_eq!(Scalar::xi().to_string(), "x");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::monomial(2, rat(-1, 1)).to_string(), "-x^2");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational(" 7 "), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("a"), None);
        assert_eq!(fmt_rational(&rat(4, 2)), "2");
    }
}

//! Weight literal grammar.
//!
//! ```text
//! weight  := '0' | term (('+' | '-') term)*        (leading sign allowed)
//! term    := (coeff '*'?)? symbol
//! coeff   := rational | '(' scalar ')'
//! symbol  := 'e' INT | 'f' INT | 'd' | 'L0'
//! scalar  := sterm (('+' | '-') sterm)*             (leading sign allowed)
//! sterm   := rational ('*'? 'x' ('^' INT)?)? | 'x' ('^' INT)?
//! rational:= INT ('/' INT)?
//! ```
//!
//! Whitespace is ignored everywhere. `x` is the formal transcendental ξ.
//! Error positions refer to the input with whitespace removed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Basis, Dims, Weight};
use crate::scalar::{Rational, Scalar};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(std::str::from_utf8(&self.s[start..self.pos]).unwrap())
        }
    }

    fn index(&mut self) -> Result<usize> {
        match self.digits() {
            Some(d) => d.parse().or_else(|_| self.err("index too large")),
            None => self.err("expected an index"),
        }
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        let num = match self.digits() {
            Some(d) => d.parse::<BigInt>().unwrap(),
            None => return Ok(None),
        };
        if self.eat(b'/') {
            let den = match self.digits() {
                Some(d) => d.parse::<BigInt>().unwrap(),
                None => return self.err("expected a denominator"),
            };
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Some(Rational::new(num, den)))
        } else {
            Ok(Some(Rational::from_integer(num)))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat(b'+') {
            Some(false)
        } else if self.eat(b'-') {
            Some(true)
        } else {
            None
        }
    }

    fn xpow(&mut self) -> Result<u32> {
        if self.eat(b'^') {
            match self.digits() {
                Some(d) => d.parse().or_else(|_| self.err("exponent too large")),
                None => self.err("expected an exponent"),
            }
        } else {
            Ok(1)
        }
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        let mut first = true;
        loop {
            let neg = match self.sign() {
                Some(n) => n,
                None if first => false,
                None => break,
            };
            first = false;
            let coef = self.rational()?;
            let had_coef = coef.is_some();
            let mut c = coef.unwrap_or_else(Rational::one);
            if neg {
                c = -c;
            }
            if had_coef {
                self.eat(b'*');
            }
            let term = if self.eat(b'x') {
                Scalar::monomial(self.xpow()?, c)
            } else if had_coef {
                Scalar::from_rational(c)
            } else {
                return self.err("expected a number or x");
            };
            acc += &term;
        }
        Ok(acc)
    }

    fn symbol(&mut self, dims: Dims) -> Result<Basis> {
        let at = self.pos;
        let b = match self.bump() {
            Some(b'e') => Basis::Eps(self.index()?),
            Some(b'f') => Basis::Del(self.index()?),
            Some(b'd') => Basis::Delta,
            Some(b'L') => {
                if self.eat(b'0') {
                    Basis::Lam0
                } else {
                    return self.err("expected L0");
                }
            }
            _ => {
                self.pos = at;
                return self.err("expected one of e<i>, f<p>, d, L0");
            }
        };
        match b {
            Basis::Eps(i) if i == 0 || i > dims.k => {
                self.pos = at;
                self.err(format!("e{i} outside 1..={}", dims.k))
            }
            Basis::Del(p) if p == 0 || p > dims.l => {
                self.pos = at;
                self.err(format!("f{p} outside 1..={}", dims.l))
            }
            b => Ok(b),
        }
    }
}

/// Parses a weight literal against ambient dims.
pub fn parse_weight(input: &str, dims: Dims) -> Result<Weight> {
    let stripped: Vec<u8> = input.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut cur = Cursor { s: &stripped, pos: 0 };
    let mut w = Weight::zero(dims);
    if stripped == b"0" {
        return Ok(w);
    }
    if stripped.is_empty() {
        return cur.err("empty weight literal");
    }
    let mut first = true;
    while cur.peek().is_some() {
        let neg = match cur.sign() {
            Some(n) => n,
            None if first => false,
            None => return cur.err("expected + or -"),
        };
        first = false;
        let (mut coef, had_coef) = if cur.eat(b'(') {
            let s = cur.scalar()?;
            if !cur.eat(b')') {
                return cur.err("expected )");
            }
            (s, true)
        } else {
            match cur.rational()? {
                Some(r) => (Scalar::from_rational(r), true),
                None => (Scalar::one(), false),
            }
        };
        if had_coef {
            cur.eat(b'*');
        }
        let b = cur.symbol(dims)?;
        if neg {
            coef = -coef;
        }
        *w.coord_mut(b)? += &coef;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn d() -> Dims {
        Dims::new(3, 2)
    }

    #[test]
    fn parses_documented_forms() {
        let w = parse_weight("2e1 - 1/2f2 + 3d + (2)L0", d()).unwrap();
        assert_eq!(w.eps[0], Scalar::from_int(2));
        assert_eq!(w.del[1], Scalar::from_rational(rat(-1, 2)));
        assert_eq!(w.dlt, Scalar::from_int(3));
        assert_eq!(w.lam0, Scalar::from_int(2));

        let w = parse_weight("(1/2 - 3x)e1", d()).unwrap();
        assert_eq!(w.eps[0].coeff(0), rat(1, 2));
        assert_eq!(w.eps[0].coeff(1), rat(-3, 1));
    }

    #[test]
    fn whitespace_and_repeats() {
        let a = parse_weight(" - e 2 +e2+ e2 ", d()).unwrap();
        assert_eq!(a.eps[1], Scalar::from_int(1));
        let b = parse_weight("-d", d()).unwrap();
        assert_eq!(b.dlt, Scalar::from_int(-1));
        assert!(parse_weight("0", d()).unwrap().is_zero());
        let c = parse_weight("(x^2 - 2*x + 1)f1", d()).unwrap();
        assert_eq!(c.del[0].coeff(2), rat(1, 1));
        assert_eq!(c.del[0].coeff(1), rat(-2, 1));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "e0", "e4", "f3", "2", "e1 e2", "1/0e1", "(x e1", "L1", "q"] {
            assert!(parse_weight(bad, d()).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn display_round_trip() {
        for s in [
            "2e1 - 1/2f2 + 3d + 2L0",
            "(-3x + 1/2)e1",
            "-e3 + (x^2)f1 - 7/3L0",
            "0",
        ] {
            let w = parse_weight(s, d()).unwrap();
            assert_eq!(w.to_string(), s);
            assert_eq!(parse_weight(&w.to_string(), d()).unwrap(), w);
        }
    }
}

//! JSON conventions: weights are literal strings, rationals are `"p/q"`
//! strings, ξ-polynomials are `{exponent: "p/q"}` maps.

use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::lattice::{Dims, RootVec, Weight};
use crate::scalar::{fmt_rational, parse_rational, Rational, Scalar};

pub fn ser_root<S: Serializer>(r: &RootVec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_roots<S: Serializer, T: AsRef<[RootVec]>>(
    rs: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rs.as_ref().iter().map(|r| r.to_string()))
}

pub fn ser_weight<S: Serializer>(w: &Weight, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

pub fn roots(rs: &[RootVec]) -> Value {
    Value::Array(rs.iter().map(|r| Value::String(r.to_string())).collect())
}

pub fn weights(ws: &[Weight]) -> Value {
    Value::Array(ws.iter().map(|w| Value::String(w.to_string())).collect())
}

pub fn rational(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

pub fn scalar(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(r) => rational(&r),
        None => {
            let m: Map<String, Value> = s
                .coeffs()
                .map(|(e, c)| (e.to_string(), rational(c)))
                .collect();
            Value::Object(m)
        }
    }
}

/// Accepts integers or `"p/q"` strings.
pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::scalar::rat_int)
            .ok_or_else(|| Error::rejected(format!("expected an integer or \"p/q\", got {n}"))),
        Value::String(s) => {
            parse_rational(s).ok_or_else(|| Error::rejected(format!("bad rational {s:?}")))
        }
        other => Err(Error::rejected(format!("expected a rational, got {other}"))),
    }
}

pub fn parse_weight_list(v: &Value, dims: Dims) -> Result<Vec<Weight>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::rejected("expected an array of weight literals"))?;
    arr.iter()
        .map(|x| {
            let s = x
                .as_str()
                .ok_or_else(|| Error::rejected(format!("expected a weight literal string, got {x}")))?;
            Weight::parse(s, dims)
        })
        .collect()
}

pub fn parse_root_list(v: &Value, dims: Dims) -> Result<Vec<RootVec>> {
    parse_weight_list(v, dims)?
        .iter()
        .map(Weight::to_root_vec)
        .collect()
}

pub fn error_object(e: &Error) -> Value {
    let kind = match e {
        Error::Rejected(_) => "rejected",
        Error::Parse { .. } => "parse",
        Error::Indeterminate { .. } => "indeterminate",
        Error::NotFound(_) => "not_found",
    };
    json!({ "error": { "kind": kind, "message": e.to_string() } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn scalar_encoding() {
        assert_eq!(scalar(&Scalar::from_rational(rat(-1, 2))), json!("-1/2"));
        let p = Scalar::from_coeffs([(1, rat(1, 1)), (0, rat(-1, 4))]);
        assert_eq!(scalar(&p), json!({"0": "-1/4", "1": "1"}));
    }

    #[test]
    fn rational_values() {
        assert_eq!(parse_rational_value(&json!(3)).unwrap(), rat(3, 1));
        assert_eq!(parse_rational_value(&json!("-2/4")).unwrap(), rat(-1, 2));
        assert!(parse_rational_value(&json!(0.5)).is_err());
        assert!(parse_rational_value(&json!(null)).is_err());
    }

    #[test]
    fn weight_lists() {
        let d = Dims::new(2, 1);
        let ws = parse_weight_list(&json!(["e1 - e2", "2f1 + d"]), d).unwrap();
        assert_eq!(weights(&ws), json!(["e1 - e2", "2f1 + d"]));
        assert!(parse_root_list(&json!(["1/2e1"]), d).is_err());
        assert!(parse_weight_list(&json!("e1"), d).is_err());
    }
}

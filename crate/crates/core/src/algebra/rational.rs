//! Helpers for arbitrary-precision rationals and their canonical string form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a plain integer token.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 0,
        msg: format!("invalid rational \"{s}\""),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Canonical string: `"p"` for integers, `"p/q"` (q > 0, reduced) otherwise.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to scaling for values outside the direct conversion range.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Exact square root when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Squarefree part of a positive integer: returns `(s, m)` with `n = m² s`, `s` squarefree.
pub fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            square *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += 1;
    }
    free *= rest;
    (free, square)
}

/// `r < √c` for rational r and non-square c ≥ 0.
pub fn lt_sqrt(r: &Rational, c: &Rational) -> bool {
    r.is_negative() || &(r * r) < c
}

/// `r > √c` for rational r and c ≥ 0.
pub fn gt_sqrt(r: &Rational, c: &Rational) -> bool {
    r.is_positive() && &(r * r) > c
}

pub(crate) mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        value_to_rational(&v).map_err(de::Error::custom)
    }
}

pub(crate) mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
        v.iter()
            .map(value_to_rational)
            .collect::<std::result::Result<_, _>>()
            .map_err(de::Error::custom)
    }
}

/// Accepts either a `"p/q"` string or a JSON integer.
pub fn value_to_rational(v: &serde_json::Value) -> std::result::Result<Rational, String> {
    match v {
        serde_json::Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(rat)
            .ok_or_else(|| format!("non-integer number {n}; use a \"p/q\" string")),
        other => Err(format!("expected rational, got {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(fmt_rational(&frac(-3, 2)), "-3/2");
        assert_eq!(fmt_rational(&rat(7)), "7");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn floors_and_ceils() {
        assert_eq!(floor(&frac(-3, 2)), BigInt::from(-2));
        assert_eq!(ceil(&frac(-3, 2)), BigInt::from(-1));
        assert_eq!(ceil(&rat(4)), BigInt::from(4));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(
            squarefree_split(&BigInt::from(80)),
            (BigInt::from(5), BigInt::from(4))
        );
        assert_eq!(
            squarefree_split(&BigInt::from(2)),
            (BigInt::from(2), BigInt::from(1))
        );
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(rational_sqrt(&rat(2)), None);
    }

    #[test]
    fn sqrt_comparisons() {
        assert!(lt_sqrt(&frac(7, 5), &rat(2)));
        assert!(gt_sqrt(&frac(3, 2), &rat(2)));
        assert!(lt_sqrt(&rat(-5), &rat(2)));
        assert!(!gt_sqrt(&rat(-5), &rat(2)));
    }
}

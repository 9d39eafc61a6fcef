//! Reduced rational functions and extended-real evaluation.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A value of a rational function at a point: finite, or a (signless) pole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedValue {
    Finite(Rational),
    Infinity,
}

impl ExtendedValue {
    pub fn zero() -> Self {
        ExtendedValue::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedValue::Finite(v) if v.is_zero())
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, ExtendedValue::Finite(v) if v.is_positive())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtendedValue::Finite(v) if v.is_negative())
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            ExtendedValue::Infinity => None,
        }
    }

    /// `1/0 = ∞`, `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        match self {
            ExtendedValue::Infinity => Self::zero(),
            ExtendedValue::Finite(v) if v.is_zero() => ExtendedValue::Infinity,
            ExtendedValue::Finite(v) => ExtendedValue::Finite(v.recip()),
        }
    }

    /// Sum with `∞ + anything = ∞`.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => ExtendedValue::Finite(a + b),
            _ => ExtendedValue::Infinity,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtendedValue::Finite(a) => ExtendedValue::Finite(-a),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        match self {
            ExtendedValue::Finite(a) => ExtendedValue::Finite(a * c),
            ExtendedValue::Infinity if c.is_zero() => Self::zero(),
            ExtendedValue::Infinity => ExtendedValue::Infinity,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(v) => write!(f, "{v}"),
            ExtendedValue::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(ExtendedValue::Infinity)
        } else {
            super::rational::parse_rational(&s)
                .map(ExtendedValue::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}

/// `numerator / denominator`, always coprime with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

#[derive(Deserialize)]
struct RawRationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawRationalFunction::deserialize(d)?;
        RationalFunction::reduce(&raw.numerator, &raw.denominator).map_err(serde::de::Error::custom)
    }
}

impl RationalFunction {
    /// Divides out the common gcd and normalizes the denominator to be monic.
    pub fn reduce(n: &Polynomial, d: &Polynomial) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if n.is_zero() {
            return Ok(Self::zero());
        }
        let g = Polynomial::gcd(n, d);
        let (mut num, mut den) = if g.is_constant() {
            (n.clone(), d.clone())
        } else {
            (
                n.div_exact(&g).expect("gcd divides"),
                d.div_exact(&g).expect("gcd divides"),
            )
        };
        let l = den.leading().expect("nonzero").clone();
        if !l.is_one() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction {
            numerator: num,
            denominator: den,
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            numerator: Polynomial::zero(),
            denominator: Polynomial::one(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_constant()
    }

    pub fn eval_extended(&self, t: &Rational) -> ExtendedValue {
        let d = self.denominator.eval(t);
        if d.is_zero() {
            ExtendedValue::Infinity
        } else {
            ExtendedValue::Finite(self.numerator.eval(t) / d)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.denominator == other.denominator {
            return Self::reduce(&(&self.numerator + &other.numerator), &self.denominator)
                .expect("nonzero denominator");
        }
        let n = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let d = &self.denominator * &other.denominator;
        Self::reduce(&n, &d).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = &self.numerator * &other.numerator;
        let d = &self.denominator * &other.denominator;
        Self::reduce(&n, &d).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        Self::reduce(&self.denominator, &self.numerator)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    pub fn sub_constant(&self, c: &Rational) -> Self {
        let n = &self.numerator - &self.denominator.scale(c);
        if n.is_zero() {
            return Self::zero();
        }
        // Subtracting a constant never introduces a common factor.
        RationalFunction {
            numerator: n,
            denominator: self.denominator.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.numerator.derivative() * &self.denominator)
            - &(&self.numerator * &self.denominator.derivative());
        let d = &self.denominator * &self.denominator;
        Self::reduce(&n, &d).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.degree() == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn reduce_examples() {
        let f = RationalFunction::reduce(&p(&[0, -2, 0, 1]), &p(&[0, 0, 1])).unwrap();
        assert_eq!(f.numerator(), &p(&[-2, 0, 1]));
        assert_eq!(f.denominator(), &p(&[0, 1]));

        let g = RationalFunction::reduce(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!(g.numerator(), &p(&[1, 1]));
        assert_eq!(g.denominator(), &Polynomial::one());

        let z = RationalFunction::reduce(&Polynomial::zero(), &p(&[1, 0, 1])).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.denominator(), &Polynomial::one());

        assert!(matches!(
            RationalFunction::reduce(&p(&[1]), &Polynomial::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn monic_denominator() {
        let f = RationalFunction::reduce(&p(&[1]), &p(&[0, 2])).unwrap();
        assert_eq!(f.numerator(), &Polynomial::constant(frac(1, 2)));
        assert!(f.denominator().is_monic());
    }

    #[test]
    fn extended_evaluation() {
        let f = RationalFunction::reduce(&p(&[-1, 0, 1]), &p(&[0, 1])).unwrap();
        assert_eq!(f.eval_extended(&rat(0)), ExtendedValue::Infinity);
        assert_eq!(f.eval_extended(&rat(2)), ExtendedValue::Finite(frac(3, 2)));
        let g = RationalFunction::reduce(&p(&[-2, 0, 1]), &p(&[0, 1])).unwrap();
        assert_eq!(g.eval_extended(&rat(1)), ExtendedValue::Finite(rat(-1)));
    }

    #[test]
    fn extended_arithmetic() {
        let inf = ExtendedValue::Infinity;
        let two = ExtendedValue::Finite(rat(2));
        assert_eq!(inf.add(&inf), inf);
        assert_eq!(two.sub(&inf), inf);
        assert_eq!(inf.recip(), ExtendedValue::zero());
        assert_eq!(ExtendedValue::zero().recip(), inf);
    }

    #[test]
    fn derivative_of_alpha_p2() {
        // α = (x² − 1)/x, α' = 1 + 1/x²
        let f = RationalFunction::reduce(&p(&[-1, 0, 1]), &p(&[0, 1])).unwrap();
        let d = f.derivative();
        assert_eq!(d.numerator(), &p(&[1, 0, 1]));
        assert_eq!(d.denominator(), &p(&[0, 0, 1]));
    }
}

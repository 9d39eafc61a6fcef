//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first with no trailing zeros, so the
/// zero polynomial is the empty vector and has degree −1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_big_ints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + super::rational::to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(d)?.1)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
        let mut a = a.monic();
        let mut b = b.monic();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let r = a.rem(&b).expect("nonzero divisor").monic();
            a = b;
            b = r;
        }
        a
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree() <= 0 {
            return self.monic();
        }
        let g = Self::gcd(self, &self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree() <= 0 || Self::gcd(self, &self.derivative()).is_constant()
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime `s_k` with
    /// `self = c · Π s_k^k`. Only factors of positive degree are returned.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let mut out = Vec::new();
        if self.degree() <= 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = Self::gcd(&f, &fp);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = fp.div_exact(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            a = Self::gcd(&b, &d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Polynomial {
        let lin = Polynomial::new(vec![c.clone(), Rational::one()]);
        let mut acc = Polynomial::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Polynomial::constant(a.clone());
        }
        acc
    }

    /// `p(c·x)`.
    pub fn scale_variable(&self, c: &Rational) -> Polynomial {
        let mut pw = Rational::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pw);
            pw *= c;
        }
        Polynomial::new(v)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    /// Primitive integer associate with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().expect("nonzero").is_negative() {
            g = -g;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn to_primitive(&self) -> Polynomial {
        Self::from_big_ints(&self.primitive_integer())
    }

    /// Every root has absolute value strictly below this bound.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(l) = self.leading() else {
            return Rational::zero();
        };
        let l = l.abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &l;
            if q > m {
                m = q;
            }
        }
        m + Rational::one()
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        let lin = Self::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            match p.div_exact(&lin) {
                Some(q) => {
                    p = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                if a.denom().is_one() {
                    s.push_str(&a.to_string());
                } else {
                    s.push_str(&format!("({a})"));
                }
            }
            match k {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{k}")),
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::new(v)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut v = self.coeffs.clone();
        if v.len() < rhs.coeffs.len() {
            v.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in v.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        Polynomial::new(v)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        super::rational::serde_rational_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Polynomial::new(
            super::rational::serde_rational_vec::deserialize(d)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn degree_and_zero() {
        assert_eq!(Polynomial::zero().degree(), -1);
        assert_eq!(p(&[1, 0, 0]).degree(), 0);
        assert_eq!(p(&[1, 0, -3, 0, 1]).degree(), 4);
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[0, -2, 0, 1]); // x^3 - 2x
        let b = p(&[0, 0, 1]); // x^2
        assert_eq!(Polynomial::gcd(&a, &b), p(&[0, 1]));
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[0, -2]));
        assert!(matches!(a.div_rem(&Polynomial::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn squarefree() {
        // x^3 (x^2 - 1)^2 (x - 2)
        let f = &(&p(&[0, 0, 0, 1]) * &p(&[-1, 0, 1]).pow(2)) * &p(&[-2, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(p(&[-2, 1]), 1), (p(&[-1, 0, 1]), 2), (p(&[0, 1]), 3)]
        );
        assert_eq!(f.squarefree_part(), p(&[0, 2, -1, -2, 1]));
        assert!(!f.is_squarefree());
    }

    #[test]
    fn shift_and_scale() {
        let f = p(&[-1, 0, 1]);
        assert_eq!(f.shift(&rat(1)), p(&[0, 2, 1]));
        assert_eq!(f.scale_variable(&frac(1, 2)), Polynomial::new(vec![rat(-1), rat(0), frac(1, 4)]));
    }

    #[test]
    fn primitive_form() {
        let f = Polynomial::new(vec![frac(-1, 2), rat(0), frac(-3, 4)]);
        assert_eq!(f.primitive_integer(), vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -3, 0, 1]).to_string(), "x^4 - 3x^2 + 1");
        assert_eq!(p(&[-2, -1]).to_string(), "-x - 2");
    }

    #[test]
    fn json_round_trip() {
        let f = Polynomial::new(vec![frac(1, 3), rat(0), rat(-2)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["1/3","0","-2"]"#);
        let g: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }
}

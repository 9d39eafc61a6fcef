//! Sturm sequences, real-root isolation and exact real algebraic numbers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::rational::{self, gt_sqrt, lt_sqrt, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// Bisection steps allowed before an exact comparison is declared stuck.
/// Comparisons between distinct algebraic numbers of the sizes used here
/// separate after a few hundred steps at most.
const MAX_REFINEMENTS: usize = 20_000;

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn ord_of(s: i8) -> Ordering {
    s.cmp(&0)
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Polynomial>,
}

impl SturmSequence {
    /// Builds the chain of the squarefree part of `p`.
    pub fn new(p: &Polynomial) -> Self {
        let p = p.squarefree_part();
        let mut seq = vec![p.clone()];
        if p.degree() >= 1 {
            seq.push(p.derivative());
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero");
                if r.is_zero() {
                    break;
                }
                // Positive rescaling keeps the sign pattern and tames coefficient growth.
                let r = -&r;
                let l = r.leading().expect("nonzero").abs();
                seq.push(r.scale(&l.recip()));
            }
        }
        SturmSequence { seq }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.seq[0]
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, t: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| sign(&p.eval(t))))
    }

    pub fn variations_neg_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let s = sign(p.leading().expect("nonzero"));
            if p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    pub fn variations_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(|p| sign(p.leading().expect("nonzero"))))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        if a >= b {
            return 0;
        }
        self.variations_at(a) - self.variations_at(b)
    }

    pub fn count_total(&self) -> usize {
        self.variations_neg_inf() - self.variations_pos_inf()
    }

    /// Distinct roots `≤ t`.
    pub fn count_at_most(&self, t: &Rational) -> usize {
        self.variations_neg_inf() - self.variations_at(t)
    }
}

/// Number of real roots (with multiplicity) in `(−∞, t)` or `(−∞, t]`.
pub fn count_roots_below(p: &Polynomial, t: &Rational, closed: bool) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut total = 0;
    for (factor, k) in p.squarefree_decomposition() {
        let sturm = SturmSequence::new(&factor);
        let mut c = sturm.count_at_most(t);
        if !closed && factor.eval(t).is_zero() {
            c -= 1;
        }
        total += k * c;
    }
    Ok(total)
}

/// A real root together with its multiplicity in the input polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsolatedRoot {
    pub root: AlgebraicNumber,
    pub multiplicity: usize,
}

/// Isolates every distinct real root of `p`, sorted ascending, with disjoint intervals.
pub fn isolate_real_roots(p: &Polynomial) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let container = p.squarefree_part().to_primitive();
    let roots = isolate_squarefree(&container);
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    let factors = p.squarefree_decomposition();
    Ok(roots
        .into_iter()
        .map(|root| {
            let multiplicity = factors
                .iter()
                .find(|(f, _)| root.is_root_of(f))
                .map(|(_, k)| *k)
                .expect("every root lies in some squarefree factor");
            IsolatedRoot { root, multiplicity }
        })
        .collect())
}

/// Distinct real roots of `p` (any nonzero polynomial) as algebraic numbers.
pub fn real_roots(p: &Polynomial) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(isolate_squarefree(&p.squarefree_part().to_primitive()))
}

fn isolate_squarefree(q: &Polynomial) -> Vec<AlgebraicNumber> {
    if q.degree() < 1 {
        return Vec::new();
    }
    let sturm = SturmSequence::new(q);
    let bound = q.cauchy_bound();
    let mut out = Vec::new();
    let lo = -bound.clone();
    let hi = bound;
    let (vlo, vhi) = (sturm.variations_at(&lo), sturm.variations_at(&hi));
    let mut stack = vec![(lo, hi, vlo, vhi)];
    let two = rational::rat(2);
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va - vb;
        if count == 0 {
            continue;
        }
        if count == 1 {
            if q.eval(&b).is_zero() {
                out.push(AlgebraicNumber::raw(q.clone(), b.clone(), b));
                continue;
            }
            if !q.eval(&a).is_zero() {
                out.push(AlgebraicNumber::raw(q.clone(), a, b));
                continue;
            }
        }
        let m = (&a + &b) / &two;
        let vm = sturm.variations_at(&m);
        stack.push((a, m.clone(), va, vm));
        stack.push((m, b, vm, vb));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    // Sibling intervals may share a bisection point; separate them.
    for i in 1..out.len() {
        while out[i - 1].hi >= out[i].lo {
            if !out[i - 1].is_exact() {
                out[i - 1].bisect();
            }
            if !out[i].is_exact() {
                out[i].bisect();
            }
        }
    }
    out
}

/// A real algebraic number: the unique root of a squarefree integer
/// polynomial inside `[lo, hi]`. Either `lo == hi` (an exact rational
/// root) or the polynomial is nonzero at both endpoints.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    minimal_polynomial: Polynomial,
    lo: Rational,
    hi: Rational,
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AlgebraicNumber", 2)?;
        st.serialize_field("minimal_polynomial", &self.minimal_polynomial)?;
        st.serialize_field(
            "interval",
            &[rational::fmt_rational(&self.lo), rational::fmt_rational(&self.hi)],
        )?;
        st.end()
    }
}

#[derive(Deserialize)]
struct RawAlgebraic {
    minimal_polynomial: Polynomial,
    #[serde(with = "rational::serde_rational_vec")]
    interval: Vec<Rational>,
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawAlgebraic::deserialize(d)?;
        if raw.interval.len() != 2 {
            return Err(serde::de::Error::custom("interval must have two endpoints"));
        }
        AlgebraicNumber::new(
            raw.minimal_polynomial,
            raw.interval[0].clone(),
            raw.interval[1].clone(),
        )
        .map_err(serde::de::Error::custom)
    }
}

impl AlgebraicNumber {
    fn raw(poly: Polynomial, lo: Rational, hi: Rational) -> Self {
        AlgebraicNumber {
            minimal_polynomial: poly,
            lo,
            hi,
        }
    }

    fn set_interval(&mut self, lo: Rational, hi: Rational) {
        self.lo = lo;
        self.hi = hi;
    }

    /// Validating constructor: `poly` must be squarefree and have exactly one root in `[lo, hi]`.
    pub fn new(poly: Polynomial, lo: Rational, hi: Rational) -> Result<Self> {
        let bad = |m: &str| Error::Invariant(format!("invalid algebraic number: {m}"));
        if poly.degree() < 1 {
            return Err(bad("polynomial must have positive degree"));
        }
        if !poly.is_squarefree() {
            return Err(bad("polynomial is not squarefree"));
        }
        if lo > hi {
            return Err(bad("empty interval"));
        }
        let poly = poly.to_primitive();
        if lo == hi {
            if !poly.eval(&lo).is_zero() {
                return Err(bad("degenerate interval is not a root"));
            }
            return Ok(Self::raw(poly, lo, hi));
        }
        if poly.eval(&lo).is_zero() || poly.eval(&hi).is_zero() {
            return Err(bad("root at a non-degenerate endpoint"));
        }
        if SturmSequence::new(&poly).count_in(&lo, &hi) != 1 {
            return Err(bad("interval does not isolate exactly one root"));
        }
        Ok(Self::raw(poly, lo, hi))
    }

    pub fn from_rational(r: &Rational) -> Self {
        let poly = Polynomial::linear_root(r).to_primitive();
        Self::raw(poly, r.clone(), r.clone())
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(&rational::rat(k))
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.minimal_polynomial
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_exact() {
            return;
        }
        let m = (&self.lo + &self.hi) / rational::rat(2);
        let vm = self.minimal_polynomial.eval(&m);
        if vm.is_zero() {
            self.set_interval(m.clone(), m);
            return;
        }
        let vlo = self.minimal_polynomial.eval(&self.lo);
        if sign(&vlo) == sign(&vm) {
            let hi = self.hi.clone();
            self.set_interval(m, hi);
        } else {
            let lo = self.lo.clone();
            self.set_interval(lo, m);
        }
    }

    pub fn refined(&self, width: &Rational) -> Self {
        let mut a = self.clone();
        if a.is_exact() {
            return a;
        }
        let s_lo = sign(&a.minimal_polynomial.eval(&a.lo));
        while !a.is_exact() && &a.width() > width {
            if s_lo == 0 {
                a.bisect();
                continue;
            }
            let m = (&a.lo + &a.hi) / rational::rat(2);
            let vm = sign(&a.minimal_polynomial.eval(&m));
            if vm == 0 {
                a.set_interval(m.clone(), m);
            } else if vm == s_lo {
                let hi = a.hi.clone();
                a.set_interval(m, hi);
            } else {
                let lo = a.lo.clone();
                a.set_interval(lo, m);
            }
        }
        a
    }

    /// Exact refinement to width 2⁻¹², then floating-point bisection.
    pub fn approx(&self) -> f64 {
        let a = self.refined(&Rational::new(BigInt::one(), BigInt::one() << 12u32));
        if a.is_exact() {
            return rational::to_f64(&a.lo);
        }
        let p = &a.minimal_polynomial;
        let (mut lo, mut hi) = (rational::to_f64(&a.lo), rational::to_f64(&a.hi));
        let s_lo = p.eval_f64(lo).signum();
        for _ in 0..64 {
            let m = 0.5 * (lo + hi);
            if m <= lo || m >= hi {
                break;
            }
            let v = p.eval_f64(m);
            if v == 0.0 {
                return m;
            }
            if v.signum() == s_lo {
                lo = m;
            } else {
                hi = m;
            }
        }
        0.5 * (lo + hi)
    }

    /// Whether this number is a root of `f` (which may be any polynomial dividing
    /// or sharing roots with the container).
    pub fn is_root_of(&self, f: &Polynomial) -> bool {
        self.sign_at(f) == Ordering::Equal
    }

    /// Exact sign of `q` evaluated at this number.
    pub fn sign_at(&self, q: &Polynomial) -> Ordering {
        if q.is_zero() {
            return Ordering::Equal;
        }
        if self.is_exact() {
            return ord_of(sign(&q.eval(&self.lo)));
        }
        let g = Polynomial::gcd(&self.minimal_polynomial, q);
        if g.degree() >= 1 && sign(&g.eval(&self.lo)) != sign(&g.eval(&self.hi)) {
            return Ordering::Equal;
        }
        if q.is_constant() {
            return ord_of(sign(&q.coeff(0)));
        }
        let sturm = SturmSequence::new(q);
        let mut a = self.clone();
        for _ in 0..MAX_REFINEMENTS {
            if a.is_exact() {
                return ord_of(sign(&q.eval(&a.lo)));
            }
            if !q.eval(&a.lo).is_zero() && sturm.count_in(&a.lo, &a.hi) == 0 {
                return ord_of(sign(&q.eval(&a.hi)));
            }
            a.bisect();
        }
        panic!("sign determination did not converge");
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(r);
        }
        if r <= &self.lo {
            return Ordering::Greater;
        }
        if r >= &self.hi {
            return Ordering::Less;
        }
        if self.minimal_polynomial.eval(r).is_zero() {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        for _ in 0..MAX_REFINEMENTS {
            a.bisect();
            if a.is_exact() {
                return a.lo.cmp(r);
            }
            if r <= &a.lo {
                return Ordering::Greater;
            }
            if r >= &a.hi {
                return Ordering::Less;
            }
        }
        panic!("rational comparison did not converge");
    }

    /// Exact comparison of two algebraic numbers.
    pub fn exact_cmp(&self, other: &AlgebraicNumber) -> Ordering {
        if self.is_exact() {
            return other.cmp_rational(&self.lo).reverse();
        }
        if other.is_exact() {
            return self.cmp_rational(&other.lo);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_root_of(&b.minimal_polynomial) {
            // `a` is some root of b's polynomial; it equals `b` iff it lies in b's interval.
            for _ in 0..MAX_REFINEMENTS {
                if a.is_exact() {
                    return b.cmp_rational(&a.lo).reverse();
                }
                if a.lo >= b.lo && a.hi <= b.hi {
                    return Ordering::Equal;
                }
                if a.hi <= b.lo {
                    return Ordering::Less;
                }
                if a.lo >= b.hi {
                    return Ordering::Greater;
                }
                a.bisect();
            }
            panic!("algebraic comparison did not converge");
        }
        for _ in 0..MAX_REFINEMENTS {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if a.lo >= b.hi {
                return Ordering::Greater;
            }
            if a.is_exact() || b.is_exact() {
                return a.exact_cmp(&b);
            }
            a.bisect();
            b.bisect();
        }
        panic!("algebraic comparison did not converge");
    }

    pub fn exact_eq(&self, other: &AlgebraicNumber) -> bool {
        self.exact_cmp(other) == Ordering::Equal
    }

    /// `self + r`.
    pub fn add_rational(&self, r: &Rational) -> AlgebraicNumber {
        let poly = self.minimal_polynomial.shift(&-r).to_primitive();
        Self::raw(poly, &self.lo + r, &self.hi + r)
    }

    pub fn neg(&self) -> AlgebraicNumber {
        let poly = self
            .minimal_polynomial
            .scale_variable(&rational::rat(-1))
            .to_primitive();
        Self::raw(poly, -self.hi.clone(), -self.lo.clone())
    }

    /// The integer value, if this number is an integer.
    pub fn integer_value(&self) -> Option<BigInt> {
        let lo = rational::ceil(&self.lo);
        let hi = rational::floor(&self.hi);
        let mut k = lo;
        while k <= hi {
            let kr = Rational::from_integer(k.clone());
            if self.minimal_polynomial.eval(&kr).is_zero() {
                return Some(k);
            }
            k += 1;
        }
        None
    }

    /// The rational value, if the container has a rational root here.
    pub fn rational_value(&self) -> Option<Rational> {
        if self.is_exact() {
            return Some(self.lo.clone());
        }
        for r in rational_roots(&self.minimal_polynomial) {
            if r > self.lo && r < self.hi {
                return Some(r);
            }
        }
        None
    }

    /// Shrinks the interval until it lies strictly inside `(a, b)` or is disjoint from it.
    /// Returns whether the number lies in the open interval.
    pub fn in_open_interval(&self, a: &Rational, b: &Rational) -> bool {
        self.cmp_rational(a) == Ordering::Greater && self.cmp_rational(b) == Ordering::Less
    }
}

/// Rational roots of a polynomial by the rational root theorem on its primitive form.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    let ints = p.primitive_integer();
    if ints.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut start = 0;
    while start < ints.len() && ints[start].is_zero() {
        start += 1;
    }
    if start > 0 {
        out.push(Rational::zero());
    }
    let ints = &ints[start..];
    if ints.len() <= 1 {
        return out;
    }
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let q = Polynomial::from_big_ints(ints);
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for s in [1i64, -1] {
                let r = Rational::new(&num * BigInt::from(s), den.clone());
                if !out.contains(&r) && q.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let e = n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `p(x + √c) = A(x) + √c · B(x)` for rational `c`.
pub fn shift_by_sqrt(p: &Polynomial, c: &Rational) -> (Polynomial, Polynomial) {
    let mut a = Polynomial::zero();
    let mut b = Polynomial::zero();
    let x = Polynomial::x();
    for coeff in p.coeffs().iter().rev() {
        let na = &(&a * &x) + &b.scale(c);
        let nb = &(&b * &x) + &a;
        a = &na + &Polynomial::constant(coeff.clone());
        b = nb;
    }
    (a, b)
}

/// Sign of `A(λ) + √c · B(λ)` at the algebraic number λ.
pub fn sign_in_quadratic_field(
    lambda: &AlgebraicNumber,
    a: &Polynomial,
    b: &Polynomial,
    c: &Rational,
) -> Ordering {
    let sa = lambda.sign_at(a);
    let sb = lambda.sign_at(b);
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            let norm = &(a * a) - &(b * b).scale(c);
            match lambda.sign_at(&norm) {
                Ordering::Greater => sa,
                Ordering::Less => sb,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

/// Exact sign of `upper − lower − √c` for rational `c ≥ 0`.
pub fn difference_sign(upper: &AlgebraicNumber, lower: &AlgebraicNumber, c: &Rational) -> Ordering {
    assert!(!c.is_negative(), "square root of a negative rational");
    if let Some(r) = rational_sqrt(c) {
        return upper.exact_cmp(&lower.add_rational(&r));
    }
    if upper.is_exact() {
        if let Some(l) = lower.rational_value() {
            let d = upper.rational_value().expect("exact") - l;
            if !d.is_positive() {
                return Ordering::Less;
            }
            return (&d * &d).cmp(c);
        }
        // upper − lower − √c = (−lower) − (−upper) − √c
        return difference_sign(&lower.neg(), &upper.neg(), c);
    }
    let mut lo = lower.clone();
    let mut up = upper.clone();
    let (a, b) = shift_by_sqrt(upper.polynomial(), c);
    if sign_in_quadratic_field(lower, &a, &b, c) == Ordering::Equal {
        // lower + √c is a root of upper's polynomial; equal iff it lies in upper's interval.
        // Shrink lower faster so its shifted interval can nest inside upper's.
        for step in 0..MAX_REFINEMENTS {
            let inside = lt_sqrt(&(&up.lo - &lo.lo), c) && gt_sqrt(&(&up.hi - &lo.hi), c);
            if inside {
                return Ordering::Equal;
            }
            let above = lt_sqrt(&(&up.hi - &lo.lo), c);
            let below = gt_sqrt(&(&up.lo - &lo.hi), c);
            if above || below {
                break;
            }
            lo.bisect();
            if step % 4 == 3 {
                up.bisect();
            }
        }
    }
    for _ in 0..MAX_REFINEMENTS {
        let d_lo = &up.lo - &lo.hi;
        let d_hi = &up.hi - &lo.lo;
        if lt_sqrt(&d_hi, c) {
            return Ordering::Less;
        }
        if gt_sqrt(&d_lo, c) {
            return Ordering::Greater;
        }
        lo.bisect();
        up.bisect();
    }
    panic!("difference comparison did not converge");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn isolates_sqrt2() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].root.cmp_rational(&rat(-2)), Ordering::Greater);
        assert_eq!(roots[0].root.cmp_rational(&rat(-1)), Ordering::Less);
        assert_eq!(roots[1].root.cmp_rational(&rat(1)), Ordering::Greater);
        assert_eq!(roots[1].root.cmp_rational(&rat(2)), Ordering::Less);
        assert!(roots[0].root.hi() < roots[1].root.lo());
        assert!((roots[1].root.approx() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn difference_against_exact_endpoints() {
        let r = isolate_real_roots(&p(&[0, -2, 0, 1])).unwrap();
        let (m, z, s) = (&r[0].root, &r[1].root, &r[2].root);
        assert_eq!(difference_sign(z, m, &rat(2)), Ordering::Equal);
        assert_eq!(difference_sign(s, z, &rat(2)), Ordering::Equal);
        assert_eq!(difference_sign(s, m, &rat(2)), Ordering::Greater);
        assert_eq!(difference_sign(z, m, &rat(3)), Ordering::Less);
        let one = AlgebraicNumber::from_integer(1);
        let m1 = AlgebraicNumber::from_integer(-1);
        assert_eq!(difference_sign(&one, &m1, &rat(2)), Ordering::Greater);
        assert_eq!(difference_sign(&one, &m1, &rat(4)), Ordering::Equal);
    }

    #[test]
    fn difference_between_irrational_conjugates() {
        // x⁴ − 6x² + 4 has roots (±√5 ± 1)/√2; the two positive ones differ by √2.
        let r = isolate_real_roots(&p(&[4, 0, -6, 0, 1])).unwrap();
        let (small, big) = (&r[2].root, &r[3].root);
        assert_eq!(difference_sign(big, small, &rat(2)), Ordering::Equal);
        assert_eq!(difference_sign(big, small, &rat(3)), Ordering::Less);
        assert_eq!(difference_sign(big, small, &frac(3, 2)), Ordering::Greater);
        assert_eq!(difference_sign(small, &r[1].root, &rat(2)), Ordering::Greater);
    }

    #[test]
    fn double_root_at_zero() {
        let roots = isolate_real_roots(&p(&[0, 0, 1])).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert_eq!(roots[0].root.cmp_rational(&rat(0)), Ordering::Equal);
    }

    #[test]
    fn path_p4_roots() {
        let roots = isolate_real_roots(&p(&[1, 0, -3, 0, 1])).unwrap();
        let approx: Vec<f64> = roots.iter().map(|r| r.root.approx()).collect();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let expected = [-phi, -1.0 / phi, 1.0 / phi, phi];
        for (a, e) in approx.iter().zip(expected) {
            assert!((a - e).abs() < 1e-12);
        }
        for w in roots.windows(2) {
            assert!(w[0].root.hi() <= w[1].root.lo());
        }
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(isolate_real_roots(&Polynomial::zero()).is_err());
        assert!(count_roots_below(&Polynomial::zero(), &rat(0), true).is_err());
    }

    #[test]
    fn counts_below() {
        assert_eq!(count_roots_below(&p(&[-2, 0, 1]), &rat(0), false).unwrap(), 1);
        assert_eq!(count_roots_below(&p(&[0, -2, 0, 1]), &frac(3, 2), false).unwrap(), 3);
        assert_eq!(count_roots_below(&p(&[0, 0, 1]), &rat(0), true).unwrap(), 2);
        assert_eq!(count_roots_below(&p(&[0, 0, 1]), &rat(0), false).unwrap(), 0);
    }

    #[test]
    fn sign_and_comparisons() {
        let r = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        let sqrt2 = &r[1].root;
        assert_eq!(sqrt2.sign_at(&p(&[-2, 0, 1])), Ordering::Equal);
        assert_eq!(sqrt2.sign_at(&p(&[-3, 2])), Ordering::Less);
        assert_eq!(sqrt2.cmp_rational(&frac(141, 100)), Ordering::Greater);
        assert_eq!(sqrt2.cmp_rational(&frac(142, 100)), Ordering::Less);
        // √2 as a root of x^4 - 4 compared against √2 from x^2 - 2.
        let other = real_roots(&p(&[-4, 0, 0, 0, 1])).unwrap();
        assert_eq!(other.len(), 2);
        assert!(other[1].exact_eq(sqrt2));
        assert_eq!(other[0].exact_cmp(sqrt2), Ordering::Less);
    }

    #[test]
    fn difference_against_one_and_sqrt2() {
        // roots of x^4 - 3x^2 + 1 differ by exactly 1 between 1/φ and φ.
        let r = real_roots(&p(&[1, 0, -3, 0, 1])).unwrap();
        assert_eq!(difference_sign(&r[3], &r[2], &rat(1)), Ordering::Equal);
        assert_eq!(difference_sign(&r[2], &r[1], &rat(1)), Ordering::Greater);
        // √2 − 0 = √2 exactly.
        let s = real_roots(&p(&[0, -2, 0, 1])).unwrap();
        assert_eq!(difference_sign(&s[2], &s[1], &rat(2)), Ordering::Equal);
        assert_eq!(difference_sign(&s[2], &s[0], &rat(2)), Ordering::Greater);
        // √3 − 1 < √2
        let t = real_roots(&p(&[0, 3, 0, -4, 0, 1])).unwrap();
        assert_eq!(difference_sign(&t[4], &t[3], &rat(2)), Ordering::Less);
        assert_eq!(difference_sign(&t[4], &t[3], &rat(1)), Ordering::Less);
    }

    #[test]
    fn rational_root_extraction() {
        // (2x - 1)(x + 3)(x^2 - 2)
        let f = &(&p(&[-1, 2]) * &p(&[3, 1])) * &p(&[-2, 0, 1]);
        assert_eq!(rational_roots(&f), vec![rat(-3), frac(1, 2)]);
        let r = real_roots(&f).unwrap();
        let halves: Vec<_> = r.iter().filter_map(|a| a.rational_value()).collect();
        assert_eq!(halves, vec![rat(-3), frac(1, 2)]);
    }

    #[test]
    fn algebraic_json_validates() {
        let ok = r#"{"minimal_polynomial":["-2","0","1"],"interval":["1","2"]}"#;
        let a: AlgebraicNumber = serde_json::from_str(ok).unwrap();
        assert_eq!(a.cmp_rational(&rat(1)), Ordering::Greater);
        let bad = r#"{"minimal_polynomial":["-2","0","1"],"interval":["-2","2"]}"#;
        assert!(serde_json::from_str::<AlgebraicNumber>(bad).is_err());
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, ok);
    }
}

//! Exact support-gap certificates for mirror-symmetric decorated paths and the
//! companion-zero construction behind them.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{difference_sign, real_roots, AlgebraicNumber, RationalFunction};
use crate::cospectral::{decorated_strong_cospectral, Witness};
use crate::error::{Error, Result};
use crate::graph::DecoratedPath;
use crate::spectral::{stieltjes_form, support_of, AlphaChain, SupportSet};

/// Position of a gap `δ > 0` relative to 1 and √2, decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GapVerdict {
    #[serde(rename = "gap < 1")]
    Below1,
    #[serde(rename = "gap = 1")]
    Equal1,
    #[serde(rename = "1 < gap < √2")]
    Between,
    #[serde(rename = "gap = √2")]
    EqualSqrt2,
    #[serde(rename = "gap > √2")]
    AboveSqrt2,
}

impl fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GapVerdict::Below1 => "gap < 1",
            GapVerdict::Equal1 => "gap = 1",
            GapVerdict::Between => "1 < gap < √2",
            GapVerdict::EqualSqrt2 => "gap = √2",
            GapVerdict::AboveSqrt2 => "gap > √2",
        };
        f.write_str(s)
    }
}

/// Classifies `upper − lower` (assumed positive).
pub fn classify_gap(upper: &AlgebraicNumber, lower: &AlgebraicNumber) -> GapVerdict {
    match difference_sign(upper, lower, &rational::rat(1)) {
        Ordering::Less => GapVerdict::Below1,
        Ordering::Equal => GapVerdict::Equal1,
        Ordering::Greater => match difference_sign(upper, lower, &rational::rat(2)) {
            Ordering::Less => GapVerdict::Between,
            Ordering::Equal => GapVerdict::EqualSqrt2,
            Ordering::Greater => GapVerdict::AboveSqrt2,
        },
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapPair {
    pub lower: AlgebraicNumber,
    pub upper: AlgebraicNumber,
    pub verdict: GapVerdict,
    pub approx_gap: f64,
}

const TIE: f64 = 1e-9;

/// The adjacent pair of support roots with the smallest gap. Pairs are
/// ranked by exact verdict first, then by approximate gap within a verdict,
/// with near ties going to the higher pair.
pub fn min_support_gap(s: &SupportSet) -> Result<GapPair> {
    if s.len() < 2 {
        return Err(Error::Hypothesis(format!(
            "a gap needs at least 2 support roots, got {}",
            s.len()
        )));
    }
    let approx = s.approx();
    let mut best: Option<(GapVerdict, f64, usize)> = None;
    for k in 0..s.len() - 1 {
        let v = classify_gap(&s.roots[k + 1], &s.roots[k]);
        let d = approx[k + 1] - approx[k];
        let better = match best {
            None => true,
            Some((bv, bd, _)) => v < bv || (v == bv && d <= bd + TIE),
        };
        if better {
            best = Some((v, d, k));
        }
    }
    let (verdict, approx_gap, k) = best.expect("at least one pair");
    Ok(GapPair {
        lower: s.roots[k].clone(),
        upper: s.roots[k + 1].clone(),
        verdict,
        approx_gap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapBound {
    /// `|λ − μ| < √2`, odd path length.
    Sqrt2,
    /// `|λ − μ| ≤ 1`, even path length.
    One,
}

impl GapBound {
    pub fn for_path(n: usize) -> GapBound {
        if n % 2 == 1 {
            GapBound::Sqrt2
        } else {
            GapBound::One
        }
    }

    pub fn admits(self, v: GapVerdict) -> bool {
        match self {
            GapBound::Sqrt2 => v < GapVerdict::EqualSqrt2,
            GapBound::One => v <= GapVerdict::Equal1,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapCertificate {
    pub path_length: usize,
    pub lambda: AlgebraicNumber,
    pub mu: AlgebraicNumber,
    pub bound: GapBound,
    pub comparison: GapVerdict,
    pub holds: bool,
    pub both_in_support: bool,
    pub support_polynomial: crate::algebra::Polynomial,
    pub approx_gap: f64,
}

/// Decorated paths whose assembled graph is `P_2` or `P_3`.
pub fn is_excluded_path(dp: &DecoratedPath) -> bool {
    let a = dp.assemble();
    let g = &a.graph;
    (g.n() == 2 || g.n() == 3)
        && !g.has_loops()
        && g.is_tree()
        && (0..g.n()).all(|v| g.degree(v) <= 2)
        && g.is_unweighted()
}

/// Certificate of two support eigenvalues of vertex 1 within √2 (odd `n`) or 1 (even `n`).
pub fn verify_gap_theorem(dp: &DecoratedPath) -> Result<GapCertificate> {
    let n = dp.len();
    if n < 2 {
        return Err(Error::Hypothesis("the path must have at least 2 vertices".into()));
    }
    let report = decorated_strong_cospectral(dp)?;
    if !report.strongly_cospectral {
        let at = match report.witness {
            Some(Witness::GadgetPole { position, .. }) => format!(" at position {position}"),
            _ => String::new(),
        };
        return Err(Error::Hypothesis(format!(
            "(2) fails: a support eigenvalue is a pole of a gadget α{at}"
        )));
    }
    if is_excluded_path(dp) {
        return Err(Error::ExcludedCase(format!("the assembled graph is P{}", dp.total_vertices())));
    }
    let chain = AlphaChain::from_decorated(dp)?;
    let support = support_of(&chain.eval()?)?;
    let pair = min_support_gap(&support)?;
    let bound = GapBound::for_path(n);
    let cert = GapCertificate {
        path_length: n,
        both_in_support: support.contains(&pair.upper) && support.contains(&pair.lower),
        holds: bound.admits(pair.verdict),
        lambda: pair.upper,
        mu: pair.lower,
        bound,
        comparison: pair.verdict,
        support_polynomial: support.defining_polynomial,
        approx_gap: pair.approx_gap,
    };
    if !cert.holds || !cert.both_in_support {
        return Err(Error::Invariant(format!(
            "gap theorem violated: minimal support gap {} ({}) on a path of length {n}",
            cert.approx_gap, cert.comparison
        )));
    }
    Ok(cert)
}

/// A zero `θ′` of `αβ − λ` with `|θ′ − θ| < √λ` and `β(θ′) ∉ {0, ∞}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompanionZero {
    pub theta_prime: AlgebraicNumber,
    pub numerator: crate::algebra::Polynomial,
    pub above: bool,
    pub candidates: usize,
}

pub fn find_companion_zero(
    alpha: &RationalFunction,
    beta: &RationalFunction,
    lambda: &Rational,
    theta: &AlgebraicNumber,
) -> Result<CompanionZero> {
    stieltjes_form(alpha)?;
    stieltjes_form(beta)?;
    if alpha.denominator().is_constant() && beta.denominator().is_constant() {
        return Err(Error::Hypothesis("Lemma hypothesis: at least one pole".into()));
    }
    if !lambda.is_positive() {
        return Err(Error::Hypothesis("λ must be positive".into()));
    }
    if !theta.is_root_of(beta.numerator()) {
        return Err(Error::Hypothesis("θ is not a zero of β".into()));
    }
    if theta.is_root_of(alpha.denominator()) {
        return Err(Error::Hypothesis("α has a pole at θ".into()));
    }
    let f = alpha.mul(beta).sub_constant(lambda);
    if f.is_zero() {
        return Err(Error::Invariant("αβ − λ vanishes identically".into()));
    }
    let numerator = f.numerator().to_primitive();
    let mut above: Vec<AlgebraicNumber> = Vec::new();
    let mut below: Vec<AlgebraicNumber> = Vec::new();
    for r in real_roots(&numerator)? {
        let ok = !r.is_root_of(beta.numerator())
            && !r.is_root_of(beta.denominator())
            && !r.is_root_of(alpha.denominator());
        if !ok {
            continue;
        }
        match r.exact_cmp(theta) {
            Ordering::Greater if difference_sign(&r, theta, lambda) == Ordering::Less => above.push(r),
            Ordering::Less if difference_sign(theta, &r, lambda) == Ordering::Less => below.push(r),
            _ => {}
        }
    }
    let candidates = above.len() + below.len();
    // Nearest above θ first, else nearest below.
    let (theta_prime, is_above) = match above.into_iter().next() {
        Some(r) => (r, true),
        None => match below.pop() {
            Some(r) => (r, false),
            None => {
                return Err(Error::Invariant(
                    "no zero of αβ − λ within √λ of θ".into(),
                ))
            }
        },
    };
    Ok(CompanionZero {
        theta_prime,
        numerator,
        above: is_above,
        candidates,
    })
}

/// Exact re-check of the three companion-zero postconditions.
pub fn check_companion_zero(
    alpha: &RationalFunction,
    beta: &RationalFunction,
    lambda: &Rational,
    theta: &AlgebraicNumber,
    z: &CompanionZero,
) -> bool {
    let t = &z.theta_prime;
    let f = alpha.mul(beta).sub_constant(lambda);
    let window = match t.exact_cmp(theta) {
        Ordering::Greater => difference_sign(t, theta, lambda) == Ordering::Less,
        Ordering::Less => difference_sign(theta, t, lambda) == Ordering::Less,
        Ordering::Equal => lambda.is_positive() && !lambda.is_zero(),
    };
    window
        && t.is_root_of(f.numerator())
        && !t.is_root_of(beta.numerator())
        && !t.is_root_of(beta.denominator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::Polynomial;
    use crate::graph::{Gadget, WeightedGraph};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::reduce(&p(n), &p(d)).unwrap()
    }

    fn root_near(q: &Polynomial, x: f64) -> AlgebraicNumber {
        real_roots(q)
            .unwrap()
            .into_iter()
            .find(|r| (r.approx() - x).abs() < 1e-6)
            .unwrap()
    }

    #[test]
    fn min_gap_examples() {
        let s = SupportSet::from_polynomial(&p(&[1, 0, -3, 0, 1])).unwrap();
        let g = min_support_gap(&s).unwrap();
        assert_eq!(g.verdict, GapVerdict::Equal1);
        assert!((g.approx_gap - 1.0).abs() < 1e-12);

        let s = SupportSet::from_polynomial(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(min_support_gap(&s).unwrap().verdict, GapVerdict::AboveSqrt2);

        // P5: x⁵ − 4x³ + 3x, tied gaps √3 − 1 at both ends of the spectrum.
        let s = SupportSet::from_polynomial(&p(&[0, 3, 0, -4, 0, 1])).unwrap();
        let g = min_support_gap(&s).unwrap();
        assert_eq!(g.verdict, GapVerdict::Below1);
        assert_eq!(g.lower.rational_value(), Some(rat(1)));
        assert!((g.upper.approx() - 3f64.sqrt()).abs() < 1e-12);

        let s = SupportSet::from_polynomial(&p(&[0, 3, 0, -4, 0, 1])).unwrap();
        let g = min_support_gap(&s).unwrap();
        assert_eq!(g.verdict, GapVerdict::Below1);
        assert!((g.approx_gap - (3f64.sqrt() - 1.0)).abs() < 1e-12);

        let s = SupportSet::from_polynomial(&p(&[0, 1])).unwrap();
        assert!(min_support_gap(&s).is_err());
    }

    #[test]
    fn exceptional_paths_violate_the_bounds() {
        let s = SupportSet::from_polynomial(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(min_support_gap(&s).unwrap().verdict, GapVerdict::AboveSqrt2);
        let s = SupportSet::from_polynomial(&p(&[0, -2, 0, 1])).unwrap();
        assert_eq!(min_support_gap(&s).unwrap().verdict, GapVerdict::EqualSqrt2);
    }

    #[test]
    fn theorem_examples() {
        let c = verify_gap_theorem(&DecoratedPath::bare(4)).unwrap();
        assert_eq!(c.comparison, GapVerdict::Equal1);
        assert_eq!(c.bound, GapBound::One);

        let c = verify_gap_theorem(&DecoratedPath::bare(5)).unwrap();
        assert_eq!(c.comparison, GapVerdict::Below1);
        assert_eq!(c.bound, GapBound::Sqrt2);
        assert!((c.approx_gap - (3f64.sqrt() - 1.0)).abs() < 1e-12);

        let k12 = Gadget::new(WeightedGraph::star(2), 0).unwrap();
        let ds = DecoratedPath::new(vec![k12.clone(), k12]).unwrap();
        let c = verify_gap_theorem(&ds).unwrap();
        assert_eq!(c.comparison, GapVerdict::Equal1);
        assert_eq!(c.support_polynomial, p(&[4, 0, -5, 0, 1]));

        assert!(matches!(verify_gap_theorem(&DecoratedPath::bare(2)), Err(Error::ExcludedCase(_))));
        assert!(matches!(verify_gap_theorem(&DecoratedPath::bare(3)), Err(Error::ExcludedCase(_))));
        let lopsided = DecoratedPath::new(vec![k12_leaf(), Gadget::vertex()]).unwrap();
        assert!(matches!(verify_gap_theorem(&lopsided), Err(Error::MirrorViolated(1))));
    }

    fn k12_leaf() -> Gadget {
        Gadget::new(WeightedGraph::star(2), 1).unwrap()
    }

    #[test]
    fn companion_examples() {
        let x = RationalFunction::x();
        let beta = rf(&[-1, 0, 1], &[0, 1]);
        let one = AlgebraicNumber::from_integer(1);
        let z = find_companion_zero(&x, &beta, &rat(2), &one).unwrap();
        assert_eq!(z.theta_prime.polynomial(), &p(&[-3, 0, 1]));
        assert!(z.theta_prime.approx() > 0.0);
        assert!(check_companion_zero(&x, &beta, &rat(2), &one, &z));

        let m1 = AlgebraicNumber::from_integer(-1);
        let z = find_companion_zero(&x, &beta, &rat(2), &m1).unwrap();
        assert!((z.theta_prime.approx() + 3f64.sqrt()).abs() < 1e-12);

        let z = find_companion_zero(&beta, &beta, &rat(1), &one).unwrap();
        let golden = root_near(&p(&[-1, -1, 1]), 1.618033988749895);
        assert!(z.theta_prime.exact_eq(&golden));
        assert!(check_companion_zero(&beta, &beta, &rat(1), &one, &z));
    }

    #[test]
    fn companion_needs_a_pole() {
        let x = RationalFunction::x();
        let z = AlgebraicNumber::from_integer(0);
        assert!(matches!(
            find_companion_zero(&x, &x, &rat(1), &z),
            Err(Error::Hypothesis(m)) if m.contains("at least one pole")
        ));
        let not_stieltjes = rf(&[1, 0, 1], &[0, 1]);
        assert!(find_companion_zero(&x, &not_stieltjes, &rat(1), &z).is_err());
    }
}

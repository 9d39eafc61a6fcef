//! The functions `α_i^G = φ^G / φ^{G∖i}`, continued-fraction chains along a
//! decorated path, eigenvalue supports and the Stieltjes view of an α.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{real_roots, AlgebraicNumber, ExtendedValue, Polynomial, RationalFunction};
use crate::charpoly::{charpoly, deleted_charpoly};
use crate::error::{Error, Result};
use crate::graph::{DecoratedPath, WeightedGraph};

/// A reduced `α_i^G` with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaFunction {
    pub base: RationalFunction,
    pub graph_ref: u64,
    pub vertex: usize,
}

impl AlphaFunction {
    pub fn function(&self) -> &RationalFunction {
        &self.base
    }

    pub fn zeros(&self) -> Result<Vec<AlgebraicNumber>> {
        real_roots(self.base.numerator())
    }

    pub fn poles(&self) -> Result<Vec<AlgebraicNumber>> {
        if self.base.denominator().is_constant() {
            return Ok(Vec::new());
        }
        real_roots(self.base.denominator())
    }

    /// Simple real zeros and poles, strictly interlacing, numerator one degree higher.
    pub fn check_shape(&self) -> Result<()> {
        check_alpha_shape(&self.base)
    }
}

pub fn check_alpha_shape(f: &RationalFunction) -> Result<()> {
    let bad = |m: &str| Err(Error::Invariant(format!("α shape: {m} in {f}")));
    let (n, d) = (f.numerator(), f.denominator());
    if n.degree() != d.degree() + 1 {
        return bad("numerator degree is not denominator degree + 1");
    }
    if !n.is_squarefree() || !d.is_squarefree() {
        return bad("repeated zero or pole");
    }
    let zeros = real_roots(n)?;
    let poles = if d.is_constant() { Vec::new() } else { real_roots(d)? };
    if zeros.len() as isize != n.degree() || poles.len() as isize != d.degree() {
        return bad("non-real zero or pole");
    }
    for (k, p) in poles.iter().enumerate() {
        if zeros[k].exact_cmp(p) != Ordering::Less || p.exact_cmp(&zeros[k + 1]) != Ordering::Less {
            return bad("zeros and poles do not interlace");
        }
    }
    Ok(())
}

/// `α_i^G`, reduced. Zeros and poles are simple for every symmetric matrix;
/// a failure here is an internal error.
pub fn alpha(g: &WeightedGraph, i: usize) -> Result<AlphaFunction> {
    if i >= g.n() {
        return Err(Error::InvalidVertex(i));
    }
    let base = RationalFunction::reduce(&charpoly(g), &deleted_charpoly(g, &[i])?)?;
    if !base.numerator().is_squarefree() || !base.denominator().is_squarefree() {
        return Err(Error::Invariant(format!("α_{i} has a repeated zero or pole")));
    }
    Ok(AlphaFunction {
        base,
        graph_ref: g.fingerprint(),
        vertex: i,
    })
}

/// `t_1 − λ_2/(t_2 − λ_3/(⋯ − λ_n/t_n))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaChain {
    pub terms: Vec<RationalFunction>,
    #[serde(with = "rational::serde_rational_vec")]
    pub couplings: Vec<Rational>,
}

impl AlphaChain {
    pub fn new(terms: Vec<RationalFunction>, couplings: Vec<Rational>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Hypothesis("an α-chain needs at least one term".into()));
        }
        if couplings.len() + 1 != terms.len() {
            return Err(Error::Hypothesis(format!(
                "{} terms need {} couplings, got {}",
                terms.len(),
                terms.len() - 1,
                couplings.len()
            )));
        }
        Ok(AlphaChain { terms, couplings })
    }

    pub fn unit(terms: Vec<RationalFunction>) -> Result<Self> {
        let c = vec![Rational::one(); terms.len().saturating_sub(1)];
        Self::new(terms, c)
    }

    /// The chain of gadget α's of a decorated path (unit couplings).
    pub fn from_decorated(dp: &DecoratedPath) -> Result<Self> {
        Self::unit(gadget_alphas(dp)?)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The chain from position `k` (0-based) to the end.
    pub fn suffix(&self, k: usize) -> AlphaChain {
        AlphaChain {
            terms: self.terms[k..].to_vec(),
            couplings: self.couplings[k..].to_vec(),
        }
    }

    /// The chain of the first `k` terms.
    pub fn prefix(&self, k: usize) -> AlphaChain {
        AlphaChain {
            terms: self.terms[..k].to_vec(),
            couplings: self.couplings[..k.saturating_sub(1)].to_vec(),
        }
    }

    pub fn eval(&self) -> Result<RationalFunction> {
        alpha_chain_eval(self)
    }

    /// Extended-real evaluation at a rational point (`λ/0 = ∞`, `λ/∞ = 0`).
    pub fn eval_at(&self, t: &Rational) -> ExtendedValue {
        let n = self.terms.len();
        let mut acc = self.terms[n - 1].eval_extended(t);
        for k in (0..n - 1).rev() {
            let tail = acc.recip().scale(&self.couplings[k]);
            acc = self.terms[k].eval_extended(t).sub(&tail);
        }
        acc
    }
}

/// Symbolic evaluation of the chain, reduced at every step.
pub fn alpha_chain_eval(chain: &AlphaChain) -> Result<RationalFunction> {
    let n = chain.terms.len();
    if n == 0 {
        return Err(Error::Hypothesis("empty α-chain".into()));
    }
    let mut acc = chain.terms[n - 1].clone();
    for k in (0..n - 1).rev() {
        if acc.is_zero() {
            return Err(Error::Invariant(format!(
                "partial tail of the α-chain vanishes at position {}",
                k + 2
            )));
        }
        let tail = acc.recip()?.scale(&chain.couplings[k]);
        acc = chain.terms[k].sub(&tail);
    }
    Ok(acc)
}

/// `α_{r_k}^{G_k}` for every gadget.
pub fn gadget_alphas(dp: &DecoratedPath) -> Result<Vec<RationalFunction>> {
    dp.gadgets
        .iter()
        .map(|gd| alpha(&gd.graph, gd.root).map(|a| a.base))
        .collect()
}

/// Distinct zeros of a (reduced) α numerator.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportSet {
    pub defining_polynomial: Polynomial,
    pub roots: Vec<AlgebraicNumber>,
}

impl SupportSet {
    /// Support defined by the real roots of `p`, made primitive and squarefree.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let defining_polynomial = if p.is_constant() {
            Polynomial::one()
        } else {
            p.squarefree_part().to_primitive()
        };
        let roots = real_roots(&defining_polynomial)?;
        Ok(SupportSet {
            defining_polynomial,
            roots,
        })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, theta: &AlgebraicNumber) -> bool {
        theta.is_root_of(&self.defining_polynomial)
    }

    pub fn largest(&self) -> Option<&AlgebraicNumber> {
        self.roots.last()
    }

    /// Every root is rational.
    pub fn all_rational(&self) -> bool {
        self.roots.iter().all(|r| r.rational_value().is_some())
    }

    pub fn approx(&self) -> Vec<f64> {
        self.roots.iter().map(AlgebraicNumber::approx).collect()
    }
}

pub fn support(g: &WeightedGraph, i: usize) -> Result<SupportSet> {
    support_of(&alpha(g, i)?.base)
}

/// Support defined by the zeros of a reduced α.
pub fn support_of(f: &RationalFunction) -> Result<SupportSet> {
    SupportSet::from_polynomial(f.numerator())
}

/// A rational strictly above every pole (0 when there are none).
pub fn largest_pole_bound(f: &RationalFunction) -> Rational {
    if f.denominator().is_constant() {
        return Rational::zero();
    }
    f.denominator().cauchy_bound()
}

/// `f = x − τ₀ − Σ λ_m/(x − τ_m)`: poles as algebraic numbers, the residue
/// weights `λ_m = −num(τ_m)/den′(τ_m)` certified positive by sign, plus approximations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StieltjesForm {
    #[serde(with = "rational::serde_rational")]
    pub tau0: Rational,
    pub poles: Vec<AlgebraicNumber>,
    pub weights_approx: Vec<f64>,
}

pub fn stieltjes_form(f: &RationalFunction) -> Result<StieltjesForm> {
    let bad = |m: String| Err(Error::Hypothesis(format!("not in Stieltjes form: {m}")));
    let (n, d) = (f.numerator(), f.denominator());
    if n.degree() != d.degree() + 1 {
        return bad(format!("degree pattern of {f}"));
    }
    let (q, _r) = n.div_rem(d)?;
    if !q.is_monic() {
        return bad(format!("leading behaviour of {f} is not x"));
    }
    let tau0 = -q.coeff(0);
    if d.is_constant() {
        return Ok(StieltjesForm {
            tau0,
            poles: Vec::new(),
            weights_approx: Vec::new(),
        });
    }
    if !d.is_squarefree() {
        return bad("repeated pole".into());
    }
    let poles = real_roots(d)?;
    if poles.len() as isize != d.degree() {
        return bad("non-real pole".into());
    }
    let dd = d.derivative();
    let mut weights_approx = Vec::with_capacity(poles.len());
    for p in &poles {
        let s_num = p.sign_at(n);
        let s_der = p.sign_at(&dd);
        if s_num == Ordering::Equal || s_num == s_der {
            return bad(format!("non-positive weight at pole ≈ {}", p.approx()));
        }
        let t = p.approx();
        weights_approx.push(-n.eval_f64(t) / dd.eval_f64(t));
    }
    Ok(StieltjesForm {
        tau0,
        poles,
        weights_approx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::graph::Gadget;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::reduce(&p(n), &p(d)).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&WeightedGraph::path(2), 0).unwrap().base, rf(&[-1, 0, 1], &[0, 1]));
        assert_eq!(alpha(&WeightedGraph::new(1), 0).unwrap().base, RationalFunction::x());
        assert_eq!(alpha(&WeightedGraph::star(3), 0).unwrap().base, rf(&[-3, 0, 1], &[0, 1]));
    }

    #[test]
    fn chain_examples() {
        let x = RationalFunction::x();
        let c = AlphaChain::unit(vec![x.clone(), x.clone()]).unwrap();
        assert_eq!(c.eval().unwrap(), rf(&[-1, 0, 1], &[0, 1]));
        let c = AlphaChain::unit(vec![x.clone(), x.clone(), x.clone()]).unwrap();
        assert_eq!(c.eval().unwrap(), rf(&[0, -2, 0, 1], &[-1, 0, 1]));
        assert_eq!(c.eval().unwrap(), alpha(&WeightedGraph::path(3), 0).unwrap().base);
        let c = AlphaChain::new(vec![x.clone(), x], vec![rat(2)]).unwrap();
        assert_eq!(c.eval().unwrap(), rf(&[-2, 0, 1], &[0, 1]));
    }

    #[test]
    fn chain_matches_assembled_double_star() {
        let k12 = Gadget::new(WeightedGraph::star(2), 0).unwrap();
        let dp = DecoratedPath::new(vec![k12.clone(), Gadget::vertex(), k12]).unwrap();
        let a = dp.assemble();
        let direct = alpha(&a.graph, a.roots[0]).unwrap().base;
        assert_eq!(AlphaChain::from_decorated(&dp).unwrap().eval().unwrap(), direct);
    }

    #[test]
    fn chain_point_evaluation_matches_symbolic() {
        let x = RationalFunction::x();
        let c = AlphaChain::unit(vec![x.clone(), x.clone(), x]).unwrap();
        let f = c.eval().unwrap();
        for t in [-3, -1, 0, 1, 2] {
            assert_eq!(c.eval_at(&rat(t)), f.eval_extended(&rat(t)), "t = {t}");
        }
    }

    #[test]
    fn support_examples() {
        let s = support(&WeightedGraph::path(4), 0).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.defining_polynomial, p(&[1, 0, -3, 0, 1]));
        let s = support(&WeightedGraph::star(3), 0).unwrap();
        assert_eq!(s.defining_polynomial, p(&[-3, 0, 1]));
        assert!(!s.contains(&AlgebraicNumber::from_integer(0)));
        let s = support(&WeightedGraph::new(1), 0).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.roots[0].integer_value(), Some(0.into()));
    }

    #[test]
    fn pole_bounds() {
        let b = largest_pole_bound(&rf(&[-1, 0, 1], &[0, 1]));
        assert!(b > rat(0));
        assert_eq!(largest_pole_bound(&RationalFunction::x()), rat(0));
        assert!(largest_pole_bound(&rf(&[0, -2, 0, 1], &[-1, 0, 1])) > rat(1));
    }

    #[test]
    fn stieltjes_view() {
        let s = stieltjes_form(&rf(&[0, -2, 0, 1], &[-1, 0, 1])).unwrap();
        assert_eq!(s.tau0, rat(0));
        assert_eq!(s.poles.len(), 2);
        for w in s.weights_approx {
            assert!((w - 0.5).abs() < 1e-12);
        }
        // x + 1/x has a negative weight
        assert!(stieltjes_form(&rf(&[1, 0, 1], &[0, 1])).is_err());
        assert!(stieltjes_form(&rf(&[1, 0, 2], &[0, 1])).is_err());
    }

    #[test]
    fn shape_of_cycle_alpha() {
        let a = alpha(&WeightedGraph::cycle(6), 0).unwrap();
        a.check_shape().unwrap();
    }
}

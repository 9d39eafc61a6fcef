//! Balanced trees, exact integrality testing, and rooted products over `P_2`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{real_roots, AlgebraicNumber, Polynomial};
use crate::charpoly::charpoly;
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::folding::Parity;
use crate::gap::{verify_gap_theorem, GapCertificate};
use crate::graph::{DecoratedPath, Gadget, WeightedGraph};
use crate::spectral::{alpha, support};

pub const MAX_BALANCED_VERTICES: usize = 10_000;

/// Degrees by distance from the centre (vertex for even, edge for odd parity);
/// the level after the last entry is all leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BalancedSpec {
    pub parity: Parity,
    pub degrees: Vec<usize>,
}

impl BalancedSpec {
    pub fn new(parity: Parity, degrees: Vec<usize>) -> Result<Self> {
        let s = BalancedSpec { parity, degrees };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.degrees.is_empty() {
            return Err(Error::Hypothesis("a balanced spec needs at least one degree".into()));
        }
        if let Some(k) = self.degrees.iter().position(|&d| d == 0) {
            return Err(Error::Hypothesis(format!("degree 0 at level {k}")));
        }
        let last = self.degrees.len() - 1;
        if let Some(k) = self.degrees[..last].iter().position(|&d| d == 1) {
            return Err(Error::Hypothesis(format!("degree 1 at inner level {k}")));
        }
        let n = self.vertex_count();
        if n > MAX_BALANCED_VERTICES {
            return Err(Error::TooLarge(format!(
                "balanced tree with {n} vertices exceeds {MAX_BALANCED_VERTICES}"
            )));
        }
        Ok(())
    }

    /// Children per vertex at each level of one rooted half (the whole tree for even parity).
    pub fn children(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(k, &d)| if k == 0 && self.parity == Parity::Even { d } else { d - 1 })
            .collect()
    }

    /// Vertex counts per level of one half, leaves included.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut out = vec![1usize];
        for c in self.children() {
            let next = out.last().expect("nonempty").saturating_mul(c);
            if next == 0 {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        let half: usize = self.level_sizes().iter().fold(0usize, |a, &b| a.saturating_add(b));
        match self.parity {
            Parity::Even => half,
            Parity::Odd => half.saturating_mul(2),
        }
    }

    pub fn diameter(&self) -> usize {
        let depth = self.level_sizes().len() - 1;
        match self.parity {
            Parity::Even => 2 * depth,
            Parity::Odd => 2 * depth + 1,
        }
    }
}

/// The rooted half: BFS order, root 0.
fn half_tree(spec: &BalancedSpec) -> WeightedGraph {
    let sizes = spec.level_sizes();
    let children = spec.children();
    let n: usize = sizes.iter().sum();
    let mut g = WeightedGraph::new(n);
    let mut start = 0usize;
    let mut next = 1usize;
    for (lvl, &sz) in sizes.iter().enumerate().take(sizes.len() - 1) {
        for v in start..start + sz {
            for _ in 0..children[lvl] {
                g.add_unit_edge(v, next);
                next += 1;
            }
        }
        start += sz;
    }
    g
}

pub fn balanced_tree(spec: &BalancedSpec) -> Result<WeightedGraph> {
    spec.validate()?;
    let half = half_tree(spec);
    Ok(match spec.parity {
        Parity::Even => half,
        Parity::Odd => {
            let off = half.n();
            let mut g = half.disjoint_union(&half);
            g.add_unit_edge(0, off);
            g
        }
    })
}

/// The two halves of an odd balanced tree as a decorated `P_2`.
pub fn balanced_halves(spec: &BalancedSpec) -> Result<DecoratedPath> {
    if spec.parity != Parity::Odd {
        return Err(Error::Hypothesis("only odd balanced trees split over P2".into()));
    }
    spec.validate()?;
    let g = Gadget::new(half_tree(spec), 0)?;
    DecoratedPath::new(vec![g.clone(), g])
}

/// `det(xI − J)` for the Jacobi matrix with diagonal `diag` and squared couplings `b`.
pub fn jacobi_charpoly(diag: &[Rational], b: &[Rational]) -> Polynomial {
    assert_eq!(b.len() + 1, diag.len().max(1));
    let x = Polynomial::x();
    let mut prev = Polynomial::one();
    let mut cur = &x - &Polynomial::constant(diag[0].clone());
    for k in 1..diag.len() {
        let next = &(&(&x - &Polynomial::constant(diag[k].clone())) * &cur) - &prev.scale(&b[k - 1]);
        prev = cur;
        cur = next;
    }
    cur
}

/// Characteristic polynomial of a balanced tree as `∏ P_k^{m_k}`, each `P_k`
/// the charpoly of a level-quotient Jacobi matrix.
pub fn balanced_spectrum_factors(spec: &BalancedSpec) -> Result<Vec<(Polynomial, usize)>> {
    spec.validate()?;
    let sizes = spec.level_sizes();
    let children = spec.children();
    let depth = sizes.len();
    let b: Vec<Rational> = children.iter().take(depth - 1).map(|&c| rational::rat(c as i64)).collect();
    let zeros = vec![Rational::zero(); depth];
    let mut out = Vec::new();
    let loops: Vec<Rational> = match spec.parity {
        Parity::Even => vec![Rational::zero()],
        Parity::Odd => vec![rational::rat(1), rational::rat(-1)],
    };
    let copies = loops.len();
    for w in loops {
        let mut diag = zeros.clone();
        diag[0] = w;
        out.push((jacobi_charpoly(&diag, &b), 1));
    }
    for k in 1..depth {
        let m = sizes[k - 1] * (children[k - 1] - 1) * copies;
        if m > 0 {
            out.push((jacobi_charpoly(&zeros[k..], &b[k..]), m));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub integral: bool,
    /// Integer eigenvalues with multiplicity, largest first (complete when integral).
    pub spectrum: Vec<i64>,
    pub witness: Option<AlgebraicNumber>,
}

/// Integer roots of `p` with multiplicity and the remaining cofactor.
/// Candidates are bounded by `bound` and must divide the current constant term.
fn deflate_integer_roots(p: &Polynomial, bound: &BigInt) -> (Vec<BigInt>, Polynomial) {
    let mut rest = p.monic();
    let mut roots = Vec::new();
    loop {
        if rest.degree() < 1 {
            break;
        }
        let c0 = rest.coeff(0);
        if c0.is_zero() {
            roots.push(BigInt::zero());
            rest = rest.div_exact(&Polynomial::x()).expect("x divides");
            continue;
        }
        let Some(c0) = c0.is_integer().then(|| c0.to_integer().abs()) else {
            break;
        };
        let mut hit = None;
        let mut k = BigInt::from(1);
        while &k <= bound && k <= c0 {
            if (&c0 % &k).is_zero() {
                for cand in [k.clone(), -k.clone()] {
                    if rest.eval(&Rational::from_integer(cand.clone())).is_zero() {
                        hit = Some(cand);
                        break;
                    }
                }
                if hit.is_some() {
                    break;
                }
            }
            k += 1;
        }
        match hit {
            Some(r) => {
                rest = rest
                    .div_exact(&Polynomial::linear_root(&Rational::from_integer(r.clone())))
                    .expect("root divides");
                roots.push(r);
            }
            None => break,
        }
    }
    (roots, rest)
}

fn integer_bound(p: &Polynomial) -> BigInt {
    rational::floor(&p.cauchy_bound())
}

fn report_from_factors(factors: &[(Polynomial, usize)]) -> Result<IntegralityReport> {
    let mut spectrum = Vec::new();
    for (f, m) in factors {
        let (roots, rest) = deflate_integer_roots(f, &integer_bound(f));
        if rest.degree() >= 1 {
            let witness = real_roots(&rest)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Invariant(format!("{rest} has no real root")))?;
            return Ok(IntegralityReport {
                integral: false,
                spectrum: Vec::new(),
                witness: Some(witness),
            });
        }
        for r in roots {
            let r = r
                .to_i64()
                .ok_or_else(|| Error::TooLarge(format!("eigenvalue {r}")))?;
            spectrum.extend(std::iter::repeat(r).take(*m));
        }
    }
    spectrum.sort_unstable_by(|a, b| b.cmp(a));
    Ok(IntegralityReport {
        integral: true,
        spectrum,
        witness: None,
    })
}

pub fn integrality_test(g: &WeightedGraph) -> Result<IntegralityReport> {
    if !g.has_integer_weights() {
        return Err(Error::Hypothesis("integrality testing needs integer weights".into()));
    }
    // Integer eigenvalues are bounded by the largest absolute row sum.
    let bound = (0..g.n())
        .map(|v| {
            g.weighted_neighbors(v)
                .map(|(_, w)| w.abs())
                .fold(g.loop_weight(v).abs(), |a, b| a + b)
        })
        .max()
        .unwrap_or_else(Rational::zero);
    let phi = charpoly(g);
    let (roots, rest) = deflate_integer_roots(&phi, &rational::floor(&bound));
    if rest.degree() >= 1 {
        let witness = real_roots(&rest)?.into_iter().next();
        return Ok(IntegralityReport {
            integral: false,
            spectrum: Vec::new(),
            witness,
        });
    }
    let mut spectrum: Vec<i64> = roots
        .into_iter()
        .map(|r| r.to_i64().ok_or_else(|| Error::TooLarge(format!("eigenvalue {r}"))))
        .collect::<Result<_>>()?;
    spectrum.sort_unstable_by(|a, b| b.cmp(a));
    Ok(IntegralityReport {
        integral: true,
        spectrum,
        witness: None,
    })
}

/// `∏ (x − k)` over a spectrum.
pub fn spectrum_polynomial(spectrum: &[i64]) -> Polynomial {
    spectrum.iter().fold(Polynomial::one(), |acc, &k| {
        &acc * &Polynomial::linear_root(&rational::rat(k))
    })
}

pub fn balanced_integrality(spec: &BalancedSpec) -> Result<IntegralityReport> {
    report_from_factors(&balanced_spectrum_factors(spec)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct P2ProductReport {
    pub vertices: usize,
    pub root_support_size: usize,
    /// Whether the root support has at least 3 elements.
    pub hypothesis_effective: bool,
    pub gap: Option<GapCertificate>,
    pub note: Option<String>,
    pub integrality: IntegralityReport,
}

/// Rooted product of `t1` and `t2` over `P_2`: their roots joined by an edge.
pub fn p2_product_check(t1: &Gadget, t2: &Gadget) -> Result<P2ProductReport> {
    for t in [t1, t2] {
        if !t.graph.is_tree() {
            return Err(Error::NotATree);
        }
    }
    if alpha(&t1.graph, t1.root)?.base != alpha(&t2.graph, t2.root)?.base {
        return Err(Error::MirrorViolated(1));
    }
    let dp = DecoratedPath::new(vec![t1.clone(), t2.clone()])?;
    let tree = dp.assemble().graph;
    let root_support_size = support(&t1.graph, t1.root)?.len();
    let hypothesis_effective = root_support_size >= 3;
    let integrality = integrality_test(&tree)?;
    let (gap, note) = if hypothesis_effective {
        match verify_gap_theorem(&dp) {
            Ok(c) => (Some(c), None),
            Err(Error::Hypothesis(m)) => (None, Some(format!("no gap certificate: {m}"))),
            Err(e) => return Err(e),
        }
    } else {
        (
            None,
            Some(format!(
                "corollary hypothesis not effective: the root support has {root_support_size} elements"
            )),
        )
    };
    if hypothesis_effective && integrality.integral {
        return Err(Error::Invariant(
            "rooted product over P2 with root support ≥ 3 is integral".into(),
        ));
    }
    Ok(P2ProductReport {
        vertices: tree.n(),
        root_support_size,
        hypothesis_effective,
        gap,
        note,
        integrality,
    })
}

/// Degree lists of length in `depths` with every entry in `2..=max_degree`.
pub fn balanced_specs(parity: Parity, depths: std::ops::RangeInclusive<usize>, max_degree: usize) -> Vec<BalancedSpec> {
    let mut out = Vec::new();
    for depth in depths {
        if depth == 0 || max_degree < 2 {
            continue;
        }
        let mut cur = vec![2usize; depth];
        'odometer: loop {
            if let Ok(s) = BalancedSpec::new(parity, cur.clone()) {
                out.push(s);
            }
            let mut k = depth;
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                if cur[k] < max_degree {
                    cur[k] += 1;
                    for c in &mut cur[k + 1..] {
                        *c = 2;
                    }
                    break;
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BalancedHit {
    pub spec: BalancedSpec,
    pub vertices: usize,
    pub diameter: usize,
    pub report: IntegralityReport,
}

pub fn balanced_search(
    parity: Parity,
    depths: std::ops::RangeInclusive<usize>,
    max_degree: usize,
    mode: Mode,
) -> Result<Vec<BalancedHit>> {
    let specs = balanced_specs(parity, depths, max_degree);
    exec::map(&specs, mode, |s| {
        Ok(BalancedHit {
            vertices: s.vertex_count(),
            diameter: s.diameter(),
            report: balanced_integrality(s)?,
            spec: s.clone(),
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::charpoly;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn spec(parity: Parity, d: &[usize]) -> BalancedSpec {
        BalancedSpec::new(parity, d.to_vec()).unwrap()
    }

    fn product(factors: &[(Polynomial, usize)]) -> Polynomial {
        factors
            .iter()
            .fold(Polynomial::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    #[test]
    fn balanced_examples() {
        let k14 = balanced_tree(&spec(Parity::Even, &[4])).unwrap();
        assert_eq!(charpoly(&k14), p(&[0, 0, 0, -4, 0, 1]));
        let s22 = balanced_tree(&spec(Parity::Odd, &[3])).unwrap();
        assert_eq!(s22.n(), 6);
        assert_eq!(charpoly(&s22), p(&[0, 0, 4, 0, -5, 0, 1]));
        let g = balanced_tree(&spec(Parity::Odd, &[2, 2])).unwrap();
        assert_eq!(charpoly(&g), charpoly(&WeightedGraph::path(6)));
        let g = balanced_tree(&spec(Parity::Odd, &[2, 1])).unwrap();
        assert_eq!(charpoly(&g), charpoly(&WeightedGraph::path(4)));
        assert_eq!(spec(Parity::Odd, &[3, 2]).diameter(), 5);
        assert!(BalancedSpec::new(Parity::Even, vec![10, 10, 10, 10, 10]).is_err());
        assert!(BalancedSpec::new(Parity::Even, vec![3, 1, 2]).is_err());
    }

    #[test]
    fn factors_match_charpoly() {
        for parity in [Parity::Even, Parity::Odd] {
            for d in [vec![3], vec![2, 3], vec![3, 2], vec![4, 3, 2], vec![2, 2, 2], vec![5]] {
                let s = spec(parity, &d);
                let t = balanced_tree(&s).unwrap();
                assert_eq!(product(&balanced_spectrum_factors(&s).unwrap()), charpoly(&t), "{s:?}");
                assert_eq!(balanced_integrality(&s).unwrap().integral, integrality_test(&t).unwrap().integral);
            }
        }
    }

    #[test]
    fn integrality_examples() {
        let r = integrality_test(&WeightedGraph::star(4)).unwrap();
        assert!(r.integral);
        assert_eq!(r.spectrum, vec![2, 0, 0, 0, -2]);
        let r = integrality_test(&balanced_tree(&spec(Parity::Odd, &[3])).unwrap()).unwrap();
        assert_eq!(r.spectrum, vec![2, 1, 0, 0, -1, -2]);
        assert_eq!(spectrum_polynomial(&r.spectrum), p(&[0, 0, 4, 0, -5, 0, 1]));
        let r = integrality_test(&WeightedGraph::star(3)).unwrap();
        assert!(!r.integral);
        let w = r.witness.unwrap();
        assert!(w.is_root_of(&p(&[-3, 0, 1])));
        assert!(integrality_test(&WeightedGraph::complete(5)).unwrap().integral);
        assert_eq!(integrality_test(&WeightedGraph::complete(5)).unwrap().spectrum, vec![4, -1, -1, -1, -1]);
    }

    #[test]
    fn p2_products() {
        let p3 = Gadget::new(WeightedGraph::path(3), 0).unwrap();
        let r = p2_product_check(&p3, &p3).unwrap();
        assert!(r.hypothesis_effective && !r.integrality.integral);
        assert!(r.gap.is_some());

        let k12 = Gadget::new(WeightedGraph::star(2), 0).unwrap();
        let r = p2_product_check(&k12, &k12).unwrap();
        assert!(!r.hypothesis_effective);
        assert!(r.integrality.integral);

        let half = balanced_halves(&spec(Parity::Odd, &[3, 2])).unwrap();
        let r = p2_product_check(&half.gadgets[0], &half.gadgets[1]).unwrap();
        assert!(r.hypothesis_effective && !r.integrality.integral);

        let k12_leaf = Gadget::new(WeightedGraph::star(2), 1).unwrap();
        assert!(matches!(p2_product_check(&k12, &k12_leaf), Err(Error::MirrorViolated(1))));
    }

    #[test]
    fn spec_enumeration_counts() {
        assert_eq!(balanced_specs(Parity::Odd, 2..=3, 6).len(), 25 + 125);
        assert_eq!(balanced_specs(Parity::Odd, 1..=1, 10).len(), 9);
    }

    #[test]
    fn small_searches() {
        let hits = balanced_search(Parity::Odd, 1..=1, 10, Mode::Sequential).unwrap();
        let s22 = hits.iter().find(|h| h.spec.degrees == vec![3]).unwrap();
        assert!(s22.report.integral);
        assert_eq!(s22.report.spectrum, vec![2, 1, 0, 0, -1, -2]);
        let hits = balanced_search(Parity::Odd, 2..=2, 6, Mode::Parallel).unwrap();
        assert!(hits.iter().all(|h| !h.report.integral));
        let hits = balanced_search(Parity::Even, 1..=1, 6, Mode::Sequential).unwrap();
        let k14 = hits.iter().find(|h| h.spec.degrees == vec![4]).unwrap();
        assert_eq!(k14.report.spectrum, vec![2, 0, 0, 0, -2]);
    }
}

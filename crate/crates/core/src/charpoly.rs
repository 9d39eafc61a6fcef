//! Exact characteristic polynomials, vertex-deleted variants, path sums and
//! the cycle expansion at a vertex.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Polynomial, Rational};
use crate::error::{Error, Result};
use crate::graph::{delete_vertices, WeightedGraph};

/// Largest graph handled by the bitmask-based path and cycle enumerations.
pub const MAX_MASK_VERTICES: usize = 64;

/// `det(xI − A)`, with loops on the diagonal. The empty graph gives 1.
pub fn charpoly(g: &WeightedGraph) -> Polynomial {
    if g.n() == 0 {
        return Polynomial::one();
    }
    if g.is_forest() {
        return forest_charpoly(g);
    }
    charpoly_berkowitz(g)
}

/// Division-free evaluation, independent of any graph structure.
pub fn charpoly_berkowitz(g: &WeightedGraph) -> Polynomial {
    if g.n() == 0 {
        return Polynomial::one();
    }
    let a = g.adjacency();
    if g.has_integer_weights() {
        let small: Option<Vec<Vec<i128>>> = a
            .iter()
            .map(|row| row.iter().map(|r| r.numer().to_i128()).collect())
            .collect();
        if let Some(c) = small.as_deref().and_then(berkowitz_i128) {
            return Polynomial::from_big_ints(&c.into_iter().map(BigInt::from).collect::<Vec<_>>());
        }
        let big: Vec<Vec<BigInt>> = a
            .iter()
            .map(|row| row.iter().map(|r| r.numer().clone()).collect())
            .collect();
        return Polynomial::from_big_ints(&berkowitz(&big));
    }
    Polynomial::new(berkowitz(&a))
}

/// Berkowitz over any commutative ring; coefficients lowest degree first.
fn berkowitz<T>(a: &[Vec<T>]) -> Vec<T>
where
    T: Clone + Zero + One + std::ops::Neg<Output = T>,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    let n = a.len();
    // Highest degree first while building.
    let mut p: Vec<T> = vec![T::one()];
    for k in 0..n {
        // t[0] = 1, t[1] = −a_kk, t[m] = −R A_k^{m−2} C
        let mut t = Vec::with_capacity(k + 2);
        t.push(T::one());
        t.push(-a[k][k].clone());
        let mut v: Vec<T> = (0..k).map(|r| a[r][k].clone()).collect();
        for _ in 0..k {
            let mut dot = T::zero();
            for c in 0..k {
                dot = dot + &a[k][c] * &v[c];
            }
            t.push(-dot);
            let mut nv = vec![T::zero(); k];
            for (r, slot) in nv.iter_mut().enumerate() {
                let mut s = T::zero();
                for c in 0..k {
                    s = s + &a[r][c] * &v[c];
                }
                *slot = s;
            }
            v = nv;
        }
        let mut q = vec![T::zero(); k + 2];
        for (i, qi) in q.iter_mut().enumerate() {
            let mut s = T::zero();
            for (j, pj) in p.iter().enumerate() {
                if i >= j {
                    s = s + &t[i - j] * pj;
                }
            }
            *qi = s;
        }
        p = q;
    }
    p.reverse();
    p
}

fn berkowitz_i128(a: &[Vec<i128>]) -> Option<Vec<i128>> {
    let n = a.len();
    let mut p: Vec<i128> = vec![1];
    for k in 0..n {
        let mut t = Vec::with_capacity(k + 2);
        t.push(1i128);
        t.push(a[k][k].checked_neg()?);
        let mut v: Vec<i128> = (0..k).map(|r| a[r][k]).collect();
        for _ in 0..k {
            let mut dot = 0i128;
            for c in 0..k {
                dot = dot.checked_add(a[k][c].checked_mul(v[c])?)?;
            }
            t.push(dot.checked_neg()?);
            let mut nv = vec![0i128; k];
            for (r, slot) in nv.iter_mut().enumerate() {
                let mut s = 0i128;
                for c in 0..k {
                    s = s.checked_add(a[r][c].checked_mul(v[c])?)?;
                }
                *slot = s;
            }
            v = nv;
        }
        let mut q = vec![0i128; k + 2];
        for (i, qi) in q.iter_mut().enumerate() {
            let mut s = 0i128;
            for (j, &pj) in p.iter().enumerate().take(i + 1) {
                s = s.checked_add(t[i - j].checked_mul(pj)?)?;
            }
            *qi = s;
        }
        p = q;
    }
    p.reverse();
    Some(p)
}

/// Leaf-to-root recurrence on each component of a forest:
/// `φ(T_v) = (x − w_v)·Πφ(T_c) − Σ_c w_{vc}²·φ(T_c ∖ c)·Π_{c'≠c}φ(T_{c'})`.
fn forest_charpoly(g: &WeightedGraph) -> Polynomial {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            order.push(u);
            for v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
    }
    // full[v] = φ(T_v), cut[v] = φ(T_v ∖ v)
    let mut full = vec![Polynomial::one(); n];
    let mut cut = vec![Polynomial::one(); n];
    let mut corr = vec![Polynomial::zero(); n];
    for &v in order.iter().rev() {
        let lin = Polynomial::linear_root(g.loop_weight(v));
        let f = &(&lin * &cut[v]) - &corr[v];
        full[v] = f;
        let p = parent[v];
        if p != usize::MAX {
            let w2 = {
                let w = g.weight(v, p).expect("tree edge");
                w * w
            };
            // corr[p] accumulates Σ_c w²·φ(T_c∖c)·Π_{c'≠c}φ(T_c'), maintained
            // incrementally as children arrive.
            corr[p] = &(&corr[p] * &full[v]) + &(&cut[v] * &cut[p]).scale(&w2);
            cut[p] = &cut[p] * &full[v];
        }
    }
    let mut out = Polynomial::one();
    for v in 0..n {
        if parent[v] == usize::MAX {
            out = &out * &full[v];
        }
    }
    out
}

/// `φ^{G∖s}`, uncached.
pub fn deleted_charpoly(g: &WeightedGraph, s: &[usize]) -> Result<Polynomial> {
    Ok(charpoly(&delete_vertices(g, s)?))
}

/// Memo of characteristic polynomials keyed by graph fingerprint and
/// deleted vertex set. Values are pure functions of the key, so concurrent
/// writers always agree.
#[derive(Default)]
pub struct CharPolyCache {
    map: RwLock<HashMap<(u64, Vec<usize>), Polynomial>>,
}

impl CharPolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn deleted_charpoly(&self, g: &WeightedGraph, s: &[usize]) -> Result<Polynomial> {
        let mut key_set = s.to_vec();
        key_set.sort_unstable();
        key_set.dedup();
        let key = (g.fingerprint(), key_set);
        if let Some(p) = self.map.read().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let p = deleted_charpoly(g, &key.1)?;
        self.map.write().expect("cache lock").insert(key, p.clone());
        Ok(p)
    }

    pub fn charpoly(&self, g: &WeightedGraph) -> Polynomial {
        self.deleted_charpoly(g, &[]).expect("empty deletion set")
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.map.write().expect("cache lock").clear();
    }
}

/// Characteristic polynomials of `G ∖ S` for vertex subsets `S` given as bitmasks.
pub struct SubsetCharPolys<'a> {
    g: &'a WeightedGraph,
    full: u64,
    memo: HashMap<u64, Polynomial>,
}

impl<'a> SubsetCharPolys<'a> {
    pub fn new(g: &'a WeightedGraph) -> Result<Self> {
        if g.n() > MAX_MASK_VERTICES {
            return Err(Error::TooLarge(format!(
                "{} vertices; subset enumeration supports at most {MAX_MASK_VERTICES}",
                g.n()
            )));
        }
        let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
        Ok(SubsetCharPolys {
            g,
            full,
            memo: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.g
    }

    /// `φ^{G∖S}` where `removed` is the bitmask of `S`.
    pub fn without(&mut self, removed: u64) -> &Polynomial {
        let keep = self.full & !removed;
        let g = self.g;
        self.memo
            .entry(keep)
            .or_insert_with(|| charpoly(&g.induced_mask(keep)))
    }

    pub fn without_vertices(&mut self, vs: &[usize]) -> Polynomial {
        let mask = vs.iter().fold(0u64, |m, &v| m | 1 << v);
        self.without(mask).clone()
    }
}

/// Simple `i → j` paths grouped by vertex set: mask ↦ Σ w(P).
pub fn paths_by_vertex_set(g: &WeightedGraph, i: usize, j: usize) -> Result<HashMap<u64, Rational>> {
    if g.n() > MAX_MASK_VERTICES {
        return Err(Error::TooLarge(format!("{} vertices for path enumeration", g.n())));
    }
    if i >= g.n() {
        return Err(Error::InvalidVertex(i));
    }
    if j >= g.n() {
        return Err(Error::InvalidVertex(j));
    }
    let mut out: HashMap<u64, Rational> = HashMap::new();
    // Iterative DFS: (vertex, neighbour cursor), with the running weight stack.
    let nbrs: Vec<Vec<(usize, Rational)>> = (0..g.n())
        .map(|v| g.weighted_neighbors(v).map(|(u, w)| (u, w.clone())).collect())
        .collect();
    let mut stack: Vec<(usize, usize)> = vec![(i, 0)];
    let mut weights: Vec<Rational> = vec![Rational::one()];
    let mut mask: u64 = 1 << i;
    while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
        if *cursor >= nbrs[v].len() {
            stack.pop();
            weights.pop();
            mask &= !(1u64 << v);
            continue;
        }
        let (u, ref w) = nbrs[v][*cursor];
        *cursor += 1;
        if mask >> u & 1 == 1 {
            continue;
        }
        let wt = weights.last().expect("nonempty") * w;
        if u == j {
            *out.entry(mask | 1 << u).or_insert_with(Rational::zero) += wt;
            continue;
        }
        mask |= 1 << u;
        stack.push((u, 0));
        weights.push(wt);
    }
    out.retain(|_, w| !w.is_zero());
    Ok(out)
}

/// `Σ_{P: i→j} w(P)·φ^{G∖P}` over simple paths.
pub fn path_sum(g: &WeightedGraph, i: usize, j: usize) -> Result<Polynomial> {
    let mut polys = SubsetCharPolys::new(g)?;
    path_sum_with(&mut polys, i, j)
}

pub fn path_sum_with(polys: &mut SubsetCharPolys<'_>, i: usize, j: usize) -> Result<Polynomial> {
    if i == j {
        return Err(Error::Hypothesis("path_sum needs two distinct vertices".into()));
    }
    let groups = paths_by_vertex_set(polys.graph(), i, j)?;
    let mut masks: Vec<_> = groups.into_iter().collect();
    masks.sort_by_key(|(m, _)| *m);
    let mut total = Polynomial::zero();
    for (m, w) in masks {
        total = &total + &polys.without(m).scale(&w);
    }
    Ok(total)
}

/// `φ^{G∖i}φ^{G∖j} − φ^{G∖{i,j}}φ^G − (path_sum)²`; zero when the identity holds.
pub fn wronskian_defect(polys: &mut SubsetCharPolys<'_>, i: usize, j: usize) -> Result<Polynomial> {
    let ps = path_sum_with(polys, i, j)?;
    let di = polys.without_vertices(&[i]);
    let dj = polys.without_vertices(&[j]);
    let dij = polys.without_vertices(&[i, j]);
    let whole = polys.without(0).clone();
    Ok(&(&(&di * &dj) - &(&dij * &whole)) - &(&ps * &ps))
}

/// Cycles through `a` grouped by vertex set, each undirected cycle counted
/// once per direction: mask ↦ Σ over directed cycles of the weight product.
pub fn directed_cycles_through(g: &WeightedGraph, a: usize) -> Result<HashMap<u64, Rational>> {
    let mut out: HashMap<u64, Rational> = HashMap::new();
    for (b, wab) in g.weighted_neighbors(a) {
        let mut h = g.clone();
        // Paths a → b avoiding the edge ab itself close into cycles of length ≥ 3.
        h = remove_edge(&h, a, b);
        for (m, w) in paths_by_vertex_set(&h, a, b)? {
            *out.entry(m).or_insert_with(Rational::zero) += w * wab;
        }
    }
    out.retain(|_, w| !w.is_zero());
    Ok(out)
}

fn remove_edge(g: &WeightedGraph, a: usize, b: usize) -> WeightedGraph {
    let mut h = WeightedGraph::new(g.n());
    for v in 0..g.n() {
        h.set_loop(v, g.loop_weight(v).clone());
    }
    for (u, v, w) in g.edges() {
        if (u, v) != (a.min(b), a.max(b)) {
            h.add_edge(u, v, w);
        }
    }
    h
}

/// Right-hand side of the cycle expansion at `a`:
/// `(x − w_a)φ^{G∖a} − Σ_{b∼a} w_{ab}²φ^{G∖{a,b}} − 2Σ_{C∋a} w(C)φ^{G∖V(C)}`.
pub fn schwenk_expansion(polys: &mut SubsetCharPolys<'_>, a: usize) -> Result<Polynomial> {
    let g = polys.graph();
    if a >= g.n() {
        return Err(Error::InvalidVertex(a));
    }
    let lin = Polynomial::linear_root(g.loop_weight(a));
    let nbrs: Vec<(usize, Rational)> = g.weighted_neighbors(a).map(|(b, w)| (b, w * w)).collect();
    let mut cycles: Vec<_> = directed_cycles_through(g, a)?.into_iter().collect();
    cycles.sort_by_key(|(m, _)| *m);
    let mut rhs = &lin * polys.without(1 << a);
    for (b, w2) in nbrs {
        rhs = &rhs - &polys.without(1 << a | 1 << b).scale(&w2);
    }
    for (m, w) in cycles {
        rhs = &rhs - &polys.without(m).scale(&w);
    }
    Ok(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    /// Laplace expansion of det(xI − A) along the first row.
    fn cofactor_charpoly(g: &WeightedGraph) -> Polynomial {
        fn det(m: &[Vec<Polynomial>]) -> Polynomial {
            let n = m.len();
            if n == 0 {
                return Polynomial::one();
            }
            let mut total = Polynomial::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != c)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &det(&minor);
                total = if c % 2 == 0 { &total + &term } else { &total - &term };
            }
            total
        }
        let a = g.adjacency();
        let n = g.n();
        let m: Vec<Vec<Polynomial>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let e = Polynomial::constant(-a[r][c].clone());
                        if r == c {
                            &e + &Polynomial::x()
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect();
        det(&m)
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(charpoly(&WeightedGraph::path(4)), p(&[1, 0, -3, 0, 1]));
        let mut k1 = WeightedGraph::new(1);
        k1.set_loop(0, frac(5, 3));
        assert_eq!(charpoly(&k1), Polynomial::linear_root(&frac(5, 3)));
        assert_eq!(charpoly(&WeightedGraph::complete(3)), p(&[-2, -3, 0, 1]));
        assert_eq!(charpoly(&WeightedGraph::empty()), Polynomial::one());
    }

    #[test]
    fn methods_agree_with_cofactor_expansion() {
        let mut g = WeightedGraph::cycle(5);
        g.add_edge(0, 2, frac(3, 2));
        g.set_loop(4, rat(-2));
        let mut t = WeightedGraph::star(3);
        t.add_edge(3, 2, rat(-4));
        let mut wt = WeightedGraph::path(5);
        wt.set_loop(2, frac(1, 2));
        let mut h = WeightedGraph::new(2);
        h.add_edge(0, 1, rat(3));
        let wt = wt.disjoint_union(&h);
        for g in [g, t, wt, WeightedGraph::complete(5), WeightedGraph::new(3)] {
            let oracle = cofactor_charpoly(&g);
            assert_eq!(charpoly(&g), oracle);
            assert_eq!(charpoly_berkowitz(&g), oracle);
        }
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let mut g = WeightedGraph::complete(6);
        for (u, v, _) in g.clone().edges() {
            g = remove_edge(&g, u, v);
            g.add_edge(u, v, Rational::from_integer(BigInt::from(1u64 << 40)));
        }
        assert_eq!(charpoly_berkowitz(&g), cofactor_charpoly(&g));
    }

    #[test]
    fn deleted_examples() {
        let p4 = WeightedGraph::path(4);
        assert_eq!(deleted_charpoly(&p4, &[0]).unwrap(), p(&[0, -2, 0, 1]));
        assert_eq!(deleted_charpoly(&WeightedGraph::path(3), &[0, 2]).unwrap(), p(&[0, 1]));
        assert_eq!(deleted_charpoly(&WeightedGraph::new(1), &[0]).unwrap(), Polynomial::one());
        assert!(deleted_charpoly(&p4, &[9]).is_err());
    }

    #[test]
    fn cache_matches_fresh_values() {
        let cache = CharPolyCache::new();
        let g = WeightedGraph::cycle(6);
        for s in [vec![], vec![0], vec![2, 0], vec![0, 2]] {
            assert_eq!(cache.deleted_charpoly(&g, &s).unwrap(), deleted_charpoly(&g, &s).unwrap());
        }
        assert_eq!(cache.len(), 3);
    }

    #[test]
    fn path_sum_examples() {
        assert_eq!(path_sum(&WeightedGraph::path(3), 0, 2).unwrap(), Polynomial::one());
        assert_eq!(path_sum(&WeightedGraph::path(4), 0, 3).unwrap(), Polynomial::one());
        // K3: the edge 1–2 leaves K1 (φ = x), the path 1–3–2 leaves nothing.
        assert_eq!(path_sum(&WeightedGraph::complete(3), 0, 1).unwrap(), p(&[1, 1]));
        assert!(path_sum(&WeightedGraph::path(3), 1, 1).is_err());
    }

    #[test]
    fn wronskian_holds_on_small_weighted_graphs() {
        let mut g = WeightedGraph::cycle(5);
        g.add_edge(0, 2, frac(-3, 2));
        g.set_loop(1, rat(2));
        let mut polys = SubsetCharPolys::new(&g).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert!(wronskian_defect(&mut polys, i, j).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn schwenk_expansion_on_k4_and_weighted_cycle() {
        let k4 = WeightedGraph::complete(4);
        let mut polys = SubsetCharPolys::new(&k4).unwrap();
        assert_eq!(schwenk_expansion(&mut polys, 0).unwrap(), charpoly(&k4));

        let mut g = WeightedGraph::cycle(4);
        g.add_edge(0, 2, frac(2, 3));
        g.set_loop(0, rat(1));
        let mut polys = SubsetCharPolys::new(&g).unwrap();
        for a in 0..4 {
            assert_eq!(schwenk_expansion(&mut polys, a).unwrap(), cofactor_charpoly(&g));
        }
    }

    #[test]
    fn disjoint_union_multiplies() {
        let a = WeightedGraph::cycle(4);
        let b = WeightedGraph::star(3);
        assert_eq!(charpoly(&a.disjoint_union(&b)), &charpoly(&a) * &charpoly(&b));
    }
}

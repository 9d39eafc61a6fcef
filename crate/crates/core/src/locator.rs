//! Tree eigenvalue location by the `d_i` recurrence, and the subdivided-bridge
//! non-integrality certificate.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, Rational};
use crate::algebra::{count_roots_below, AlgebraicNumber, ExtendedValue, Polynomial, RationalFunction};
use crate::charpoly::charpoly;
use crate::error::{Error, Result};
use crate::graph::{Gadget, WeightedGraph};
use crate::spectral::{alpha, support};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCounts {
    pub positive: usize,
    pub poles: usize,
    pub zeros: usize,
    pub negative: usize,
}

impl SignCounts {
    fn record(&mut self, v: &ExtendedValue) {
        match v {
            ExtendedValue::Infinity => self.poles += 1,
            v if v.is_positive() => self.positive += 1,
            v if v.is_zero() => self.zeros += 1,
            _ => self.negative += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.positive + self.poles + self.zeros + self.negative
    }

    /// Eigenvalues in `(−∞, θ)`.
    pub fn open(&self) -> usize {
        self.positive + self.poles
    }

    /// Eigenvalues in `(−∞, θ]`; each pole absorbs exactly one zero child.
    pub fn closed(&self) -> usize {
        self.positive + self.zeros
    }
}

/// A tree with optional gadgets hanging off its vertices by an edge to the gadget root.
#[derive(Clone, Debug)]
pub struct LocatorInput {
    pub tree: WeightedGraph,
    pub root: usize,
    pub gadgets: BTreeMap<usize, Gadget>,
}

impl LocatorInput {
    pub fn tree(tree: WeightedGraph, root: usize) -> Self {
        LocatorInput {
            tree,
            root,
            gadgets: BTreeMap::new(),
        }
    }

    /// The graph the counts refer to: tree vertices first, then each gadget in key order.
    pub fn assemble(&self) -> WeightedGraph {
        let mut g = self.tree.clone();
        for (&v, gd) in &self.gadgets {
            let off = g.n();
            g = g.disjoint_union(&gd.graph);
            g.add_unit_edge(v, off + gd.root);
        }
        g
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocatorTrace {
    pub root: usize,
    #[serde(with = "rational::serde_rational")]
    pub theta: Rational,
    /// `d_i(θ)` keyed by 1-based tree vertex.
    pub values: BTreeMap<usize, ExtendedValue>,
    /// `α(θ)` of each pendant gadget at its root, keyed by the 1-based host vertex.
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub gadget_values: BTreeMap<usize, ExtendedValue>,
    pub counts: SignCounts,
}

impl LocatorTrace {
    pub fn value(&self, v: usize) -> &ExtendedValue {
        &self.values[&(v + 1)]
    }
}

/// Children lists and a post-order of `t` rooted at `root`.
fn rooted_order(t: &WeightedGraph, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let n = t.n();
    let mut parent = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push(w);
            }
        }
    }
    order.reverse();
    (parent, order)
}

pub fn locator_eval(input: &LocatorInput, theta: &Rational) -> Result<LocatorTrace> {
    let t = &input.tree;
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if input.root >= t.n() {
        return Err(Error::InvalidVertex(input.root + 1));
    }
    let mut counts = SignCounts::default();
    let mut extra: Vec<ExtendedValue> = vec![ExtendedValue::zero(); t.n()];
    let mut gadget_values = BTreeMap::new();
    for (&v, gd) in &input.gadgets {
        if v >= t.n() {
            return Err(Error::InvalidVertex(v + 1));
        }
        let a = alpha(&gd.graph, gd.root)?.base;
        let av = a.eval_extended(theta);
        // Interior inertia of the gadget without its root.
        let interior = crate::graph::delete_vertices(&gd.graph, &[gd.root])?;
        let phi = charpoly(&interior);
        if interior.n() > 0 && phi.eval(theta).is_zero() {
            return Err(Error::Hypothesis(format!(
                "θ = {} is an eigenvalue of the gadget at vertex {} minus its root",
                rational::fmt_rational(theta),
                v + 1
            )));
        }
        let below = count_roots_below(&phi, theta, false)?;
        counts.positive += below;
        counts.negative += interior.n() - below;
        counts.record(&av);
        extra[v] = av.recip();
        gadget_values.insert(v + 1, av);
    }
    let (parent, order) = rooted_order(t, input.root);
    let mut d: Vec<ExtendedValue> = vec![ExtendedValue::zero(); t.n()];
    let mut acc: Vec<ExtendedValue> = extra;
    for &v in &order {
        let base = ExtendedValue::Finite(theta - t.loop_weight(v));
        d[v] = base.sub(&acc[v]);
        if let Some(p) = parent[v] {
            let w = t.weight(v, p).expect("tree edge");
            let term = d[v].recip().scale(&(w * w));
            acc[p] = acc[p].add(&term);
        }
    }
    let mut values = BTreeMap::new();
    for (v, dv) in d.into_iter().enumerate() {
        counts.record(&dv);
        values.insert(v + 1, dv);
    }
    Ok(LocatorTrace {
        root: input.root + 1,
        theta: theta.clone(),
        values,
        gadget_values,
        counts,
    })
}

/// Eigenvalues of the assembled graph below `θ` (or at most `θ` when `closed`).
pub fn count_below(input: &LocatorInput, theta: &Rational, closed: bool) -> Result<usize> {
    let tr = locator_eval(input, theta)?;
    Ok(if closed { tr.counts.closed() } else { tr.counts.open() })
}

pub fn count_below_tree(t: &WeightedGraph, theta: &Rational, closed: bool) -> Result<usize> {
    count_below(&LocatorInput::tree(t.clone(), 0), theta, closed)
}

/// The same count from a Sturm sequence of the characteristic polynomial.
pub fn sturm_count(g: &WeightedGraph, theta: &Rational, closed: bool) -> Result<usize> {
    count_roots_below(&charpoly(g), theta, closed)
}

/// `α_v^{T(v)}` for the subtree below every vertex, as exact rational functions.
pub fn subtree_alphas(t: &WeightedGraph, root: usize) -> Result<Vec<RationalFunction>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let (parent, order) = rooted_order(t, root);
    let mut acc = vec![RationalFunction::zero(); t.n()];
    let mut out = vec![RationalFunction::zero(); t.n()];
    for &v in &order {
        let f = RationalFunction::x().sub_constant(t.loop_weight(v)).sub(&acc[v]);
        if let Some(p) = parent[v] {
            let w = t.weight(v, p).expect("tree edge");
            acc[p] = acc[p].add(&f.recip()?.scale(&(w * w)));
        }
        out[v] = f;
    }
    Ok(out)
}

/// Exact certificate that a graph with a long subdivided bridge is not integral.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonIntegralityCertificate {
    /// 1-based.
    pub endpoints: (usize, usize),
    /// 1-based inner vertices of the unique path, in order from the first endpoint.
    pub inner_path: Vec<usize>,
    pub support_polynomial: Polynomial,
    pub distinct_eigenvalues_in_open_interval: Vec<AlgebraicNumber>,
    pub non_integer: AlgebraicNumber,
    pub conclusion: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BridgeOutcome {
    Certified(NonIntegralityCertificate),
    NotApplicable { reason: String },
}

pub const MAX_BRIDGE_PATHS: usize = 1_000_000;
pub const MIN_BRIDGE_EDGES: usize = 7;

/// Simple `u–v` paths, or `None` past `cap`; stops early once two are found
/// when `stop_at_two` is set.
fn simple_paths(g: &WeightedGraph, u: usize, v: usize, cap: usize, stop_at_two: bool) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|x| g.neighbors(x).collect()).collect();
    let mut on = vec![false; n];
    let mut path = vec![u];
    let mut idx = vec![0usize];
    on[u] = true;
    let mut found = Vec::new();
    let mut visited = 0usize;
    while let Some(&top) = path.last() {
        let k = *idx.last().expect("parallel stacks");
        if top == v {
            found.push(path.clone());
            if stop_at_two && found.len() >= 2 {
                return Some(found);
            }
            on[top] = false;
            path.pop();
            idx.pop();
            continue;
        }
        if k < nbrs[top].len() {
            *idx.last_mut().expect("parallel stacks") += 1;
            let w = nbrs[top][k];
            if !on[w] {
                visited += 1;
                if visited > cap {
                    return None;
                }
                on[w] = true;
                path.push(w);
                idx.push(0);
            }
        } else {
            on[top] = false;
            path.pop();
            idx.pop();
        }
    }
    Some(found)
}

pub fn bridge_certificate(g: &WeightedGraph, u: usize, v: usize) -> Result<BridgeOutcome> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::InvalidVertex(x + 1));
        }
    }
    if u == v {
        return Err(Error::Hypothesis("the bridge endpoints must differ".into()));
    }
    let na = |reason: String| Ok(BridgeOutcome::NotApplicable { reason });
    if !g.is_unweighted() {
        return na("the graph is weighted or has loops".into());
    }
    let Some(paths) = simple_paths(g, u, v, MAX_BRIDGE_PATHS, true) else {
        return na(format!("more than {MAX_BRIDGE_PATHS} partial paths explored"));
    };
    if paths.len() != 1 {
        return na(format!(
            "{} paths between {} and {}",
            if paths.is_empty() { "no" } else { "several" },
            u + 1,
            v + 1
        ));
    }
    let path = &paths[0];
    if path.len() - 1 < MIN_BRIDGE_EDGES {
        return na(format!("the path has {} edges, fewer than {MIN_BRIDGE_EDGES}", path.len() - 1));
    }
    let inner = &path[1..path.len() - 1];
    if let Some(&w) = inner.iter().find(|&&w| g.degree(w) != 2) {
        return na(format!("inner vertex {} has degree {}", w + 1, g.degree(w)));
    }
    let s = support(g, u)?;
    let lo = Rational::from_integer((-2).into());
    let hi = Rational::from_integer(2.into());
    let inside: Vec<AlgebraicNumber> = s.roots.iter().filter(|r| r.in_open_interval(&lo, &hi)).cloned().collect();
    if inside.len() < 4 {
        return Err(Error::Invariant(format!(
            "only {} support eigenvalues of vertex {} in (−2, 2)",
            inside.len(),
            u + 1
        )));
    }
    let Some(non_integer) = inside.iter().find(|r| r.integer_value().is_none()).cloned() else {
        return Err(Error::Invariant("no non-integer root among at least 4 in (−2, 2)".into()));
    };
    Ok(BridgeOutcome::Certified(NonIntegralityCertificate {
        endpoints: (u + 1, v + 1),
        inner_path: inner.iter().map(|w| w + 1).collect(),
        support_polynomial: s.defining_polynomial,
        distinct_eigenvalues_in_open_interval: inside,
        non_integer,
        conclusion: "graph not integral".into(),
    }))
}

/// Re-checks a certificate against `g` using only exact operations.
pub fn check_bridge_certificate(g: &WeightedGraph, c: &NonIntegralityCertificate) -> bool {
    let phi = charpoly(g);
    let lo = Rational::from_integer((-2).into());
    let hi = Rational::from_integer(2.into());
    let roots = &c.distinct_eigenvalues_in_open_interval;
    let distinct = roots
        .iter()
        .enumerate()
        .all(|(i, a)| roots[i + 1..].iter().all(|b| !a.exact_eq(b)));
    let (u, v) = (c.endpoints.0.wrapping_sub(1), c.endpoints.1.wrapping_sub(1));
    let path_ok = u < g.n()
        && v < g.n()
        && c.inner_path.len() + 1 >= MIN_BRIDGE_EDGES
        && c.inner_path.iter().all(|&w| w >= 1 && w <= g.n() && g.degree(w - 1) == 2);
    path_ok
        && roots.len() >= 4
        && distinct
        && roots.iter().all(|r| r.is_root_of(&phi) && r.in_open_interval(&lo, &hi))
        && c.non_integer.is_root_of(&phi)
        && c.non_integer.integer_value().is_none()
}

/// Sign counts of `d_v(θ)` over the given (0-based) vertices.
pub fn path_signs(trace: &LocatorTrace, path: &[usize]) -> SignCounts {
    let mut c = SignCounts::default();
    for &v in path {
        c.record(trace.value(v));
    }
    c
}

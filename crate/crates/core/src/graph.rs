//! Weighted graphs with loops, decorated paths and file formats.
//!
//! Vertices are 0-based everywhere in the Rust API. The JSON and edge-list
//! formats, and the CLI, number vertices from 1.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::rational::{self, parse_rational, value_to_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeightedGraph {
    adj: Vec<BTreeMap<usize, Rational>>,
    loops: Vec<Rational>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            adj: vec![BTreeMap::new(); n],
            loops: vec![Rational::zero(); n],
        }
    }

    pub fn empty() -> Self {
        Self::new(0)
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for v in 1..n {
            g.add_unit_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_unit_edge(n - 1, 0);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_unit_edge(u, v);
            }
        }
        g
    }

    /// `K_{1,k}` with the centre at vertex 0.
    pub fn star(k: usize) -> Self {
        let mut g = Self::new(k + 1);
        for v in 1..=k {
            g.add_unit_edge(0, v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v, Rational::one())?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.len()).sum::<usize>() / 2
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex(v))
        }
    }

    /// Adds `{u, v}` with weight `w`; rejects self-loops and duplicates.
    pub fn try_add_edge(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoopInEdgeList(u + 1));
        }
        if self.adj[u].contains_key(&v) {
            return Err(Error::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
        }
        if w.is_zero() {
            return Ok(());
        }
        self.adj[u].insert(v, w.clone());
        self.adj[v].insert(u, w);
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: Rational) {
        self.try_add_edge(u, v, w).expect("valid edge");
    }

    pub fn add_unit_edge(&mut self, u: usize, v: usize) {
        self.add_edge(u, v, Rational::one());
    }

    pub fn set_loop(&mut self, v: usize, w: Rational) {
        self.loops[v] = w;
    }

    pub fn loop_weight(&self, v: usize) -> &Rational {
        &self.loops[v]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.adj[u].get(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains_key(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].keys().copied()
    }

    pub fn weighted_neighbors(&self, v: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.adj[v].iter().map(|(&u, w)| (u, w))
    }

    /// Edges `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for (u, m) in self.adj.iter().enumerate() {
            for (&v, w) in m.range(u + 1..) {
                out.push((u, v, w.clone()));
            }
        }
        out
    }

    pub fn has_loops(&self) -> bool {
        self.loops.iter().any(|w| !w.is_zero())
    }

    /// True when every edge weight is 1 and no loops are present.
    pub fn is_unweighted(&self) -> bool {
        !self.has_loops() && self.adj.iter().all(|m| m.values().all(|w| w.is_one()))
    }

    pub fn has_integer_weights(&self) -> bool {
        self.loops.iter().all(rational::is_integer)
            && self.adj.iter().all(|m| m.values().all(rational::is_integer))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.is_connected() && self.edge_count() + 1 == self.n()
    }

    /// Dense adjacency matrix with loops on the diagonal.
    pub fn adjacency(&self) -> Vec<Vec<Rational>> {
        let n = self.n();
        let mut a = vec![vec![Rational::zero(); n]; n];
        for u in 0..n {
            a[u][u] = self.loops[u].clone();
            for (&v, w) in &self.adj[u] {
                a[u][v] = w.clone();
            }
        }
        a
    }

    pub fn adjacency_f64(&self) -> Vec<Vec<f64>> {
        self.adjacency()
            .iter()
            .map(|row| row.iter().map(rational::to_f64).collect())
            .collect()
    }

    /// Induced subgraph on `keep` (in the given order).
    pub fn induced(&self, keep: &[usize]) -> WeightedGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (k, &v) in keep.iter().enumerate() {
            index[v] = k;
        }
        let mut h = WeightedGraph::new(keep.len());
        for (k, &v) in keep.iter().enumerate() {
            h.loops[k] = self.loops[v].clone();
            for (&u, w) in &self.adj[v] {
                let j = index[u];
                if j != usize::MAX {
                    h.adj[k].insert(j, w.clone());
                }
            }
        }
        h
    }

    /// Induced subgraph on the vertices whose bit is set in `mask`.
    pub fn induced_mask(&self, mask: u64) -> WeightedGraph {
        let keep: Vec<usize> = (0..self.n()).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced(&keep)
    }

    /// Fingerprint of the weighted adjacency structure (not an isomorphism invariant).
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    /// Disjoint union; vertices of `other` are offset by `self.n()`.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> WeightedGraph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend(other.adj.iter().map(|m| {
            m.iter()
                .map(|(&v, w)| (v + off, w.clone()))
                .collect::<BTreeMap<_, _>>()
        }));
        g.loops.extend(other.loops.iter().cloned());
        g
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges()
            .into_iter()
            .map(|(u, v, w)| {
                if w.is_one() {
                    json!([u + 1, v + 1])
                } else {
                    json!([u + 1, v + 1, rational::fmt_rational(&w)])
                }
            })
            .collect();
        let loops: Vec<Value> = self
            .loops
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(v, w)| json!([v + 1, rational::fmt_rational(w)]))
            .collect();
        json!({"n": self.n(), "edges": edges, "loops": loops})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: msg.to_string(),
        };
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"n\""))? as usize;
        let mut g = WeightedGraph::new(n);
        let vertex = |x: &Value| -> Result<usize> {
            let k = x.as_u64().ok_or_else(|| bad("vertex must be a positive integer"))? as usize;
            if k == 0 || k > n {
                return Err(Error::InvalidVertex(k));
            }
            Ok(k - 1)
        };
        if let Some(edges) = v.get("edges") {
            let edges = edges.as_array().ok_or_else(|| bad("\"edges\" must be an array"))?;
            for e in edges {
                let e = e.as_array().ok_or_else(|| bad("edge must be an array"))?;
                if e.len() != 2 && e.len() != 3 {
                    return Err(bad("edge must be [u, v] or [u, v, w]"));
                }
                let (a, b) = (vertex(&e[0])?, vertex(&e[1])?);
                let w = match e.get(2) {
                    Some(w) => value_to_rational(w).map_err(|m| bad(&m))?,
                    None => Rational::one(),
                };
                g.try_add_edge(a, b, w)?;
            }
        }
        if let Some(loops) = v.get("loops") {
            let loops = loops.as_array().ok_or_else(|| bad("\"loops\" must be an array"))?;
            for l in loops {
                let l = l.as_array().ok_or_else(|| bad("loop must be [v, w]"))?;
                if l.len() != 2 {
                    return Err(bad("loop must be [v, w]"));
                }
                let a = vertex(&l[0])?;
                g.loops[a] = value_to_rational(&l[1]).map_err(|m| bad(&m))?;
            }
        }
        Ok(g)
    }

    /// Edge-list text; vertex labels are integers, renumbered in ascending order.
    pub fn to_edgelist(&self) -> String {
        let mut out = format!("# n {}\n", self.n());
        for (u, v, w) in self.edges() {
            if w.is_one() {
                out.push_str(&format!("{} {}\n", u + 1, v + 1));
            } else {
                out.push_str(&format!("{} {} {}\n", u + 1, v + 1, w));
            }
        }
        for (v, w) in self.loops.iter().enumerate() {
            if !w.is_zero() {
                out.push_str(&format!("loop {} {}\n", v + 1, w));
            }
        }
        out
    }

    pub fn from_edgelist(text: &str) -> Result<Self> {
        enum Line {
            Edge(i64, i64, Rational),
            Loop(i64, Rational),
        }
        let mut lines = Vec::new();
        let mut labels = BTreeSet::new();
        let mut declared: Option<usize> = None;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let bad = |msg: String| Error::Parse { line: line_no, msg };
            let label = |s: &str| -> Result<i64> {
                s.parse::<i64>()
                    .map_err(|_| bad(format!("invalid vertex label \"{s}\"")))
            };
            let weight = |s: &str| -> Result<Rational> {
                parse_rational(s).map_err(|_| bad(format!("invalid weight \"{s}\"")))
            };
            let trimmed = raw.trim();
            if let Some(rest) = trimmed.strip_prefix("# n ") {
                // Header written by `to_edgelist`, keeps isolated vertices.
                declared = rest.trim().parse().ok();
                continue;
            }
            let body = trimmed.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks[0] == "loop" {
                if toks.len() != 3 {
                    return Err(bad("expected \"loop v w\"".into()));
                }
                let v = label(toks[1])?;
                labels.insert(v);
                lines.push((line_no, Line::Loop(v, weight(toks[2])?)));
            } else {
                if toks.len() != 2 && toks.len() != 3 {
                    return Err(bad("expected \"u v [w]\"".into()));
                }
                let (u, v) = (label(toks[0])?, label(toks[1])?);
                let w = match toks.get(2) {
                    Some(t) => weight(t)?,
                    None => Rational::one(),
                };
                labels.insert(u);
                labels.insert(v);
                lines.push((line_no, Line::Edge(u, v, w)));
            }
        }
        let (n, index): (usize, BTreeMap<i64, usize>) = match declared {
            Some(n) if labels.iter().all(|&l| l >= 1 && l as usize <= n) => {
                (n, labels.iter().map(|&l| (l, l as usize - 1)).collect())
            }
            _ => (labels.len(), labels.iter().enumerate().map(|(k, &l)| (l, k)).collect()),
        };
        let mut g = WeightedGraph::new(n);
        for (line_no, l) in lines {
            let at = |e: Error| match e {
                Error::DuplicateEdge(..) | Error::SelfLoopInEdgeList(_) => Error::Parse {
                    line: line_no,
                    msg: e.to_string(),
                },
                e => e,
            };
            match l {
                Line::Edge(u, v, w) => g.try_add_edge(index[&u], index[&v], w).map_err(at)?,
                Line::Loop(v, w) => g.loops[index[&v]] = w,
            }
        }
        Ok(g)
    }
}

/// Removes the vertices in `s`, keeping the remaining ones in order.
pub fn delete_vertices(g: &WeightedGraph, s: &[usize]) -> Result<WeightedGraph> {
    let mut gone = vec![false; g.n()];
    for &v in s {
        g.check(v)?;
        gone[v] = true;
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !gone[v]).collect();
    Ok(g.induced(&keep))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Edgelist,
}

pub fn parse_graph(text: &str, format: Format) -> Result<WeightedGraph> {
    match format {
        Format::Json => {
            let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                msg: e.to_string(),
            })?;
            WeightedGraph::from_json(&v)
        }
        Format::Edgelist => WeightedGraph::from_edgelist(text),
    }
}

pub fn serialize_graph(g: &WeightedGraph, format: Format) -> String {
    match format {
        Format::Json => g.to_json().to_string(),
        Format::Edgelist => g.to_edgelist(),
    }
}

/// A rooted graph glued to one vertex of the host path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gadget {
    pub graph: WeightedGraph,
    pub root: usize,
}

impl Gadget {
    pub fn new(graph: WeightedGraph, root: usize) -> Result<Self> {
        graph.check(root)?;
        Ok(Gadget { graph, root })
    }

    pub fn vertex() -> Self {
        Gadget {
            graph: WeightedGraph::new(1),
            root: 0,
        }
    }
}

/// Rooted product of the path `P_n` with gadgets `G_1, …, G_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedPath {
    pub gadgets: Vec<Gadget>,
}

/// An assembled decorated path: `roots[k]` is the vertex of path position `k`.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub graph: WeightedGraph,
    pub roots: Vec<usize>,
}

impl DecoratedPath {
    pub fn new(gadgets: Vec<Gadget>) -> Result<Self> {
        if gadgets.is_empty() {
            return Err(Error::Hypothesis("a decorated path needs at least one gadget".into()));
        }
        Ok(DecoratedPath { gadgets })
    }

    /// The bare path `P_n`.
    pub fn bare(n: usize) -> Self {
        DecoratedPath {
            gadgets: vec![Gadget::vertex(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }

    pub fn total_vertices(&self) -> usize {
        self.gadgets.iter().map(|g| g.graph.n()).sum()
    }

    pub fn is_bare(&self) -> bool {
        self.gadgets.iter().all(|g| g.graph.n() == 1 && !g.graph.has_loops())
    }

    pub fn assemble(&self) -> Assembled {
        let mut graph = WeightedGraph::empty();
        let mut roots = Vec::with_capacity(self.len());
        for gd in &self.gadgets {
            roots.push(graph.n() + gd.root);
            graph = graph.disjoint_union(&gd.graph);
        }
        for k in 1..roots.len() {
            graph.add_unit_edge(roots[k - 1], roots[k]);
        }
        Assembled { graph, roots }
    }

    pub fn reversed(&self) -> DecoratedPath {
        let mut gadgets = self.gadgets.clone();
        gadgets.reverse();
        DecoratedPath { gadgets }
    }

    pub fn to_json(&self) -> Value {
        let gadgets: Vec<Value> = self
            .gadgets
            .iter()
            .map(|g| json!({"graph": g.graph.to_json(), "root": g.root + 1}))
            .collect();
        json!({"path": self.len(), "gadgets": gadgets})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            msg: msg.to_string(),
        };
        let n = v
            .get("path")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field \"path\""))? as usize;
        let gadgets = match v.get("gadgets") {
            Some(gs) => {
                let gs = gs.as_array().ok_or_else(|| bad("\"gadgets\" must be an array"))?;
                gs.iter()
                    .map(|g| {
                        let graph = WeightedGraph::from_json(
                            g.get("graph").ok_or_else(|| bad("gadget needs \"graph\""))?,
                        )?;
                        let root = g
                            .get("root")
                            .and_then(Value::as_u64)
                            .ok_or_else(|| bad("gadget needs integer \"root\""))?
                            as usize;
                        if root == 0 {
                            return Err(Error::InvalidVertex(0));
                        }
                        Gadget::new(graph, root - 1).map_err(|_| Error::InvalidVertex(root))
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            None => vec![Gadget::vertex(); n],
        };
        if gadgets.len() != n {
            return Err(bad("number of gadgets must equal \"path\""));
        }
        DecoratedPath::new(gadgets)
    }
}

/// Reads either a decorated path (`"path"` key) or a plain graph, as JSON or edge list.
pub enum Input {
    Graph(WeightedGraph),
    Decorated(DecoratedPath),
}

pub fn parse_input(text: &str) -> Result<Input> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        if v.get("path").is_some() {
            Ok(Input::Decorated(DecoratedPath::from_json(&v)?))
        } else {
            Ok(Input::Graph(WeightedGraph::from_json(&v)?))
        }
    } else {
        Ok(Input::Graph(WeightedGraph::from_edgelist(text)?))
    }
}

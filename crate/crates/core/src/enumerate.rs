//! Exhaustive and random instance generators: rooted and free trees, connected
//! graphs up to isomorphism, decorated and mirror-symmetric paths.

use std::collections::{HashMap, HashSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::RationalFunction;
use crate::error::{Error, Result};
use crate::graph::{DecoratedPath, Gadget, WeightedGraph};
use crate::spectral::alpha;

/// Tree with parent of vertex `i` the last earlier vertex one level up.
fn from_levels(levels: &[usize]) -> WeightedGraph {
    let mut g = WeightedGraph::new(levels.len());
    let mut last_at = vec![0usize; levels.len() + 1];
    for (i, &l) in levels.iter().enumerate() {
        if i > 0 {
            g.add_unit_edge(last_at[l - 1], i);
        }
        last_at[l] = i;
    }
    g
}

/// All rooted trees on `n` vertices up to isomorphism, root 0
/// (canonical level sequences in reverse lexicographic order).
pub fn rooted_trees(n: usize) -> Vec<Gadget> {
    if n == 0 {
        return Vec::new();
    }
    let mut levels: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Gadget::new(from_levels(&levels), 0).expect("root 0 exists"));
        let Some(p) = levels.iter().rposition(|&l| l > 1) else {
            break;
        };
        let q = levels[..p]
            .iter()
            .rposition(|&l| l == levels[p] - 1)
            .expect("a parent level exists");
        for i in p..n {
            levels[i] = levels[i - (p - q)];
        }
    }
    out
}

/// `rooted_trees(k)` for `k = 0..=max` (index 0 is empty).
pub fn rooted_trees_upto(max: usize) -> Vec<Vec<Gadget>> {
    (0..=max).map(rooted_trees).collect()
}

/// AHU encoding of `t` rooted at `r`.
pub fn rooted_code(t: &WeightedGraph, r: usize) -> String {
    fn go(t: &WeightedGraph, v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = t
            .neighbors(v)
            .filter(|&w| Some(w) != parent)
            .map(|w| go(t, w, Some(v)))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    go(t, r, None)
}

/// Centre vertices of a tree (one or two).
pub fn tree_centres(t: &WeightedGraph) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for w in t.neighbors(v) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[v] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Isomorphism-invariant code of a free tree.
pub fn tree_code(t: &WeightedGraph) -> String {
    tree_centres(t)
        .into_iter()
        .map(|c| rooted_code(t, c))
        .min()
        .unwrap_or_default()
}

/// All trees on `n` vertices up to isomorphism.
pub fn free_trees(n: usize) -> Vec<WeightedGraph> {
    let mut seen = HashSet::new();
    rooted_trees(n)
        .into_iter()
        .filter_map(|g| seen.insert(tree_code(&g.graph)).then_some(g.graph))
        .collect()
}

fn bitmasks(g: &WeightedGraph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
        .collect()
}

fn refine(adj: &[u64], colors: &mut Vec<usize>) {
    let n = adj.len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        let before = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        *colors = sigs.iter().map(|s| uniq.binary_search(s).expect("present")).collect();
        if uniq.len() == before {
            return;
        }
    }
}

fn code_of(adj: &[u64], order: &[usize]) -> u64 {
    let mut code = 0u64;
    let mut bit = 0;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

fn search(adj: &[u64], mut colors: Vec<usize>, best: &mut Option<(u64, Vec<usize>)>) {
    refine(adj, &mut colors);
    let n = adj.len();
    let mut by_color: Vec<(usize, usize)> = (0..n).map(|v| (colors[v], v)).collect();
    by_color.sort_unstable();
    let cell_color = (0..n)
        .map(|v| colors[v])
        .filter(|&c| colors.iter().filter(|&&d| d == c).count() > 1)
        .min();
    match cell_color {
        None => {
            let order: Vec<usize> = by_color.into_iter().map(|(_, v)| v).collect();
            let code = code_of(adj, &order);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                *best = Some((code, order));
            }
        }
        Some(c) => {
            for v in (0..n).filter(|&v| colors[v] == c) {
                let split = (0..n)
                    .map(|w| 2 * colors[w] + usize::from(colors[w] == c && w != v))
                    .collect();
                search(adj, split, best);
            }
        }
    }
}

/// Canonical relabelling of a simple unweighted graph on at most 11 vertices:
/// the code and the vertex order realizing it.
pub fn canonical_form(g: &WeightedGraph) -> (u64, Vec<usize>) {
    assert!(g.n() <= 11, "canonical codes fit 11 vertices");
    let adj = bitmasks(g);
    let mut best = None;
    search(&adj, vec![0; g.n()], &mut best);
    best.unwrap_or((0, Vec::new()))
}

fn graph_from_code(n: usize, code: u64) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if code >> bit & 1 == 1 {
                g.add_unit_edge(i, j);
            }
            bit += 1;
        }
    }
    g
}

/// All graphs on `n` vertices up to isomorphism, by one-vertex extension.
pub fn all_graphs(n: usize) -> Result<Vec<WeightedGraph>> {
    if n > 9 {
        return Err(Error::TooLarge(format!("graph enumeration is limited to 9 vertices, got {n}")));
    }
    let mut level: Vec<u64> = vec![0];
    for k in 1..n {
        let mut next = HashSet::new();
        for &code in &level {
            let base = graph_from_code(k, code);
            let edges = base.edges();
            for mask in 0u64..(1 << k) {
                let mut g = WeightedGraph::new(k + 1);
                for (u, v, _) in &edges {
                    g.add_unit_edge(*u, *v);
                }
                for w in (0..k).filter(|w| mask >> w & 1 == 1) {
                    g.add_unit_edge(w, k);
                }
                next.insert(canonical_form(&g).0);
            }
        }
        let mut v: Vec<u64> = next.into_iter().collect();
        v.sort_unstable();
        level = v;
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(level.into_iter().map(|c| graph_from_code(n, c)).collect())
}

pub fn connected_graphs(n: usize) -> Result<Vec<WeightedGraph>> {
    Ok(all_graphs(n)?.into_iter().filter(|g| g.is_connected()).collect())
}

/// Every decorated path whose gadgets are rooted trees with at most `max_total` vertices in all.
pub fn decorated_paths(max_total: usize) -> Vec<DecoratedPath> {
    let trees = rooted_trees_upto(max_total);
    let mut out = Vec::new();
    let mut cur: Vec<Gadget> = Vec::new();
    fn go(trees: &[Vec<Gadget>], left: usize, cur: &mut Vec<Gadget>, out: &mut Vec<DecoratedPath>) {
        if !cur.is_empty() {
            out.push(DecoratedPath::new(cur.clone()).expect("nonempty"));
        }
        for k in 1..=left {
            for t in &trees[k] {
                cur.push(t.clone());
                go(trees, left - k, cur, out);
                cur.pop();
            }
        }
    }
    go(&trees, max_total, &mut cur, &mut out);
    out
}

/// Rooted trees grouped by their root α.
pub fn alpha_classes(max_size: usize) -> Result<Vec<Vec<Gadget>>> {
    let mut by_alpha: HashMap<RationalFunction, Vec<Gadget>> = HashMap::new();
    let mut keys = Vec::new();
    for k in 1..=max_size {
        for t in rooted_trees(k) {
            let a = alpha(&t.graph, t.root)?.base;
            let entry = by_alpha.entry(a.clone()).or_default();
            if entry.is_empty() {
                keys.push(a);
            }
            entry.push(t);
        }
    }
    Ok(keys.into_iter().map(|k| by_alpha.remove(&k).expect("key")).collect())
}

/// Every decorated path of length ≥ 2 with rooted-tree gadgets, at most `max_total`
/// vertices, and equal gadget α at mirrored positions.
pub fn mirror_paths(max_total: usize) -> Result<Vec<DecoratedPath>> {
    let classes = alpha_classes(max_total / 2)?;
    let singles = rooted_trees_upto(max_total);
    let mut out = Vec::new();
    fn size(c: &[Gadget]) -> usize {
        c[0].graph.n()
    }
    fn go(
        classes: &[Vec<Gadget>],
        singles: &[Vec<Gadget>],
        left: usize,
        front: &mut Vec<Gadget>,
        back: &mut Vec<Gadget>,
        out: &mut Vec<DecoratedPath>,
    ) {
        let emit = |mid: Option<&Gadget>, out: &mut Vec<DecoratedPath>| {
            let mut g = front.clone();
            g.extend(mid.cloned());
            g.extend(back.iter().rev().cloned());
            if g.len() >= 2 {
                out.push(DecoratedPath::new(g).expect("nonempty"));
            }
        };
        emit(None, out);
        for k in 1..=left {
            for t in &singles[k] {
                emit(Some(t), out);
            }
        }
        for c in classes {
            let s = size(c);
            if 2 * s > left {
                continue;
            }
            for a in c {
                for b in c {
                    front.push(a.clone());
                    back.push(b.clone());
                    go(classes, singles, left - 2 * s, front, back, out);
                    front.pop();
                    back.pop();
                }
            }
        }
    }
    go(&classes, &singles, max_total, &mut Vec::new(), &mut Vec::new(), &mut out);
    Ok(out)
}

/// Seeded generator used by every random sweep.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform labelled tree on `n` vertices from a random Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    if n < 2 {
        return g;
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        g.add_unit_edge(leaf, s);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    g.add_unit_edge(rest[0], rest[1]);
    g
}

/// Random connected graph: a random tree plus each other edge with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> WeightedGraph {
    let mut g = random_tree(n, rng);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_unit_edge(u, v);
            }
        }
    }
    g
}

/// Two random connected graphs joined by a path of `length` edges between
/// `u` in the first and `v` in the second; returns `(graph, u, v)`.
pub fn random_bridge_graph<R: Rng>(length: usize, rng: &mut R) -> (WeightedGraph, usize, usize) {
    let a = random_connected(rng.gen_range(1..=6), 0.3, rng);
    let b = random_connected(rng.gen_range(1..=6), 0.3, rng);
    let u = rng.gen_range(0..a.n());
    let v = a.n() + rng.gen_range(0..b.n());
    let mut g = a.disjoint_union(&b);
    let inner_start = g.n();
    g = g.disjoint_union(&WeightedGraph::path(length - 1));
    g.add_unit_edge(u, inner_start);
    g.add_unit_edge(inner_start + length - 2, v);
    (g, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| rooted_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115, 286, 719]);
    }

    #[test]
    fn rooted_trees_are_distinct_trees() {
        let ts = rooted_trees(7);
        let codes: HashSet<String> = ts.iter().map(|t| rooted_code(&t.graph, 0)).collect();
        assert_eq!(codes.len(), ts.len());
        assert!(ts.iter().all(|t| t.graph.is_tree()));
    }

    #[test]
    fn free_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn graph_counts() {
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let mut r = rng(7);
        for _ in 0..20 {
            let g = random_connected(8, 0.4, &mut r);
            let mut perm: Vec<usize> = (0..8).collect();
            for i in (1..8).rev() {
                perm.swap(i, r.gen_range(0..=i));
            }
            let mut h = WeightedGraph::new(8);
            for (u, v, _) in g.edges() {
                h.add_unit_edge(perm[u], perm[v]);
            }
            assert_eq!(canonical_form(&g).0, canonical_form(&h).0);
        }
    }

    #[test]
    fn decorated_counts() {
        let counts: Vec<usize> = (1..=6).map(|m| decorated_paths(m).len()).collect();
        assert_eq!(counts, vec![1, 3, 8, 21, 56, 151]);
    }

    #[test]
    fn mirror_paths_are_mirror_symmetric() {
        let ps = mirror_paths(8).unwrap();
        assert!(ps.iter().any(|p| p.is_bare() && p.len() == 8));
        for p in &ps {
            assert!(p.len() >= 2 && p.total_vertices() <= 8);
            assert!(crate::cospectral::check_mirror(p).is_ok());
        }
    }

    #[test]
    fn random_generators() {
        let mut r = rng(1);
        for n in 1..15 {
            assert!(random_tree(n, &mut r).is_tree());
        }
        let (g, u, v) = random_bridge_graph(7, &mut r);
        assert!(g.is_connected());
        assert_ne!(u, v);
        let mut a = rng(42);
        let mut b = rng(42);
        assert_eq!(random_tree(12, &mut a), random_tree(12, &mut b));
    }
}

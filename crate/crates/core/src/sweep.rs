//! Exhaustive and seeded property suites over small instances.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::Rational;
use crate::algebra::{real_roots, Polynomial};
use crate::charpoly::{charpoly, schwenk_expansion, wronskian_defect, SubsetCharPolys};
use crate::cospectral::{
    alpha_criterion, check_mirror, decompose_along_path, decorated_strong_cospectral, is_cospectral,
    is_strongly_cospectral, support_split,
};
use crate::enumerate::{connected_graphs, decorated_paths, free_trees, mirror_paths, random_bridge_graph, random_tree, rng};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::folding::{support_split_decorated, Parity};
use crate::gap::{is_excluded_path, verify_gap_theorem, GapVerdict};
use crate::graph::WeightedGraph;
use crate::integral::{balanced_search, balanced_specs, BalancedHit, BalancedSpec};
use crate::locator::{bridge_certificate, check_bridge_certificate, count_below_tree, sturm_count, BridgeOutcome};
use crate::pst::{parity_separation_check, pst_certificate, FidelityKernel};
use crate::spectral::{alpha, alpha_chain_eval, AlphaChain};

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    pub examples: Vec<String>,
    pub tally: BTreeMap<String, usize>,
    pub exact: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

enum Outcome {
    Pass(Vec<&'static str>),
    Skip(&'static str),
    Fail(String),
}

fn pass() -> Outcome {
    Outcome::Pass(Vec::new())
}

fn fail_on(e: Error) -> Outcome {
    Outcome::Fail(e.to_string())
}

fn summarize(suite: &str, outcomes: Vec<Outcome>, start: Instant, exact: bool) -> SuiteReport {
    let mut r = SuiteReport {
        suite: suite.into(),
        instances: outcomes.len(),
        checked: 0,
        skipped: 0,
        violations: 0,
        examples: Vec::new(),
        tally: BTreeMap::new(),
        exact,
        elapsed: Duration::ZERO,
    };
    for (idx, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass(tags) => {
                r.checked += 1;
                for t in tags {
                    *r.tally.entry(t.into()).or_default() += 1;
                }
            }
            Outcome::Skip(why) => {
                r.skipped += 1;
                *r.tally.entry(format!("skipped: {why}")).or_default() += 1;
            }
            Outcome::Fail(msg) => {
                r.violations += 1;
                if r.examples.len() < MAX_EXAMPLES {
                    r.examples.push(format!("#{idx}: {msg}"));
                }
            }
        }
    }
    r.elapsed = start.elapsed();
    r
}

/// Chain evaluation against `α` of the assembled graph at the first path vertex.
pub fn continued_fraction(max_total: usize, mode: Mode) -> SuiteReport {
    let start = Instant::now();
    let paths = decorated_paths(max_total);
    let outcomes = exec::map(&paths, mode, |dp| {
        let run = || -> Result<bool> {
            let chain = AlphaChain::from_decorated(dp)?;
            let lhs = alpha_chain_eval(&chain)?;
            let a = dp.assemble();
            Ok(lhs == alpha(&a.graph, a.roots[0])?.base)
        };
        match run() {
            Ok(true) => pass(),
            Ok(false) => Outcome::Fail(format!("chain and direct α differ on {}", dp.to_json())),
            Err(e) => fail_on(e),
        }
    });
    summarize("continued-fraction", outcomes, start, true)
}

/// Path-sum identity on every vertex pair and cycle expansion at every vertex.
pub fn identities(max_n: usize, mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut graphs = Vec::new();
    for n in 1..=max_n {
        graphs.extend(connected_graphs(n)?);
    }
    let outcomes = exec::map(&graphs, mode, |g| {
        let run = || -> Result<Option<String>> {
            let mut polys = SubsetCharPolys::new(g)?;
            let phi = charpoly(g);
            for i in 0..g.n() {
                for j in i + 1..g.n() {
                    if !wronskian_defect(&mut polys, i, j)?.is_zero() {
                        return Ok(Some(format!("path-sum identity fails at ({}, {})", i + 1, j + 1)));
                    }
                }
                if schwenk_expansion(&mut polys, i)? != phi {
                    return Ok(Some(format!("cycle expansion fails at {}", i + 1)));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => pass(),
            Ok(Some(msg)) => Outcome::Fail(format!("{msg} in {}", g.to_edgelist().trim())),
            Err(e) => fail_on(e),
        }
    });
    Ok(summarize("identities", outcomes, start, true))
}

/// Gap certificate on every mirror-symmetric path meeting both hypotheses.
pub fn gap(max_total: usize, mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let paths = mirror_paths(max_total)?;
    let outcomes = exec::map(&paths, mode, |dp| match verify_gap_theorem(dp) {
        Ok(c) if c.holds && c.both_in_support => Outcome::Pass(vec![verdict_tag(c.comparison)]),
        Ok(_) => Outcome::Fail(format!("certificate does not hold on {}", dp.to_json())),
        Err(Error::Hypothesis(_)) => Outcome::Skip("hypothesis (2)"),
        Err(Error::ExcludedCase(_)) => Outcome::Skip("P2 or P3"),
        Err(e) => fail_on(e),
    });
    Ok(summarize("gap", outcomes, start, true))
}

fn verdict_tag(v: GapVerdict) -> &'static str {
    match v {
        GapVerdict::Below1 => "gap < 1",
        GapVerdict::Equal1 => "gap = 1",
        GapVerdict::Between => "1 < gap < √2",
        GapVerdict::EqualSqrt2 => "gap = √2",
        GapVerdict::AboveSqrt2 => "gap > √2",
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScanCheck {
    pub t_max: f64,
    pub step: f64,
    pub near_miss: f64,
}

impl Default for ScanCheck {
    fn default() -> Self {
        ScanCheck {
            t_max: 4.0 * std::f64::consts::PI,
            step: 1e-3,
            near_miss: 1e-3,
        }
    }
}

/// PST between path ends is infeasible except on bare `P_2` and `P_3`. With
/// `scan`, the grid fidelity of every other instance is also sampled and grid
/// maxima within `near_miss` of 1 are tallied (not counted as violations).
pub fn no_pst(max_total: usize, scan: Option<ScanCheck>, mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let paths = mirror_paths(max_total)?;
    let outcomes = exec::map(&paths, mode, |dp| {
        let a = dp.assemble();
        let (i, j) = (a.roots[0], *a.roots.last().expect("nonempty"));
        let cert = match pst_certificate(&a.graph, i, j) {
            Ok(c) => c,
            Err(e) => return fail_on(e),
        };
        let excluded = is_excluded_path(dp);
        if cert.feasible != excluded {
            return Outcome::Fail(format!("feasible = {} on {}", cert.feasible, dp.to_json()));
        }
        let mut tags = vec![if excluded { "feasible (P2/P3)" } else { "infeasible" }];
        if let (Some(s), false) = (scan, excluded) {
            match FidelityKernel::new(&a.graph, i, j) {
                Ok(k) => {
                    let steps = (s.t_max / s.step).ceil() as usize;
                    let best = (0..=steps).map(|m| k.fidelity(m as f64 * s.step)).fold(0.0, f64::max);
                    if best >= 1.0 - s.near_miss {
                        tags.push("numeric near miss");
                    }
                }
                Err(e) => return fail_on(e),
            }
        }
        Outcome::Pass(tags)
    });
    Ok(summarize("no-pst", outcomes, start, scan.is_none()))
}

/// Parity separation on every strongly cospectral integer-support pair among
/// all trees up to `max_n` vertices.
pub fn parity(max_n: usize, mode: Mode) -> SuiteReport {
    let start = Instant::now();
    let mut pairs = Vec::new();
    for n in 2..=max_n {
        for t in free_trees(n) {
            for i in 0..n {
                for j in i + 1..n {
                    pairs.push((t.clone(), i, j));
                }
            }
        }
    }
    let outcomes = exec::map(&pairs, mode, |(t, i, j)| match parity_separation_check(t, *i, *j) {
        Ok(r) if !r.applicable => Outcome::Skip("not applicable"),
        Ok(r) if r.separation_possible => Outcome::Fail(format!(
            "separation possible for ({}, {}) in {}",
            i + 1,
            j + 1,
            t.to_edgelist().trim()
        )),
        Ok(_) => pass(),
        Err(e) => fail_on(e),
    });
    summarize("parity", outcomes, start, true)
}

#[derive(Clone, Copy, Debug)]
pub struct LocatorSweep {
    pub trees: usize,
    pub max_n: usize,
    pub thresholds: usize,
    pub seed: u64,
}

impl Default for LocatorSweep {
    fn default() -> Self {
        LocatorSweep {
            trees: 500,
            max_n: 14,
            thresholds: 10,
            seed: 2024,
        }
    }
}

/// Thresholds `k/q` with `q ∈ {1, 2, 3}` and `|k/q| ≤ 4`, so integer
/// eigenvalues such as 0 and ±1 are hit often.
fn random_threshold<R: Rng>(rng: &mut R) -> Rational {
    let q: i64 = rng.gen_range(1..=3);
    let k: i64 = rng.gen_range(-4 * q..=4 * q);
    Rational::new(k.into(), q.into())
}

/// Locator counts against Sturm counts on random trees, and monotonicity in θ.
pub fn locator(cfg: LocatorSweep, mode: Mode) -> SuiteReport {
    let start = Instant::now();
    let mut r = rng(cfg.seed);
    let cases: Vec<(WeightedGraph, Vec<Rational>)> = (0..cfg.trees)
        .map(|_| {
            let n = r.gen_range(1..=cfg.max_n);
            let t = random_tree(n, &mut r);
            let mut th = std::collections::BTreeSet::new();
            while th.len() < cfg.thresholds {
                th.insert(random_threshold(&mut r));
            }
            (t, th.into_iter().collect())
        })
        .collect();
    let outcomes = exec::map(&cases, mode, |(t, th)| {
        let run = || -> Result<Option<String>> {
            let mut last = 0usize;
            for theta in th {
                let open = count_below_tree(t, theta, false)?;
                let closed = count_below_tree(t, theta, true)?;
                if open != sturm_count(t, theta, false)? || closed != sturm_count(t, theta, true)? {
                    return Ok(Some(format!("count mismatch at θ = {theta}")));
                }
                if open < last || closed < open {
                    return Ok(Some(format!("counts not monotone at θ = {theta}")));
                }
                last = closed;
            }
            Ok(None)
        };
        match run() {
            Ok(None) => pass(),
            Ok(Some(msg)) => Outcome::Fail(format!("{msg} in {}", t.to_edgelist().trim())),
            Err(e) => fail_on(e),
        }
    });
    summarize("locator", outcomes, start, true)
}

/// Bridge certificates on random graphs with a subdivided bridge of 7 to 10
/// edges, each cross-checked against the isolated roots of `φ`.
pub fn bridge(count: usize, seed: u64, mode: Mode) -> SuiteReport {
    let start = Instant::now();
    let mut r = rng(seed);
    let cases: Vec<_> = (0..count)
        .map(|_| {
            let len = r.gen_range(7..=10);
            random_bridge_graph(len, &mut r)
        })
        .collect();
    let outcomes = exec::map(&cases, mode, |(g, u, v)| {
        let run = || -> Result<Option<String>> {
            let c = match bridge_certificate(g, *u, *v)? {
                BridgeOutcome::Certified(c) => c,
                BridgeOutcome::NotApplicable { reason } => return Ok(Some(format!("not applicable: {reason}"))),
            };
            if !check_bridge_certificate(g, &c) {
                return Ok(Some("certificate does not re-validate".into()));
            }
            if c.distinct_eigenvalues_in_open_interval.len() < 4 || c.non_integer.integer_value().is_some() {
                return Ok(Some("certificate is too weak".into()));
            }
            let spectrum = real_roots(&charpoly(g))?;
            let two = Rational::from_integer(2.into());
            let inside = spectrum
                .iter()
                .filter(|x| x.cmp_rational(&-two.clone()).is_gt() && x.cmp_rational(&two).is_lt())
                .count();
            let all_found = c
                .distinct_eigenvalues_in_open_interval
                .iter()
                .chain(std::iter::once(&c.non_integer))
                .all(|x| spectrum.iter().any(|y| y.exact_cmp(x).is_eq()));
            if !all_found || inside < c.distinct_eigenvalues_in_open_interval.len() {
                return Ok(Some("certificate disagrees with the full spectrum".into()));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => pass(),
            Ok(Some(msg)) => Outcome::Fail(format!("{msg} on {}", g.to_edgelist().trim())),
            Err(e) => fail_on(e),
        }
    });
    summarize("bridge", outcomes, start, true)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BalancedSummary {
    pub specs_searched: usize,
    pub odd_deep_hits: Vec<BalancedHit>,
    pub odd_shallow_hits: Vec<BalancedHit>,
    pub even_shallow_hits: Vec<BalancedHit>,
    pub report: SuiteReport,
}

fn has_hit(hits: &[BalancedHit], parity: Parity, degrees: &[usize], spectrum: &[i64]) -> bool {
    hits.iter().any(|h| {
        h.spec.parity == parity && h.spec.degrees == degrees && h.report.integral && h.report.spectrum == spectrum
    })
}

/// Odd depths 2–3 give no integral balanced tree; depth 1 gives `S(2,2)` and `K_{1,4}`.
pub fn balanced(max_degree: usize, shallow_max_degree: usize, mode: Mode) -> Result<BalancedSummary> {
    let start = Instant::now();
    let deep = balanced_search(Parity::Odd, 2..=3, max_degree, mode)?;
    let odd1: Vec<_> = balanced_search(Parity::Odd, 1..=1, shallow_max_degree, mode)?
        .into_iter()
        .filter(|h| h.report.integral)
        .collect();
    let even1: Vec<_> = balanced_search(Parity::Even, 1..=1, shallow_max_degree, mode)?
        .into_iter()
        .filter(|h| h.report.integral)
        .collect();
    let mut outcomes: Vec<Outcome> = deep
        .iter()
        .map(|h| {
            if h.report.integral {
                Outcome::Fail(format!("integral balanced tree {:?}", h.spec.degrees))
            } else {
                Outcome::Pass(vec!["odd depth 2-3, not integral"])
            }
        })
        .collect();
    let checks = [
        (has_hit(&odd1, Parity::Odd, &[3], &[2, 1, 0, 0, -1, -2]), "S(2,2)"),
        (has_hit(&even1, Parity::Even, &[4], &[2, 0, 0, 0, -2]), "K1,4"),
    ];
    for (ok, name) in checks {
        outcomes.push(if ok {
            Outcome::Pass(vec!["shallow hit found"])
        } else {
            Outcome::Fail(format!("{name} not found among shallow integral hits"))
        });
    }
    Ok(BalancedSummary {
        specs_searched: deep.len(),
        odd_deep_hits: deep.into_iter().filter(|h| h.report.integral).collect(),
        odd_shallow_hits: odd1,
        even_shallow_hits: even1,
        report: summarize("balanced", outcomes, start, true),
    })
}

/// Balanced specs small enough for a dense charpoly cross-check.
pub fn balanced_oracle_specs(max_vertices: usize) -> Vec<BalancedSpec> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        out.extend(
            balanced_specs(parity, 1..=3, 5)
                .into_iter()
                .filter(|s| s.vertex_count() <= max_vertices),
        );
    }
    out
}

/// The decorated test, the general squarefree-pole test and the α criterion agree.
pub fn strong_equivalence(max_total: usize, mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let paths = mirror_paths(max_total)?;
    let outcomes = exec::map(&paths, mode, |dp| {
        let run = || -> Result<Outcome> {
            let a = dp.assemble();
            let (i, j) = (a.roots[0], *a.roots.last().expect("nonempty"));
            let fast = decorated_strong_cospectral(dp)?.strongly_cospectral;
            let general = is_strongly_cospectral(&a.graph, i, j)?.strongly_cospectral;
            let crit = alpha_criterion(&a.graph, i, j)?;
            if fast != general || crit != general {
                return Ok(Outcome::Fail(format!(
                    "decorated {fast}, general {general}, α criterion {crit} on {}",
                    dp.to_json()
                )));
            }
            Ok(Outcome::Pass(vec![if general { "strongly cospectral" } else { "not strongly cospectral" }]))
        };
        run().unwrap_or_else(fail_on)
    });
    Ok(summarize("strong-equivalence", outcomes, start, true))
}

/// Folded chains reproduce `Φ⁺`/`Φ⁻` from path enumeration.
pub fn fold_split(max_total: usize, mode: Mode) -> Result<SuiteReport> {
    let start = Instant::now();
    let paths = mirror_paths(max_total)?;
    let outcomes = exec::map(&paths, mode, |dp| {
        let run = || -> Result<Outcome> {
            if !decorated_strong_cospectral(dp)?.strongly_cospectral {
                return Ok(Outcome::Skip("not strongly cospectral"));
            }
            let a = dp.assemble();
            let (i, j) = (a.roots[0], *a.roots.last().expect("nonempty"));
            let folded = support_split_decorated(dp)?;
            let direct = support_split(&a.graph, i, j)?;
            let same = |x: &Polynomial, y: &Polynomial| x.to_primitive() == y.to_primitive();
            if same(&folded.plus.defining_polynomial, &direct.plus.defining_polynomial)
                && same(&folded.minus.defining_polynomial, &direct.minus.defining_polynomial)
            {
                Ok(pass())
            } else {
                Ok(Outcome::Fail(format!("folded split differs on {}", dp.to_json())))
            }
        };
        run().unwrap_or_else(fail_on)
    });
    Ok(summarize("fold-split", outcomes, start, true))
}

/// A tree with cospectral `u, v` whose decomposition along the `u–v` path is
/// not mirror-symmetric.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CospectralNonMirror {
    pub edges: Vec<(usize, usize)>,
    /// 1-based.
    pub u: usize,
    pub v: usize,
    /// 1-based path position of the first mismatch.
    pub position: usize,
}

/// Cospectral vertex pairs in trees up to `max_n` vertices that fail the mirror
/// condition along the connecting path.
pub fn cospectral_non_mirror(max_n: usize, mode: Mode) -> Result<Vec<CospectralNonMirror>> {
    let trees: Vec<WeightedGraph> = (2..=max_n).flat_map(free_trees).collect();
    let found = exec::map(&trees, mode, |t| -> Result<Vec<CospectralNonMirror>> {
        let mut out = Vec::new();
        for u in 0..t.n() {
            for v in u + 1..t.n() {
                if !is_cospectral(t, u, v)? {
                    continue;
                }
                if let Err(Error::MirrorViolated(k)) = check_mirror(&decompose_along_path(t, u, v)?) {
                    out.push(CospectralNonMirror {
                        edges: t.edges().into_iter().map(|(a, b, _)| (a + 1, b + 1)).collect(),
                        u: u + 1,
                        v: v + 1,
                        position: k,
                    });
                }
            }
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for f in found {
        all.extend(f?);
    }
    Ok(all)
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_total: usize,
    pub max_graph: usize,
    pub max_tree: usize,
    pub locator: LocatorSweep,
    pub bridges: usize,
    pub bridge_seed: u64,
    pub balanced_degree: usize,
    pub scan: Option<ScanCheck>,
    pub mode: Mode,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_total: 12,
            max_graph: 8,
            max_tree: 10,
            locator: LocatorSweep::default(),
            bridges: 100,
            bridge_seed: 7,
            balanced_degree: 6,
            scan: None,
            mode: Mode::Parallel,
        }
    }
}

/// Every suite, in a fixed order.
pub fn run_all(cfg: &SweepConfig) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        continued_fraction(cfg.max_total, cfg.mode),
        identities(cfg.max_graph, cfg.mode)?,
        gap(cfg.max_total, cfg.mode)?,
        no_pst(cfg.max_total, cfg.scan, cfg.mode)?,
        parity(cfg.max_tree, cfg.mode),
        locator(cfg.locator, cfg.mode),
        bridge(cfg.bridges, cfg.bridge_seed, cfg.mode),
        balanced(cfg.balanced_degree, 10, cfg.mode)?.report,
        strong_equivalence(cfg.max_total, cfg.mode)?,
        fold_split(cfg.max_total, cfg.mode)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{Signed, Zero};

    #[test]
    fn small_suites_pass() {
        let reports = [
            continued_fraction(6, Mode::Sequential),
            identities(5, Mode::Sequential).unwrap(),
            gap(7, Mode::Sequential).unwrap(),
            no_pst(6, None, Mode::Sequential).unwrap(),
            parity(7, Mode::Sequential),
            strong_equivalence(7, Mode::Sequential).unwrap(),
            fold_split(7, Mode::Sequential).unwrap(),
        ];
        for r in &reports {
            assert!(r.passed(), "{}: {:?}", r.suite, r.examples);
            assert!(r.checked > 0, "{}", r.suite);
        }
    }

    #[test]
    fn seeded_suites_pass() {
        let cfg = LocatorSweep {
            trees: 30,
            max_n: 10,
            thresholds: 6,
            seed: 1,
        };
        let l = locator(cfg, Mode::Sequential);
        assert!(l.passed(), "{:?}", l.examples);
        assert_eq!(l.checked, 30);
        let b = bridge(5, 3, Mode::Sequential);
        assert!(b.passed(), "{:?}", b.examples);
    }

    #[test]
    fn modes_give_identical_reports() {
        let a = serde_json::to_string(&gap(7, Mode::Parallel).unwrap()).unwrap();
        let b = serde_json::to_string(&gap(7, Mode::Sequential).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn thresholds_stay_in_range() {
        let mut r = rng(5);
        for _ in 0..200 {
            let t = random_threshold(&mut r);
            assert!(t.abs() <= Rational::from_integer(4.into()));
            assert!(!t.denom().is_zero());
        }
    }
}

//! Perfect state transfer: exact certificates from the quadratic form of the
//! support, the parity obstruction at time π, and a numeric fidelity scan.

use std::cmp::Ordering;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{self, frac, Rational};
use crate::algebra::roots::rational_roots;
use crate::algebra::{AlgebraicNumber, Polynomial};
use crate::cospectral::{is_strongly_cospectral, support_split, Witness};
use crate::error::{Error, Result};
use crate::exec::{self, Mode};
use crate::graph::WeightedGraph;
use crate::spectral::SupportSet;

/// `θ_r = (a + b_r√Δ)/2` for every support root, largest root first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub a: i64,
    pub delta: i64,
    pub b: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFailure {
    pub reason: String,
}

fn small(v: &BigInt) -> std::result::Result<i64, FormFailure> {
    v.to_i64().ok_or_else(|| FormFailure {
        reason: format!("{v} does not fit in 64 bits"),
    })
}

fn fail<T>(reason: String) -> std::result::Result<T, FormFailure> {
    Err(FormFailure { reason })
}

/// Roots of `s`, largest first.
pub fn descending(s: &SupportSet) -> Vec<AlgebraicNumber> {
    s.roots.iter().rev().cloned().collect()
}

pub fn quadratic_form_recognize(s: &SupportSet) -> std::result::Result<QuadraticForm, FormFailure> {
    let p = s.defining_polynomial.monic();
    let deg = p.degree();
    if deg < 1 {
        return fail("empty support".into());
    }
    if !p.is_integral() {
        return fail(format!(
            "{} is not monic over ℤ, so the support is not made of algebraic integers",
            s.defining_polynomial
        ));
    }
    let roots = descending(s);
    if s.all_rational() {
        let b = roots
            .iter()
            .map(|r| small(&(r.integer_value().expect("rational root of a monic integer polynomial") * 2)))
            .collect::<std::result::Result<_, _>>()?;
        return Ok(QuadraticForm { a: 0, delta: 1, b });
    }
    let deg = deg as usize;
    let a = -p.coeff(deg - 1) * rational::rat(2) / Rational::from_integer(BigInt::from(deg));
    if !rational::is_integer(&a) {
        return fail(format!(
            "twice the mean of the support is {}, not an integer",
            rational::fmt_rational(&a)
        ));
    }
    let centre = &a / rational::rat(2);
    // Roots of q are 2θ − a.
    let q = p.shift(&centre).scale_variable(&frac(1, 2));
    let odd = deg % 2;
    if q.coeffs().iter().skip(1 - odd).step_by(2).any(|c| !c.is_zero()) {
        return fail(format!(
            "the support is not symmetric about {}",
            rational::fmt_rational(&centre)
        ));
    }
    let z = Polynomial::new(q.coeffs().iter().skip(odd).step_by(2).cloned().collect());
    let mut zr = rational_roots(&z);
    if zr.len() as isize != z.degree() {
        return fail(format!(
            "(2θ − {})² is irrational for some root: {} has irrational roots",
            rational::fmt_rational(&a),
            z.to_string_in("z")
        ));
    }
    if odd == 1 {
        zr.push(Rational::zero());
    }
    let mut delta: Option<BigInt> = None;
    let mut mags: Vec<(Rational, BigInt)> = Vec::with_capacity(zr.len());
    for zv in &zr {
        if !rational::is_integer(zv) || zv.is_negative() {
            return fail(format!(
                "(2θ − a)² = {} is not a non-negative integer",
                rational::fmt_rational(zv)
            ));
        }
        let n = zv.to_integer();
        if n.is_zero() {
            mags.push((zv.clone(), BigInt::zero()));
            continue;
        }
        let (free, m) = rational::squarefree_split(&n);
        match &delta {
            Some(d) if *d != free => {
                return fail(format!("two support roots lie in ℚ(√{d}) and ℚ(√{free})"));
            }
            _ => delta = Some(free),
        }
        mags.push((zv.clone(), m));
    }
    let delta = delta.unwrap_or_else(|| BigInt::from(1));
    let mut b = Vec::with_capacity(roots.len());
    for r in &roots {
        let mut found = None;
        for (zv, m) in &mags {
            // (x − a/2)² − z/4
            let shifted = Polynomial::new(vec![-centre.clone(), Rational::from_integer(1.into())]);
            let cand = &(&shifted * &shifted) - &Polynomial::constant(zv / rational::rat(4));
            if r.is_root_of(&cand) {
                found = Some(match r.cmp_rational(&centre) {
                    Ordering::Less => -m.clone(),
                    _ => m.clone(),
                });
                break;
            }
        }
        let Some(bv) = found else {
            return fail(format!("could not reconstruct the root near {}", r.approx()));
        };
        if (&bv - a.to_integer()).is_odd() {
            return fail(format!("b = {bv} and a = {} differ in parity", a.to_integer()));
        }
        b.push(small(&bv)?);
    }
    Ok(QuadraticForm {
        a: small(&a.to_integer())?,
        delta: small(&delta)?,
        b,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PstCondition {
    /// Strong cospectrality.
    A,
    /// Quadratic form of the support.
    B,
    /// Parity of the `k_r`.
    C,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PstFailure {
    pub condition: PstCondition,
    pub witness: String,
}

/// `π/(g√Δ)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClaimedTime {
    pub g: i64,
    pub delta: i64,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PstCertificate {
    pub feasible: bool,
    /// Support roots, largest first; `b`, `sigma` and `k` follow this order.
    pub support: Vec<AlgebraicNumber>,
    pub a: Option<i64>,
    pub delta: Option<i64>,
    pub b: Vec<i64>,
    pub sigma: Vec<i8>,
    pub g: Option<i64>,
    pub k: Vec<i64>,
    pub claimed_time: Option<ClaimedTime>,
    /// `2π/(g√Δ)`, the first time the phases `e^{itθ_r}σ_r` agree.
    pub minimal_time: Option<f64>,
    pub failure_reason: Option<PstFailure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_min_time: Option<f64>,
}

impl PstCertificate {
    fn infeasible(condition: PstCondition, witness: String) -> Self {
        PstCertificate {
            feasible: false,
            support: Vec::new(),
            a: None,
            delta: None,
            b: Vec::new(),
            sigma: Vec::new(),
            g: None,
            k: Vec::new(),
            claimed_time: None,
            minimal_time: None,
            failure_reason: Some(PstFailure { condition, witness }),
            numeric_min_time: None,
        }
    }
}

fn check_vertex(g: &WeightedGraph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(Error::InvalidVertex(v + 1));
    }
    Ok(())
}

pub fn pst_certificate(g: &WeightedGraph, i: usize, j: usize) -> Result<PstCertificate> {
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    if i == j {
        return Err(Error::Hypothesis("state transfer needs two distinct vertices".into()));
    }
    let report = is_strongly_cospectral(g, i, j)?;
    if !report.strongly_cospectral {
        let witness = match report.witness {
            Some(Witness::DeletedDiffer { phi_i, phi_j }) => {
                format!("φ(G∖{}) = {phi_i} differs from φ(G∖{}) = {phi_j}", i + 1, j + 1)
            }
            Some(Witness::RepeatedPole { factor, root }) => {
                format!("repeated pole near {} (factor {factor})", root.approx())
            }
            _ => "not strongly cospectral".into(),
        };
        return Ok(PstCertificate::infeasible(PstCondition::A, witness));
    }
    let split = support_split(g, i, j)?;
    let union = SupportSet::from_polynomial(&split.union_polynomial())?;
    let support = descending(&union);
    let sigma: Vec<i8> = support
        .iter()
        .map(|r| split.sign_of(r).expect("root of the union lies in Φ⁺ or Φ⁻"))
        .collect();
    let mut cert = PstCertificate::infeasible(PstCondition::B, String::new());
    cert.support = support.clone();
    cert.sigma = sigma.clone();
    let form = match quadratic_form_recognize(&union) {
        Ok(f) => f,
        Err(e) => {
            cert.failure_reason = Some(PstFailure {
                condition: PstCondition::B,
                witness: e.reason,
            });
            return Ok(cert);
        }
    };
    cert.a = Some(form.a);
    cert.delta = Some(form.delta);
    cert.b = form.b.clone();
    let b0 = form.b[0];
    let gcd_all = form.b[1..].iter().fold(0i64, |acc, &br| acc.gcd(&(b0 - br)));
    if gcd_all == 0 {
        cert.failure_reason = Some(PstFailure {
            condition: PstCondition::C,
            witness: "the support has a single eigenvalue".into(),
        });
        return Ok(cert);
    }
    let parity_ok = |g: i64| -> std::result::Result<Vec<i64>, String> {
        let k: Vec<i64> = form.b.iter().map(|&br| (b0 - br) / g).collect();
        for (r, &kr) in k.iter().enumerate() {
            let flips = sigma[r] != sigma[0];
            if (kr.rem_euclid(2) == 1) != flips {
                return Err(format!(
                    "k = {kr} at θ ≈ {} is {} but σ = {} relative to the largest root",
                    support[r].approx(),
                    if kr.rem_euclid(2) == 1 { "odd" } else { "even" },
                    sigma[r] * sigma[0]
                ));
            }
        }
        Ok(k)
    };
    let mut first_witness = None;
    for d in 1..=gcd_all {
        if gcd_all % d != 0 {
            continue;
        }
        let g = gcd_all / d;
        match parity_ok(g) {
            Ok(k) => {
                let root = (form.delta as f64).sqrt();
                cert.feasible = true;
                cert.g = Some(g);
                cert.k = k;
                cert.claimed_time = Some(ClaimedTime {
                    g,
                    delta: form.delta,
                    value: PI / (g as f64 * root),
                });
                cert.minimal_time = Some(2.0 * PI / (g as f64 * root));
                cert.failure_reason = None;
                return Ok(cert);
            }
            Err(w) => {
                first_witness.get_or_insert(w);
            }
        }
    }
    cert.failure_reason = Some(PstFailure {
        condition: PstCondition::C,
        witness: format!("no divisor of {gcd_all} works; for g = {gcd_all}: {}", first_witness.unwrap_or_default()),
    });
    Ok(cert)
}

/// Exact re-check of a feasible certificate against its own fields.
pub fn check_pst_certificate(c: &PstCertificate) -> bool {
    if !c.feasible {
        return c.failure_reason.is_some();
    }
    let (Some(a), Some(delta), Some(g)) = (c.a, c.delta, c.g) else {
        return false;
    };
    let n = c.support.len();
    if c.b.len() != n || c.sigma.len() != n || c.k.len() != n || n == 0 || g <= 0 {
        return false;
    }
    let centre = frac(a, 2);
    for (r, root) in c.support.iter().enumerate() {
        let br = c.b[r];
        if (br - a).rem_euclid(2) != 0 {
            return false;
        }
        let z = Rational::from_integer(BigInt::from(br) * br * delta) / rational::rat(4);
        let lin = Polynomial::new(vec![-centre.clone(), rational::rat(1)]);
        let q = &(&lin * &lin) - &Polynomial::constant(z);
        let side = root.cmp_rational(&centre);
        if !root.is_root_of(&q) || side != br.cmp(&0) {
            return false;
        }
        if (c.b[0] - br) != c.k[r] * g {
            return false;
        }
        if (c.k[r].rem_euclid(2) == 1) != (c.sigma[r] != c.sigma[0]) {
            return false;
        }
    }
    true
}

/// Eigen-decomposition data for `⟨e_j, exp(itA) e_i⟩ = Σ_k w_k e^{itλ_k}`.
#[derive(Clone, Debug)]
pub struct FidelityKernel {
    pub eigenvalues: Vec<f64>,
    pub weights: Vec<f64>,
}

impl FidelityKernel {
    pub fn new(g: &WeightedGraph, i: usize, j: usize) -> Result<Self> {
        check_vertex(g, i)?;
        check_vertex(g, j)?;
        if g.n() > 64 {
            return Err(Error::TooLarge(format!("fidelity needs ≤ 64 vertices, got {}", g.n())));
        }
        let n = g.n();
        let adj = g.adjacency_f64();
        let m = DMatrix::from_fn(n, n, |r, c| adj[r][c]);
        let eig = SymmetricEigen::new(m);
        let weights = (0..n)
            .map(|k| eig.eigenvectors[(i, k)] * eig.eigenvectors[(j, k)])
            .collect();
        Ok(FidelityKernel {
            eigenvalues: eig.eigenvalues.iter().copied().collect(),
            weights,
        })
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (l, w) in self.eigenvalues.iter().zip(&self.weights) {
            re += w * (l * t).cos();
            im += w * (l * t).sin();
        }
        re * re + im * im
    }
}

/// `|⟨e_j, exp(itA) e_i⟩|²` on a grid.
pub fn transfer_fidelity(g: &WeightedGraph, i: usize, j: usize, t_grid: &[f64]) -> Result<Vec<f64>> {
    let k = FidelityKernel::new(g, i, j)?;
    Ok(exec::map(t_grid, Mode::Parallel, |&t| k.fidelity(t)))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ScanOptions {
    pub t_max: f64,
    pub step: f64,
    /// A refined peak counts as transfer when its fidelity exceeds `1 − tolerance`.
    pub tolerance: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            t_max: 4.0 * PI,
            step: 1e-3,
            tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanResult {
    pub min_time: Option<f64>,
    pub fidelity_at_min: Option<f64>,
    pub max_grid_fidelity: f64,
    pub argmax: f64,
}

fn golden_max(k: &FidelityKernel, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (k.fidelity(x1), k.fidelity(x2));
    for _ in 0..100 {
        if hi - lo < 1e-13 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = k.fidelity(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = k.fidelity(x1);
        }
    }
    let t = (lo + hi) / 2.0;
    (t, k.fidelity(t))
}

/// First refined fidelity peak in `(0, t_max]` reaching `1 − tolerance`.
pub fn numeric_min_time(g: &WeightedGraph, i: usize, j: usize, opts: &ScanOptions) -> Result<ScanResult> {
    let k = FidelityKernel::new(g, i, j)?;
    let steps = (opts.t_max / opts.step).ceil() as usize;
    let grid: Vec<f64> = (0..=steps).map(|s| s as f64 * opts.step).collect();
    let f = exec::map(&grid, Mode::Parallel, |&t| k.fidelity(t));
    let (argmax, max_grid_fidelity) = f
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    let mut out = ScanResult {
        min_time: None,
        fidelity_at_min: None,
        max_grid_fidelity,
        argmax: grid[argmax],
    };
    for s in 1..grid.len().saturating_sub(1) {
        if f[s] >= f[s - 1] && f[s] >= f[s + 1] && f[s] > 0.5 {
            let (t, v) = golden_max(&k, grid[s - 1], grid[s + 1]);
            if v > 1.0 - opts.tolerance {
                out.min_time = Some(t);
                out.fidelity_at_min = Some(v);
                break;
            }
        }
    }
    Ok(out)
}

pub fn pst_certificate_with_scan(
    g: &WeightedGraph,
    i: usize,
    j: usize,
    opts: &ScanOptions,
) -> Result<(PstCertificate, ScanResult)> {
    let mut cert = pst_certificate(g, i, j)?;
    let scan = numeric_min_time(g, i, j, opts)?;
    cert.numeric_min_time = scan.min_time;
    Ok((cert, scan))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParityReport {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub phi_plus_integers: Vec<i64>,
    pub phi_minus_integers: Vec<i64>,
    pub separation_possible: bool,
    /// Same-parity `(x, y)` with `x ∈ Φ⁺`, `y ∈ Φ⁻`.
    pub witness: Option<(i64, i64)>,
}

impl ParityReport {
    fn not_applicable(reason: &str) -> Self {
        ParityReport {
            applicable: false,
            reason: Some(reason.into()),
            phi_plus_integers: Vec::new(),
            phi_minus_integers: Vec::new(),
            separation_possible: false,
            witness: None,
        }
    }
}

fn integers(s: &SupportSet) -> Option<Vec<i64>> {
    s.roots.iter().map(|r| r.integer_value().and_then(|v| v.to_i64())).collect()
}

/// Whether `Φ⁺ ⊆ 2ℤ, Φ⁻ ⊆ 2ℤ+1` or the reverse, which PST at time π would need.
pub fn parity_separation_check(g: &WeightedGraph, i: usize, j: usize) -> Result<ParityReport> {
    check_vertex(g, i)?;
    check_vertex(g, j)?;
    if i == j || !is_strongly_cospectral(g, i, j)?.strongly_cospectral {
        return Ok(ParityReport::not_applicable("not strongly cospectral"));
    }
    let split = support_split(g, i, j)?;
    let (Some(plus), Some(minus)) = (integers(&split.plus), integers(&split.minus)) else {
        return Ok(ParityReport::not_applicable("support not all integers"));
    };
    let all = |v: &[i64], parity: i64| v.iter().all(|x| x.rem_euclid(2) == parity);
    let separation_possible = (all(&plus, 0) && all(&minus, 1)) || (all(&plus, 1) && all(&minus, 0));
    let witness = plus.iter().find_map(|&x| {
        minus
            .iter()
            .find(|&&y| (x - y).rem_euclid(2) == 0)
            .map(|&y| (x, y))
    });
    Ok(ParityReport {
        applicable: true,
        reason: None,
        phi_plus_integers: plus,
        phi_minus_integers: minus,
        separation_possible,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn form(c: &[i64]) -> std::result::Result<QuadraticForm, FormFailure> {
        quadratic_form_recognize(&SupportSet::from_polynomial(&p(c)).unwrap())
    }

    fn double_star() -> WeightedGraph {
        WeightedGraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap()
    }

    #[test]
    fn form_examples() {
        assert_eq!(form(&[-2, 0, 1]).unwrap(), QuadraticForm { a: 0, delta: 2, b: vec![2, -2] });
        assert_eq!(form(&[-1, -1, 1]).unwrap(), QuadraticForm { a: 1, delta: 5, b: vec![1, -1] });
        assert_eq!(form(&[0, -2, 0, 1]).unwrap(), QuadraticForm { a: 0, delta: 2, b: vec![2, 0, -2] });
        assert_eq!(form(&[-1, 0, 1]).unwrap(), QuadraticForm { a: 0, delta: 1, b: vec![2, -2] });
        assert!(form(&[1, 0, -3, 0, 1]).is_err());
        assert!(form(&[-1, 0, 2]).is_err());
        // √2 and √3 together
        assert!(form(&[6, 0, -5, 0, 1]).is_err());
        // 3 ± √2 shares a = 6
        assert_eq!(form(&[7, -6, 1]).unwrap(), QuadraticForm { a: 6, delta: 2, b: vec![2, -2] });
    }

    #[test]
    fn p2_and_p3_are_feasible() {
        let c = pst_certificate(&WeightedGraph::path(2), 0, 1).unwrap();
        assert!(c.feasible);
        assert_eq!((c.delta, c.g), (Some(1), Some(4)));
        assert!((c.claimed_time.as_ref().unwrap().value - PI / 4.0).abs() < 1e-15);
        assert!((c.minimal_time.unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(check_pst_certificate(&c));

        let c = pst_certificate(&WeightedGraph::path(3), 0, 2).unwrap();
        assert!(c.feasible);
        assert_eq!((c.a, c.delta, c.g), (Some(0), Some(2), Some(2)));
        assert_eq!(c.b, vec![2, 0, -2]);
        assert_eq!(c.sigma, vec![1, -1, 1]);
        assert_eq!(c.k, vec![0, 1, 2]);
        assert!((c.minimal_time.unwrap() - PI / 2f64.sqrt()).abs() < 1e-15);
        assert!(check_pst_certificate(&c));
    }

    #[test]
    fn p4_fails_condition_b() {
        let c = pst_certificate(&WeightedGraph::path(4), 0, 3).unwrap();
        assert!(!c.feasible);
        assert_eq!(c.failure_reason.unwrap().condition, PstCondition::B);
        let c = pst_certificate(&WeightedGraph::path(4), 0, 2).unwrap();
        assert_eq!(c.failure_reason.unwrap().condition, PstCondition::A);
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let mut c = pst_certificate(&WeightedGraph::path(3), 0, 2).unwrap();
        c.sigma[1] = 1;
        assert!(!check_pst_certificate(&c));
    }

    #[test]
    fn fidelity_closed_forms() {
        let f = transfer_fidelity(&WeightedGraph::path(2), 0, 1, &[PI / 2.0, PI / 4.0]).unwrap();
        assert!((f[0] - 1.0).abs() < 1e-9);
        assert!((f[1] - 0.5).abs() < 1e-9);
        let f = transfer_fidelity(&WeightedGraph::path(3), 0, 2, &[PI / 2f64.sqrt()]).unwrap();
        assert!((f[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn scans_find_the_minimal_times() {
        let opts = ScanOptions::default();
        let (c, s) = pst_certificate_with_scan(&WeightedGraph::path(2), 0, 1, &opts).unwrap();
        assert!((c.numeric_min_time.unwrap() - PI / 2.0).abs() < 1e-6);
        assert!(s.fidelity_at_min.unwrap() > 1.0 - 1e-9);
        let s = numeric_min_time(&WeightedGraph::path(3), 0, 2, &opts).unwrap();
        assert!((s.min_time.unwrap() - PI / 2f64.sqrt()).abs() < 1e-6);
        let s = numeric_min_time(&WeightedGraph::path(4), 0, 3, &opts).unwrap();
        assert!(s.min_time.is_none());
    }

    #[test]
    fn parity_examples() {
        let r = parity_separation_check(&WeightedGraph::path(2), 0, 1).unwrap();
        assert!(r.applicable && !r.separation_possible);
        assert_eq!((r.phi_plus_integers, r.phi_minus_integers), (vec![1], vec![-1]));
        assert_eq!(r.witness, Some((1, -1)));

        let r = parity_separation_check(&double_star(), 0, 1).unwrap();
        assert!(r.applicable && !r.separation_possible);
        assert!(r.witness.is_some());

        let r = parity_separation_check(&WeightedGraph::path(4), 0, 3).unwrap();
        assert!(!r.applicable);
        assert_eq!(r.reason.as_deref(), Some("support not all integers"));
    }
}

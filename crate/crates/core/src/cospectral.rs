//! Cospectral and strongly cospectral vertex pairs, on general graphs and on
//! decorated paths, and the signed support split `Φ⁺ / Φ⁻`.

use serde::{Deserialize, Serialize};

use crate::algebra::{real_roots, AlgebraicNumber, Polynomial, RationalFunction};
use crate::charpoly::{charpoly, deleted_charpoly, path_sum};
use crate::error::{Error, Result};
use crate::graph::{delete_vertices, DecoratedPath, Gadget, WeightedGraph};
use crate::spectral::{alpha, gadget_alphas, AlphaChain, SupportSet};

pub fn is_cospectral(g: &WeightedGraph, i: usize, j: usize) -> Result<bool> {
    Ok(deleted_charpoly(g, &[i])? == deleted_charpoly(g, &[j])?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `φ^{G∖i} ≠ φ^{G∖j}`.
    DeletedDiffer { phi_i: Polynomial, phi_j: Polynomial },
    /// A repeated pole of `φ^{G∖{i,j}}/φ^G`; `factor` is the repeated part.
    RepeatedPole {
        factor: Polynomial,
        root: AlgebraicNumber,
    },
    /// A support root that is a pole of the gadget α at a path position (1-based).
    GadgetPole {
        position: usize,
        root: AlgebraicNumber,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrongCospectralityReport {
    pub cospectral: bool,
    pub strongly_cospectral: bool,
    pub witness: Option<Witness>,
}

fn some_root(p: &Polynomial) -> Result<AlgebraicNumber> {
    real_roots(p)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invariant(format!("expected a real root of {p}")))
}

/// Cospectral, and every pole of `φ^{G∖{i,j}}/φ^G` simple.
pub fn is_strongly_cospectral(g: &WeightedGraph, i: usize, j: usize) -> Result<StrongCospectralityReport> {
    if i == j {
        return Err(Error::Hypothesis("strong cospectrality needs two distinct vertices".into()));
    }
    let phi_i = deleted_charpoly(g, &[i])?;
    let phi_j = deleted_charpoly(g, &[j])?;
    if phi_i != phi_j {
        return Ok(StrongCospectralityReport {
            cospectral: false,
            strongly_cospectral: false,
            witness: Some(Witness::DeletedDiffer { phi_i, phi_j }),
        });
    }
    let f = RationalFunction::reduce(&deleted_charpoly(g, &[i, j])?, &charpoly(g))?;
    let d = f.denominator();
    let repeated = Polynomial::gcd(d, &d.derivative());
    if !repeated.is_constant() {
        let root = some_root(&repeated)?;
        return Ok(StrongCospectralityReport {
            cospectral: true,
            strongly_cospectral: false,
            witness: Some(Witness::RepeatedPole {
                factor: repeated.to_primitive(),
                root,
            }),
        });
    }
    Ok(StrongCospectralityReport {
        cospectral: true,
        strongly_cospectral: true,
        witness: None,
    })
}

/// First 1-based position `k` with `α_k^{G_k} ≠ α_{n+1−k}^{G_{n+1−k}}`.
pub fn mirror_violation(alphas: &[RationalFunction]) -> Option<usize> {
    let n = alphas.len();
    (0..n / 2).find(|&k| alphas[k] != alphas[n - 1 - k]).map(|k| k + 1)
}

pub fn check_mirror(dp: &DecoratedPath) -> Result<Vec<RationalFunction>> {
    let alphas = gadget_alphas(dp)?;
    match mirror_violation(&alphas) {
        Some(k) => Err(Error::MirrorViolated(k)),
        None => Ok(alphas),
    }
}

/// Strong cospectrality of the path ends, decided by `gcd(N, q_k) = 1` for every
/// position, where `N` is the numerator of `α_1^G` and `q_k` the denominator of `α_k^{G_k}`.
pub fn decorated_strong_cospectral(dp: &DecoratedPath) -> Result<StrongCospectralityReport> {
    let alphas = check_mirror(dp)?;
    let whole = AlphaChain::unit(alphas.clone())?.eval()?;
    let n_poly = whole.numerator();
    for (k, a) in alphas.iter().enumerate() {
        let g = Polynomial::gcd(n_poly, a.denominator());
        if !g.is_constant() {
            return Ok(StrongCospectralityReport {
                cospectral: true,
                strongly_cospectral: false,
                witness: Some(Witness::GadgetPole {
                    position: k + 1,
                    root: some_root(&g)?,
                }),
            });
        }
    }
    Ok(StrongCospectralityReport {
        cospectral: true,
        strongly_cospectral: true,
        witness: None,
    })
}

/// `α_i^G = α_j^G`, and `α_i^G` has no zero in common with `α_i^{G∖j}` nor
/// `α_j^G` with `α_j^{G∖i}`.
pub fn alpha_criterion(g: &WeightedGraph, i: usize, j: usize) -> Result<bool> {
    if i == j {
        return Err(Error::Hypothesis("needs two distinct vertices".into()));
    }
    let ai = alpha(g, i)?.base;
    let aj = alpha(g, j)?.base;
    if ai != aj {
        return Ok(false);
    }
    let shifted = |v: usize, gone: usize| if v > gone { v - 1 } else { v };
    let ai_minus_j = alpha(&delete_vertices(g, &[j])?, shifted(i, j))?.base;
    let aj_minus_i = alpha(&delete_vertices(g, &[i])?, shifted(j, i))?.base;
    let coprime = |a: &Polynomial, b: &Polynomial| Polynomial::gcd(a, b).is_constant();
    Ok(coprime(ai.numerator(), ai_minus_j.numerator())
        && coprime(aj.numerator(), aj_minus_i.numerator()))
}

/// `Φ⁺` and `Φ⁻` of a strongly cospectral pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignedSupport {
    pub plus: SupportSet,
    pub minus: SupportSet,
}

impl SignedSupport {
    pub fn from_polynomials(plus: &Polynomial, minus: &Polynomial) -> Result<Self> {
        let s = SignedSupport {
            plus: SupportSet::from_polynomial(plus)?,
            minus: SupportSet::from_polynomial(minus)?,
        };
        if !Polynomial::gcd(&s.plus.defining_polynomial, &s.minus.defining_polynomial).is_constant() {
            return Err(Error::Invariant("Φ⁺ and Φ⁻ share a root".into()));
        }
        Ok(s)
    }

    /// `+1` for `Φ⁺`, `−1` for `Φ⁻`, `None` outside the support.
    pub fn sign_of(&self, theta: &AlgebraicNumber) -> Option<i8> {
        if self.plus.contains(theta) {
            Some(1)
        } else if self.minus.contains(theta) {
            Some(-1)
        } else {
            None
        }
    }

    /// Product of both defining polynomials (the full support, since they are coprime).
    pub fn union_polynomial(&self) -> Polynomial {
        &self.plus.defining_polynomial * &self.minus.defining_polynomial
    }
}

/// Poles of `(φ^{G∖i} ± Σ_P w(P)φ^{G∖P}) / φ^G`, by path enumeration.
pub fn support_split(g: &WeightedGraph, i: usize, j: usize) -> Result<SignedSupport> {
    let report = is_strongly_cospectral(g, i, j)?;
    if !report.strongly_cospectral {
        return Err(Error::Hypothesis(format!(
            "vertices {} and {} are not strongly cospectral",
            i + 1,
            j + 1
        )));
    }
    let phi = charpoly(g);
    let phi_i = deleted_charpoly(g, &[i])?;
    let ps = path_sum(g, i, j)?;
    let plus = RationalFunction::reduce(&(&phi_i + &ps), &phi)?;
    let minus = RationalFunction::reduce(&(&phi_i - &ps), &phi)?;
    SignedSupport::from_polynomials(plus.denominator(), minus.denominator())
}

/// Splits a tree along the unique `u–v` path: path vertex `k` carries the
/// component of `T` minus the path edges that contains it.
pub fn decompose_along_path(t: &WeightedGraph, u: usize, v: usize) -> Result<DecoratedPath> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let path = tree_path(t, u, v)?;
    let on_path: Vec<(usize, usize)> = path
        .windows(2)
        .map(|e| (e[0].min(e[1]), e[0].max(e[1])))
        .collect();
    let mut h = WeightedGraph::new(t.n());
    for w in 0..t.n() {
        h.set_loop(w, t.loop_weight(w).clone());
    }
    for (a, b, w) in t.edges() {
        if !on_path.contains(&(a, b)) {
            h.add_edge(a, b, w);
        }
    }
    let comps = h.components();
    let mut gadgets = Vec::with_capacity(path.len());
    for &p in &path {
        let comp = comps
            .iter()
            .find(|c| c.binary_search(&p).is_ok())
            .expect("every vertex lies in a component");
        let root = comp.binary_search(&p).expect("present");
        gadgets.push(Gadget::new(h.induced(comp), root)?);
    }
    DecoratedPath::new(gadgets)
}

/// Vertices of the unique path from `u` to `v` in a tree.
pub fn tree_path(t: &WeightedGraph, u: usize, v: usize) -> Result<Vec<usize>> {
    for x in [u, v] {
        if x >= t.n() {
            return Err(Error::InvalidVertex(x));
        }
    }
    let mut parent = vec![usize::MAX; t.n()];
    parent[u] = u;
    let mut stack = vec![u];
    while let Some(a) = stack.pop() {
        for b in t.neighbors(a) {
            if parent[b] == usize::MAX {
                parent[b] = a;
                stack.push(b);
            }
        }
    }
    if parent[v] == usize::MAX {
        return Err(Error::Hypothesis("vertices are not connected".into()));
    }
    let mut path = vec![v];
    let mut x = v;
    while x != u {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    Ok(path)
}

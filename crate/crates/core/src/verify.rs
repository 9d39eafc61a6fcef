//! Exact re-validation of serialized certificates against their inputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Polynomial;
use crate::charpoly::charpoly;
use crate::cospectral::support_split;
use crate::error::Result;
use crate::gap::{classify_gap, GapBound, GapCertificate};
use crate::graph::{DecoratedPath, WeightedGraph};
use crate::integral::{spectrum_polynomial, IntegralityReport};
use crate::locator::{check_bridge_certificate, BridgeOutcome};
use crate::pst::{check_pst_certificate, pst_certificate, PstCertificate};
use crate::spectral::AlphaChain;

/// Named exact checks and their outcomes.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: String,
    pub valid: bool,
    pub checks: BTreeMap<String, bool>,
}

impl VerifyReport {
    fn new(kind: &str) -> Self {
        VerifyReport {
            kind: kind.into(),
            valid: true,
            checks: BTreeMap::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) -> &mut Self {
        self.valid &= ok;
        self.checks.insert(name.into(), ok);
        self
    }
}

pub fn verify_gap(dp: &DecoratedPath, c: &GapCertificate) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("gap");
    let support = AlphaChain::from_decorated(dp)?.eval()?.numerator().to_primitive();
    let poly_ok = support == c.support_polynomial.to_primitive();
    r.check("support polynomial", poly_ok);
    r.check("λ in support", c.lambda.is_root_of(&support));
    r.check("μ in support", c.mu.is_root_of(&support));
    r.check("λ > μ", c.lambda.exact_cmp(&c.mu).is_gt());
    r.check("comparison", classify_gap(&c.lambda, &c.mu) == c.comparison);
    r.check("bound", c.bound == GapBound::for_path(dp.len()) && c.path_length == dp.len());
    r.check("holds", c.holds && c.bound.admits(c.comparison));
    Ok(r)
}

pub fn verify_pst(g: &WeightedGraph, i: usize, j: usize, c: &PstCertificate) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("pst");
    r.check("internal consistency", check_pst_certificate(c));
    let fresh = pst_certificate(g, i, j)?;
    r.check("feasibility", fresh.feasible == c.feasible);
    if c.feasible {
        let union = support_split(g, i, j)?.union_polynomial();
        let matches = c.support.len() == fresh.support.len()
            && c.support.iter().all(|x| x.is_root_of(&union))
            && c.support.windows(2).all(|w| w[0].exact_cmp(&w[1]).is_gt());
        r.check("support", matches);
        r.check("signs", c.sigma == fresh.sigma);
    } else {
        let same = match (&c.failure_reason, &fresh.failure_reason) {
            (Some(a), Some(b)) => a.condition == b.condition,
            _ => false,
        };
        r.check("failed condition", same);
    }
    Ok(r)
}

pub fn verify_bridge(g: &WeightedGraph, outcome: &BridgeOutcome) -> VerifyReport {
    let mut r = VerifyReport::new("bridge");
    match outcome {
        BridgeOutcome::Certified(c) => {
            r.check("certificate", check_bridge_certificate(g, c));
        }
        BridgeOutcome::NotApplicable { .. } => {
            r.check("certificate present", false);
        }
    }
    r
}

pub fn verify_integrality(g: &WeightedGraph, rep: &IntegralityReport) -> Result<VerifyReport> {
    verify_integrality_poly(&charpoly(g), rep)
}

/// Integrality report against an explicit characteristic polynomial.
pub fn verify_integrality_poly(phi: &Polynomial, rep: &IntegralityReport) -> Result<VerifyReport> {
    let mut r = VerifyReport::new("integrality");
    if rep.integral {
        r.check("spectrum reproduces φ", &spectrum_polynomial(&rep.spectrum) == phi);
        r.check("spectrum sorted", rep.spectrum.windows(2).all(|w| w[0] >= w[1]));
    } else {
        let w = rep.witness.as_ref();
        let is_eigenvalue = w.is_some_and(|w| w.is_root_of(phi));
        let non_integer = w.is_some_and(|w| w.integer_value().is_none());
        r.check("witness is an eigenvalue", is_eigenvalue);
        r.check("witness is not an integer", non_integer);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gap::verify_gap_theorem;
    use crate::integral::integrality_test;
    use crate::locator::bridge_certificate;

    #[test]
    fn genuine_certificates_validate() {
        let dp = DecoratedPath::bare(5);
        let c = verify_gap_theorem(&dp).unwrap();
        assert!(verify_gap(&dp, &c).unwrap().valid);

        let p3 = WeightedGraph::path(3);
        let c = pst_certificate(&p3, 0, 2).unwrap();
        assert!(verify_pst(&p3, 0, 2, &c).unwrap().valid);
        let p4 = WeightedGraph::path(4);
        let c = pst_certificate(&p4, 0, 3).unwrap();
        assert!(verify_pst(&p4, 0, 3, &c).unwrap().valid);

        let k14 = WeightedGraph::star(4);
        assert!(verify_integrality(&k14, &integrality_test(&k14).unwrap()).unwrap().valid);
        assert!(verify_integrality(&p4, &integrality_test(&p4).unwrap()).unwrap().valid);

        let g = WeightedGraph::path(10);
        let b = bridge_certificate(&g, 0, 9).unwrap();
        assert!(verify_bridge(&g, &b).valid);
    }

    #[test]
    fn tampered_certificates_fail() {
        let dp = DecoratedPath::bare(4);
        let mut c = verify_gap_theorem(&dp).unwrap();
        std::mem::swap(&mut c.lambda, &mut c.mu);
        assert!(!verify_gap(&dp, &c).unwrap().valid);
        let c5 = verify_gap_theorem(&DecoratedPath::bare(5)).unwrap();
        assert!(!verify_gap(&dp, &c5).unwrap().valid);

        let p3 = WeightedGraph::path(3);
        let mut c = pst_certificate(&p3, 0, 2).unwrap();
        c.k[1] += 1;
        assert!(!verify_pst(&p3, 0, 2, &c).unwrap().valid);

        let k14 = WeightedGraph::star(4);
        let mut rep = integrality_test(&k14).unwrap();
        rep.spectrum[0] = 3;
        assert!(!verify_integrality(&k14, &rep).unwrap().valid);
    }
}

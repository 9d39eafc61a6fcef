//! Command execution on parsed inputs, shared by the front end and `verify`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use decospec::algebra::{parse_rational, rational, Polynomial};
use decospec::charpoly::charpoly;
use decospec::cospectral::{decorated_strong_cospectral, is_cospectral, is_strongly_cospectral, support_split};
use decospec::exec::Mode;
use decospec::folding::{fold, support_split_decorated, Parity, Sign};
use decospec::gap::{verify_gap_theorem, GapCertificate};
use decospec::graph::{DecoratedPath, WeightedGraph};
use decospec::integral::{
    balanced_integrality, balanced_search, balanced_spectrum_factors, balanced_tree, integrality_test,
    BalancedSpec, IntegralityReport,
};
use decospec::locator::{bridge_certificate, count_below_tree, locator_eval, BridgeOutcome, LocatorInput};
use decospec::pst::{pst_certificate, pst_certificate_with_scan, PstCertificate, ScanOptions};
use decospec::spectral::{alpha, stieltjes_form, support};
use decospec::sweep::{self, SweepConfig};
use decospec::verify::{verify_bridge, verify_gap, verify_integrality, verify_integrality_poly, verify_pst, VerifyReport};
use decospec::{Error, Result};

/// Largest balanced tree whose dense characteristic polynomial `verify` recomputes.
const VERIFY_DENSE_LIMIT: usize = 400;

/// Everything a command reads, echoed into its report so `verify` can rerun it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decorated: Option<Value>,
    /// 1-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    /// 1-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub scan: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_total: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub result: Value,
    pub exact: bool,
}

/// Outcome of a command: the report plus whether a theorem-level check failed.
pub struct Executed {
    pub report: Report,
    pub violation: bool,
}

pub const SUITES: [&str; 10] = [
    "continued-fraction",
    "identities",
    "gap",
    "no-pst",
    "parity",
    "locator",
    "bridge",
    "balanced",
    "strong-equivalence",
    "fold-split",
];

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    Ok(serde_json::to_value(x)?)
}

impl Inputs {
    fn graph(&self) -> Result<WeightedGraph> {
        match (&self.graph, &self.decorated) {
            (Some(g), _) => WeightedGraph::from_json(g),
            (None, Some(d)) => Ok(DecoratedPath::from_json(d)?.assemble().graph),
            (None, None) => Err(hypothesis("this command needs a graph input (-i)")),
        }
    }

    fn decorated(&self) -> Result<DecoratedPath> {
        match &self.decorated {
            Some(d) => DecoratedPath::from_json(d),
            None => Err(hypothesis("this command needs a decorated path input ({\"path\": …})")),
        }
    }

    fn vertex(&self, x: Option<usize>, flag: &str, g: &WeightedGraph) -> Result<usize> {
        let x = x.ok_or_else(|| hypothesis(format!("missing -{flag} <vertex>")))?;
        if x == 0 || x > g.n() {
            return Err(Error::InvalidVertex(x));
        }
        Ok(x - 1)
    }

    fn pair(&self, g: &WeightedGraph) -> Result<(usize, usize)> {
        Ok((self.vertex(self.u, "u", g)?, self.vertex(self.v, "v", g)?))
    }

    fn theta(&self) -> Result<rational::Rational> {
        let t = self.theta.as_deref().ok_or_else(|| hypothesis("missing --theta <p/q>"))?;
        parse_rational(t)
    }

    fn spec(&self) -> Result<BalancedSpec> {
        let parity = self.parity.ok_or_else(|| hypothesis("missing --parity"))?;
        let degrees = self.degrees.clone().ok_or_else(|| hypothesis("missing --degrees"))?;
        BalancedSpec::new(parity, degrees)
    }
}

/// Fills default vertices for decorated inputs: the path ends, or the first root.
pub fn default_vertices(command: &str, inputs: &mut Inputs) -> Result<()> {
    let Some(d) = &inputs.decorated else {
        return Ok(());
    };
    let a = DecoratedPath::from_json(d)?.assemble();
    let first = a.roots[0] + 1;
    let last = a.roots[a.roots.len() - 1] + 1;
    match command {
        "alpha" | "support" | "locate" => {
            inputs.u.get_or_insert(first);
        }
        "cospectral" | "strong-cospectral" | "pst" | "bridge-certify" => {
            inputs.u.get_or_insert(first);
            inputs.v.get_or_insert(last);
        }
        _ => {}
    }
    Ok(())
}

fn polynomial_json(p: &Polynomial) -> Result<Value> {
    Ok(json!({
        "coefficients": to_value(p)?,
        "degree": p.degree(),
        "display": p.to_string(),
    }))
}

pub fn execute(command: &str, inputs: &Inputs, mode: Mode) -> Result<Executed> {
    let mut exact = true;
    let mut violation = false;
    let result = match command {
        "charpoly" => polynomial_json(&charpoly(&inputs.graph()?))?,
        "alpha" => {
            let g = inputs.graph()?;
            let a = alpha(&g, inputs.vertex(inputs.u, "u", &g)?)?;
            json!({
                "alpha": to_value(&a.base)?,
                "display": a.base.to_string(),
                "stieltjes": to_value(&stieltjes_form(&a.base)?)?,
            })
        }
        "support" => {
            let g = inputs.graph()?;
            to_value(&support(&g, inputs.vertex(inputs.u, "u", &g)?)?)?
        }
        "cospectral" => {
            let g = inputs.graph()?;
            let (u, v) = inputs.pair(&g)?;
            json!({ "cospectral": is_cospectral(&g, u, v)? })
        }
        "strong-cospectral" => {
            let g = inputs.graph()?;
            let (u, v) = inputs.pair(&g)?;
            let general = is_strongly_cospectral(&g, u, v)?;
            let mut out = json!({ "general": to_value(&general)? });
            if let Some(d) = &inputs.decorated {
                let dp = DecoratedPath::from_json(d)?;
                let a = dp.assemble();
                if (u, v) == (a.roots[0], a.roots[a.roots.len() - 1]) {
                    let fast = decorated_strong_cospectral(&dp)?;
                    if fast.strongly_cospectral != general.strongly_cospectral {
                        return Err(Error::Invariant(
                            "decorated and general strong cospectrality tests disagree".into(),
                        ));
                    }
                    out["decorated"] = to_value(&fast)?;
                }
            }
            if general.strongly_cospectral {
                out["split"] = to_value(&support_split(&g, u, v)?)?;
            }
            out
        }
        "fold" => {
            let dp = inputs.decorated()?;
            json!({
                "plus": to_value(&fold(&dp, Sign::Plus)?)?,
                "minus": to_value(&fold(&dp, Sign::Minus)?)?,
                "split": to_value(&support_split_decorated(&dp)?)?,
            })
        }
        "gap" => to_value(&verify_gap_theorem(&inputs.decorated()?)?)?,
        "pst" => {
            let g = inputs.graph()?;
            let (u, v) = inputs.pair(&g)?;
            if inputs.scan {
                exact = false;
                let (cert, scan) = pst_certificate_with_scan(&g, u, v, &ScanOptions::default())?;
                let mut value = to_value(&cert)?;
                value["scan"] = to_value(&scan)?;
                value
            } else {
                to_value(&pst_certificate(&g, u, v)?)?
            }
        }
        "locate" => {
            let g = inputs.graph()?;
            let root = inputs.vertex(inputs.u.or(Some(1)), "u", &g)?;
            let theta = inputs.theta()?;
            let trace = locator_eval(&LocatorInput::tree(g.clone(), root), &theta)?;
            json!({
                "trace": to_value(&trace)?,
                "below_open": count_below_tree(&g, &theta, false)?,
                "below_closed": count_below_tree(&g, &theta, true)?,
            })
        }
        "bridge-certify" => {
            let g = inputs.graph()?;
            let (u, v) = inputs.pair(&g)?;
            to_value(&bridge_certificate(&g, u, v)?)?
        }
        "integral" => to_value(&integrality_test(&inputs.graph()?)?)?,
        "balanced" => balanced(inputs, mode)?,
        "sweep" => {
            let (value, failed) = run_sweep(inputs, mode)?;
            violation = failed;
            exact = !inputs.scan;
            value
        }
        "verify" => return Err(hypothesis("verify takes a report file, not inputs")),
        other => return Err(hypothesis(format!("unknown command \"{other}\""))),
    };
    Ok(Executed {
        report: Report {
            command: command.into(),
            inputs: inputs.clone(),
            result,
            exact,
        },
        violation,
    })
}

fn balanced(inputs: &Inputs, mode: Mode) -> Result<Value> {
    if inputs.degrees.is_some() {
        let spec = inputs.spec()?;
        return Ok(json!({
            "spec": to_value(&spec)?,
            "vertices": spec.vertex_count(),
            "diameter": spec.diameter(),
            "report": to_value(&balanced_integrality(&spec)?)?,
        }));
    }
    let parity = inputs.parity.ok_or_else(|| hypothesis("missing --parity"))?;
    let depth = inputs.max_depth.ok_or_else(|| hypothesis("missing --degrees or --max-depth"))?;
    let max_degree = inputs.max_degree.ok_or_else(|| hypothesis("missing --max-degree"))?;
    let hits = balanced_search(parity, 1..=depth, max_degree, mode)?;
    let integral: Vec<_> = hits.iter().filter(|h| h.report.integral).collect();
    Ok(json!({
        "specs_searched": hits.len(),
        "integral": to_value(&integral)?,
    }))
}

fn run_sweep(inputs: &Inputs, mode: Mode) -> Result<(Value, bool)> {
    let cfg = SweepConfig {
        max_total: inputs.max_total.unwrap_or(12),
        scan: inputs.scan.then(Default::default),
        mode,
        ..SweepConfig::default()
    };
    let chosen: Vec<String> = match &inputs.suites {
        Some(s) if !s.is_empty() => s.clone(),
        _ => SUITES.iter().map(|s| s.to_string()).collect(),
    };
    let mut reports = Vec::new();
    for name in &chosen {
        let r = match name.as_str() {
            "continued-fraction" => sweep::continued_fraction(cfg.max_total, mode),
            "identities" => sweep::identities(cfg.max_graph, mode)?,
            "gap" => sweep::gap(cfg.max_total, mode)?,
            "no-pst" => sweep::no_pst(cfg.max_total, cfg.scan, mode)?,
            "parity" => sweep::parity(cfg.max_tree, mode),
            "locator" => sweep::locator(cfg.locator, mode),
            "bridge" => sweep::bridge(cfg.bridges, cfg.bridge_seed, mode),
            "balanced" => sweep::balanced(cfg.balanced_degree, 10, mode)?.report,
            "strong-equivalence" => sweep::strong_equivalence(cfg.max_total, mode)?,
            "fold-split" => sweep::fold_split(cfg.max_total, mode)?,
            other => return Err(hypothesis(format!("unknown suite \"{other}\""))),
        };
        eprintln!("{}: {} violations in {:.1}s", r.suite, r.violations, r.elapsed.as_secs_f64());
        reports.push(r);
    }
    let failed = reports.iter().any(|r| !r.passed());
    Ok((to_value(&reports)?, failed))
}

fn from_result<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    Ok(serde_json::from_value(v.clone())?)
}

/// Re-validates a report: dedicated exact checks for certificates, and a fresh
/// run compared field by field for everything else.
pub fn verify_report(report: &Report, mode: Mode) -> Result<VerifyReport> {
    let i = &report.inputs;
    let mut out = match report.command.as_str() {
        "gap" => verify_gap(&i.decorated()?, &from_result::<GapCertificate>(&report.result)?)?,
        "pst" => {
            let g = i.graph()?;
            let (u, v) = i.pair(&g)?;
            verify_pst(&g, u, v, &from_result::<PstCertificate>(&report.result)?)?
        }
        "bridge-certify" => verify_bridge(&i.graph()?, &from_result::<BridgeOutcome>(&report.result)?),
        "integral" => verify_integrality(&i.graph()?, &from_result::<IntegralityReport>(&report.result)?)?,
        "balanced" if i.degrees.is_some() => {
            let spec = i.spec()?;
            let rep: IntegralityReport = from_result(&report.result["report"])?;
            if spec.vertex_count() <= VERIFY_DENSE_LIMIT {
                verify_integrality(&balanced_tree(&spec)?, &rep)?
            } else {
                let mut phi = Polynomial::one();
                for (f, m) in balanced_spectrum_factors(&spec)? {
                    phi = &phi * &f.pow(m as u32);
                }
                verify_integrality_poly(&phi, &rep)?
            }
        }
        _ => VerifyReport {
            kind: report.command.clone(),
            valid: true,
            checks: BTreeMap::new(),
        },
    };
    let fresh = execute(&report.command, i, mode)?;
    let same = numeric_free(&fresh.report.result) == numeric_free(&report.result);
    out.valid &= same;
    out.checks.insert("recomputed result matches".into(), same);
    Ok(out)
}

/// Drops floating-point fields so that recomputation is compared exactly.
fn numeric_free(v: &Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(
            m.iter()
                .filter(|(_, x)| !x.is_f64())
                .map(|(k, x)| (k.clone(), numeric_free(x)))
                .collect(),
        ),
        Value::Array(a) => Value::Array(a.iter().map(numeric_free).collect()),
        other => other.clone(),
    }
}

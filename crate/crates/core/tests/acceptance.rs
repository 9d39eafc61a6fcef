//! One line per acceptance criterion; exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use decospec::algebra::{rat, Polynomial};
use decospec::exec::Mode;
use decospec::gap::{verify_gap_theorem, GapVerdict};
use decospec::graph::{DecoratedPath, Gadget, WeightedGraph};
use decospec::pst::FidelityKernel;
use decospec::sweep::{self, LocatorSweep, SuiteReport};

struct Line {
    id: usize,
    ok: bool,
    detail: String,
}

fn suite_line(id: usize, r: &SuiteReport, extra_ok: bool, extra: &str) -> Line {
    let ok = r.passed() && r.checked > 0 && extra_ok;
    let mut detail = format!(
        "{}: {} instances, {} checked, {} skipped, {} violations, {:.1}s",
        r.suite,
        r.instances,
        r.checked,
        r.skipped,
        r.violations,
        r.elapsed.as_secs_f64()
    );
    if !extra.is_empty() {
        detail.push_str("; ");
        detail.push_str(extra);
    }
    for e in &r.examples {
        detail.push_str("\n    ");
        detail.push_str(e);
    }
    Line { id, ok, detail }
}

fn double_star() -> DecoratedPath {
    let k12 = Gadget::new(WeightedGraph::star(2), 0).unwrap();
    DecoratedPath::new(vec![k12.clone(), k12]).unwrap()
}

fn gap_spots() -> (bool, String) {
    let p4 = verify_gap_theorem(&DecoratedPath::bare(4));
    let s22 = verify_gap_theorem(&double_star());
    let p5 = verify_gap_theorem(&DecoratedPath::bare(5));
    let eq1 = |r: &decospec::Result<decospec::gap::GapCertificate>| {
        matches!(r, Ok(c) if c.comparison == GapVerdict::Equal1 && c.holds)
    };
    let p5_ok = matches!(&p5, Ok(c)
        if c.lambda.is_root_of(&Polynomial::from_ints(&[-3, 0, 1]))
            && c.lambda.approx() > 0.0
            && c.mu.rational_value() == Some(rat(1)));
    let ok = eq1(&p4) && eq1(&s22) && p5_ok;
    (ok, format!("P4 gap = 1: {}, S(2,2) gap = 1: {}, P5 gap = √3 − 1: {}", eq1(&p4), eq1(&s22), p5_ok))
}

fn pst_spots() -> (bool, String) {
    let f2 = FidelityKernel::new(&WeightedGraph::path(2), 0, 1).unwrap().fidelity(PI / 2.0);
    let f3 = FidelityKernel::new(&WeightedGraph::path(3), 0, 2)
        .unwrap()
        .fidelity(PI / 2f64.sqrt());
    let ok = f2 >= 1.0 - 1e-9 && f3 >= 1.0 - 1e-9;
    (ok, format!("fidelity P2(π/2) = {f2:.12}, P3(π/√2) = {f3:.12}"))
}

fn emit(lines: &mut Vec<Line>, l: Line) {
    println!("criterion {}: {} - {}", l.id, if l.ok { "PASS" } else { "FAIL" }, l.detail);
    lines.push(l);
}

fn main() -> ExitCode {
    let mode = Mode::Parallel;
    let total = Instant::now();
    let mut lines = Vec::new();

    let r = sweep::continued_fraction(12, mode);
    let ok = r.instances >= 1000 && r.elapsed.as_secs() < 300;
    emit(&mut lines, suite_line(1, &r, ok, ""));

    let r = sweep::identities(8, mode).unwrap();
    emit(&mut lines, suite_line(2, &r, true, ""));

    let r = sweep::gap(12, mode).unwrap();
    let (ok, spots) = gap_spots();
    emit(&mut lines, suite_line(3, &r, ok, &spots));

    let r = sweep::no_pst(12, None, mode).unwrap();
    let (ok, spots) = pst_spots();
    let two_feasible = r.tally.get("feasible (P2/P3)") == Some(&2);
    emit(&mut lines, suite_line(4, &r, ok && two_feasible, &spots));

    let r = sweep::parity(10, mode);
    emit(&mut lines, suite_line(5, &r, true, ""));

    let r = sweep::locator(LocatorSweep::default(), mode);
    emit(&mut lines, suite_line(6, &r, r.checked == 500, ""));

    let r = sweep::bridge(100, 7, mode);
    emit(&mut lines, suite_line(7, &r, r.checked == 100, ""));

    let b = sweep::balanced(6, 10, mode).unwrap();
    let shallow: Vec<String> = b
        .odd_shallow_hits
        .iter()
        .chain(&b.even_shallow_hits)
        .map(|h| format!("{:?}{:?}", h.spec.parity, h.spec.degrees))
        .collect();
    let extra = format!(
        "{} odd depth 2-3 specs, {} integral; shallow hits {}",
        b.specs_searched,
        b.odd_deep_hits.len(),
        shallow.join(" ")
    );
    let ok = b.specs_searched >= 100 && b.odd_deep_hits.is_empty() && b.report.elapsed.as_secs() < 600;
    emit(&mut lines, suite_line(8, &b.report, ok, &extra));

    let r = sweep::strong_equivalence(12, mode).unwrap();
    let both = r.tally.contains_key("strongly cospectral") && r.tally.contains_key("not strongly cospectral");
    emit(&mut lines, suite_line(9, &r, both, ""));

    let all = lines.iter().all(|l| l.ok);
    println!("acceptance: {} in {:.1}s", if all { "PASS" } else { "FAIL" }, total.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

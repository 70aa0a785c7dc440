//! Acceptance criteria 1 to 10, one line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use vcoalg::checks::{
    check_dstar_laws, check_skew_symmetry, correlation, CorrelationKind, run_alt_axiom_suite, run_coalgebra_suite,
    run_comodule_suite, run_delta_suite, run_rca_suite, weak_coassoc_sweep, weak_cocomm_k,
    weak_cocomm_sweep, AltVerdicts, Functional, Report, Status, DEFAULT_SLACK, DEFAULT_SWEEP_WEIGHT,
};
use vcoalg::constructions::{
    abelian_vla, affinize, classical_enveloping, commutative, dualize, dualize_coalgebra, envelope,
    heisenberg_vla, mutant_comodule, mutant_jacobi, mutant_sign, trivial_coalgebra, virasoro_vla,
    CentralHandling, Convention, Envelope,
};
use vcoalg::formal::{VarId, Window};
use vcoalg::graded::{DualFunctional, Idx};
use vcoalg::scalar::int;
use vcoalg::structures::{Comodule, VertexCoalgebra};

/// Outcome of one criterion.
struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

fn cube(lo: i32, hi: i32) -> Window {
    Window::cube(&VarId::ALL, lo, hi)
}

/// Window for the structure suites.
fn suite_window() -> Window {
    cube(-8, 8)
}

fn examples() -> Vec<VertexCoalgebra> {
    let env = |l| envelope(&l, 6, Convention::Standard, CentralHandling::default()).unwrap();
    vec![
        dualize(&commutative(4).unwrap()).unwrap(),
        dualize(&env(abelian_vla(6).unwrap())).unwrap(),
        dualize(&env(heisenberg_vla(6).unwrap())).unwrap(),
        trivial_coalgebra(),
    ]
}

fn mutants() -> Vec<VertexCoalgebra> {
    vec![mutant_jacobi().unwrap(), mutant_sign().unwrap()]
}

/// First non-passing check of a report, rendered for a failure line.
fn first_problem(r: &Report) -> String {
    r.checks
        .iter()
        .find(|c| c.status != Status::Pass)
        .map(|c| format!("{}: {} {}", r.structure, c.name, c.status))
        .unwrap_or_default()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let took = start.elapsed();
    let detail = format!("{} [{:.2}s]", v.detail, took.as_secs_f64());
    match limit {
        Some(l) if took > l => Verdict::new(false, format!("{detail}, over the {}s limit", l.as_secs())),
        _ => Verdict::new(v.pass, detail),
    }
}

fn criterion_1() -> Verdict {
    let r = run_delta_suite(&cube(-6, 6));
    if r.passed() {
        Verdict::new(true, format!("{} identities on [-6,6]", r.checks.len()))
    } else {
        Verdict::new(false, first_problem(&r))
    }
}

fn criterion_2() -> Verdict {
    let w = suite_window();
    for c in examples() {
        let r = run_coalgebra_suite(&c, &w);
        if !r.passed() {
            return Verdict::new(false, first_problem(&r));
        }
    }
    for m in mutants() {
        let r = run_coalgebra_suite(&m, &w);
        let failed = r.checks.iter().any(|c| c.status == Status::Fail && c.witness.is_some());
        let skew = check_skew_symmetry(&m, &w);
        if !failed && skew.witness.is_none() {
            return Verdict::new(false, format!("{} was not rejected", m.name));
        }
    }
    Verdict::new(true, "4 examples pass, 2 mutants rejected with witnesses")
}

fn criterion_3() -> Verdict {
    let w = suite_window();
    let mut laws = 0;
    for c in examples() {
        let mut r = check_dstar_laws(&c, &w);
        r.push(check_skew_symmetry(&c, &w));
        if !r.passed() {
            return Verdict::new(false, first_problem(&r));
        }
        laws = r.checks.len();
    }
    Verdict::new(true, format!("{laws} laws on 4 examples"))
}

/// `(a_{-1}1)' ⊗ (a_{-1}1)' ⊗ 1'` on the Heisenberg dual.
fn heisenberg_pole(m: &Comodule) -> Functional {
    let a = m.over.space.index_of("a_{-1}1").unwrap();
    let one = m.space.index_of("1").unwrap();
    DualFunctional::dual_basis([a, a, one])
}

fn criterion_4() -> Verdict {
    let w = suite_window();
    let cs = examples();
    let comm = Comodule::regular(&cs[0]);
    let sweep = weak_cocomm_sweep(&comm, DEFAULT_SWEEP_WEIGHT, &w, DEFAULT_SLACK);
    if sweep.ks.values().any(|k| *k != 0) || sweep.check.status != Status::Pass {
        return Verdict::new(false, "commutative dual needs a positive exponent");
    }
    let heis = Comodule::regular(&cs[2]);
    let k = weak_cocomm_k(&heis, &heisenberg_pole(&heis), &w, DEFAULT_SLACK);
    if k.k != Some(2) {
        return Verdict::new(false, format!("Heisenberg pole functional has k = {:?}", k.k));
    }
    let mut swept = 0;
    for c in &cs {
        let m = Comodule::regular(c);
        for s in [
            weak_cocomm_sweep(&m, DEFAULT_SWEEP_WEIGHT, &w, DEFAULT_SLACK),
            weak_coassoc_sweep(&m, DEFAULT_SWEEP_WEIGHT, &w, DEFAULT_SLACK),
        ] {
            if s.check.status != Status::Pass || !s.over_bound.is_empty() {
                return Verdict::new(false, format!("{}: {}", c.name, s.check.name));
            }
            swept += s.swept;
        }
    }
    Verdict::new(true, format!("k = 0 and k = 2 as expected; {swept} functionals within the bound"))
}

fn criterion_5() -> Verdict {
    let w = suite_window();
    let cs = examples();
    let mut pairs = vec![];
    for c in &cs {
        let r = run_rca_suite(c, &w, DEFAULT_SWEEP_WEIGHT);
        if !r.passed() {
            return Verdict::new(false, first_problem(&r));
        }
        let rc = r.checks.iter().find(|c| c.name == "coassociativity").unwrap();
        pairs.push(rc.detail.clone().unwrap_or_default().split(' ').next().unwrap_or("0").to_string());
    }
    let heis = Comodule::regular(&cs[2]);
    let pole = heisenberg_pole(&heis);
    let k = heis.space.index_of("K_{-1}1").unwrap();
    let mut exprs = vec![];
    for kind in [CorrelationKind::Right, CorrelationKind::Left] {
        let c = correlation(&heis, &pole, k, kind, &w, DEFAULT_SLACK);
        match c.expr {
            Some(e) if c.report.passed() => exprs.push(e.to_string()),
            _ => return Verdict::new(false, first_problem(&c.report)),
        }
    }
    if !exprs[0].ends_with("(x1 - x2)^2)") {
        return Verdict::new(false, format!("pole functional gives {}", exprs[0]));
    }
    Verdict::new(
        true,
        format!(
            "pairs decided per example {}; pole functional f = {}, k = {}",
            pairs.join("/"),
            exprs[0],
            exprs[1]
        ),
    )
}

fn criterion_6() -> Verdict {
    let w = suite_window();
    let mut n = 0;
    for c in examples().into_iter().chain(mutants()) {
        let v = AltVerdicts::compute(&c, &w);
        let j = v.jacobi.overall();
        let rca = run_rca_suite(&c, &w, DEFAULT_SWEEP_WEIGHT).overall();
        if !v.agree() || rca != j {
            let alt = run_alt_axiom_suite(&c, &w);
            return Verdict::new(
                false,
                format!("{}: jacobi {j}, rca {rca}; {}", c.name, first_problem(&alt)),
            );
        }
        n += 1;
    }
    Verdict::new(true, format!("verdicts agree on {n} structures"))
}

fn criterion_7() -> Verdict {
    let w = suite_window();
    for c in examples() {
        let r = run_comodule_suite(&Comodule::regular(&c), &w);
        if !r.passed() {
            return Verdict::new(false, first_problem(&r));
        }
    }
    let bad = run_comodule_suite(&mutant_comodule().unwrap(), &w);
    if bad.overall() != Status::Fail {
        return Verdict::new(false, "comodule mutant was not rejected");
    }
    Verdict::new(true, "4 regular comodules pass, mutant rejected")
}

/// Partition numbers by the pentagonal recurrence.
fn partitions(n: usize) -> Vec<usize> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p.into_iter().map(|x| x as usize).collect()
}

fn criterion_8() -> Verdict {
    let abelian = abelian_vla(8).unwrap();
    let e = Envelope::new(&abelian, 8, Convention::Standard, CentralHandling::default()).unwrap();
    let dims = e.dimensions();
    if dims != partitions(8) {
        return Verdict::new(false, format!("abelian dimensions {dims:?}"));
    }
    let d = int(1);
    let vir = virasoro_vla(&d, 8).unwrap();
    let e = Envelope::new(&vir, 8, Convention::Standard, CentralHandling::default()).unwrap();
    let r = e.check_virasoro("w", "K", &d, 4);
    if !r.passed() {
        return Verdict::new(false, first_problem(&r));
    }
    let (_, lie) = affinize(&vir, 3, Convention::Alternate);
    let alternate = Envelope::new(&vir, 8, Convention::Alternate, CentralHandling::default())
        .map(|e| e.check_virasoro("w", "K", &d, 4).overall().to_string())
        .unwrap_or_else(|err| err.to_string());
    Verdict::new(
        true,
        format!(
            "partitions {dims:?}, Virasoro relations hold; other convention: Lie axioms {}, relations {alternate}",
            lie.overall()
        ),
    )
}

fn criterion_9() -> Verdict {
    let mut square = String::new();
    for dim in 1..=3 {
        let b = classical_enveloping(dim, 4).unwrap();
        let r = b.check();
        if !r.passed() {
            return Verdict::new(false, first_problem(&r));
        }
        if dim == 1 {
            let c = b.comparison().into_iter().find(|c| c.monomial == "e1^2").unwrap();
            square = format!("e1^2 induced {} vs multiplicative {}", c.induced, c.multiplicative);
        }
    }
    Verdict::new(true, format!("dims 1..3, degree 4; {square}"))
}

fn criterion_10() -> Verdict {
    for n in [4, 8] {
        let a = commutative(n).unwrap();
        let back = dualize_coalgebra(&dualize(&a).unwrap()).unwrap();
        let key = |t: &std::collections::BTreeMap<(Idx, i64, Idx), _>| t.clone();
        if back.space != a.space || key(back.table()) != key(a.table()) || back.vacuum != a.vacuum {
            return Verdict::new(false, format!("commutative({n}) tables differ"));
        }
    }
    Verdict::new(true, "commutative(4) and commutative(8) recovered table for table")
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [(&str, Option<u64>, fn() -> Verdict); 10] = [
        ("delta calculus", Some(5), criterion_1),
        ("coalgebra axioms", Some(60), criterion_2),
        ("D* laws and skew symmetry", None, criterion_3),
        ("weak exponents", None, criterion_4),
        ("rationality", None, criterion_5),
        ("axiom equivalence", None, criterion_6),
        ("comodules", None, criterion_7),
        ("enveloping algebras", None, criterion_8),
        ("classical enveloping", None, criterion_9),
        ("double dual", None, criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let v = timed(limit.map(Duration::from_secs), f);
        let mark = if v.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark} {name}: {}", i + 1, v.detail);
        if !v.pass {
            failed.push(i + 1);
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}

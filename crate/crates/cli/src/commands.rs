use std::path::Path;

use serde_json::{json, Value};
use vcoalg::checks::{
    check_dstar_laws, check_skew_symmetry, check_virasoro, check_vla_axioms, correlation,
    run_coalgebra_suite, run_comodule_suite, CheckResult, CorrelationKind, Report, Witness,
    DEFAULT_SLACK,
};
use vcoalg::constructions::{
    abelian_vla, affinize, classical_enveloping, coalgebra_from_form, commutative,
    dualize as dual_of, dualize_coalgebra, heisenberg_vla, mutant_comodule, mutant_jacobi, mutant_sign, shifted_comodule,
    trivial_algebra, virasoro_vla, BilinearForm, CentralHandling, Envelope,
};
use vcoalg::graded::Idx;
use vcoalg::scalar;
use vcoalg::specfile::{self, Structure};
use vcoalg::structures::{Comodule, VertexAlgebra, VertexCoalgebra};
use vcoalg::{Error, Result};

use crate::output::Output;
use crate::{Global, Side};

/// Largest `|j|, |k|` in the Virasoro relations checked on `voc` files.
const VIRASORO_BOUND: i64 = 3;

pub fn parse_central(s: &str) -> std::result::Result<CentralHandling, String> {
    match s.split_once(':') {
        Some(("nilpotent", p)) => p
            .parse()
            .map(CentralHandling::Nilpotent)
            .map_err(|_| format!("bad nilpotency order `{p}`")),
        Some(("value", c)) => scalar::parse(c)
            .map(CentralHandling::Specialize)
            .map_err(|_| format!("bad scalar `{c}`")),
        _ => Err("expected `nilpotent:P` or `value:c`".into()),
    }
}

/// The dual coalgebra, through the form when the file gives one.
fn dual_coalgebra(a: &VertexAlgebra, form: Option<&BilinearForm>) -> Result<VertexCoalgebra> {
    match form {
        Some(f) => coalgebra_from_form(a, Some(f)),
        None => dual_of(a),
    }
}

fn coalgebra_report(name: &str, c: &VertexCoalgebra, g: &Global) -> Report {
    let win = g.window();
    let mut r = Report::new(name, win);
    r.extend(run_coalgebra_suite(c, &win));
    r.extend(check_dstar_laws(c, &win));
    r.push(check_skew_symmetry(c, &win));
    r
}

pub fn validate(g: &Global, file: &Path, mode_bound: i64) -> Result<Output> {
    let win = g.window();
    let report = match specfile::read_file(file)? {
        Structure::Algebra { algebra, form } => {
            let c = dual_coalgebra(&algebra, form.as_ref())?;
            coalgebra_report(&algebra.name, &c, g)
        }
        Structure::Coalgebra(c) => coalgebra_report(&c.name, &c, g),
        Structure::Voc(v) => {
            let mut r = coalgebra_report(&v.base.name, &v.base, g);
            r.extend(check_virasoro(&v, VIRASORO_BOUND, &win));
            r
        }
        Structure::Lie(l) => {
            let mut r = check_vla_axioms(&l, &win);
            r.extend(affinize(&l, mode_bound, g.convention).1);
            r
        }
        Structure::Comodule(m) => run_comodule_suite(&m, &win),
    };
    Ok(Output::new(report))
}

/// Write `s`, read it back and confirm the file reproduces it.
fn write_checked(s: &Structure, path: &Path, step: &str) -> Result<Report> {
    specfile::write_file(path, s)?;
    let mut r = Report::new(s.name(), "-");
    r.push(CheckResult::pass(
        step,
        format!("{} `{}` written to {}", s.kind(), s.name(), path.display()),
    ));
    let (want, got) = (specfile::write(s), specfile::write(&specfile::read_file(path)?));
    r.push(if want == got {
        CheckResult::pass("reparse", "the written file reproduces the structure")
    } else {
        CheckResult::fail(
            "reparse",
            Witness {
                vector: s.name().to_string(),
                multidegree: "-".into(),
                lhs: got,
                rhs: want,
            },
        )
    });
    Ok(r)
}

pub fn dualize(_g: &Global, file: &Path, output: &Path) -> Result<Output> {
    let dual: Structure = match specfile::read_file(file)? {
        Structure::Algebra { algebra, form } => dual_coalgebra(&algebra, form.as_ref())?.into(),
        Structure::Coalgebra(c) => dualize_coalgebra(&c)?.into(),
        other => {
            return Err(Error::Unsupported(format!(
                "dualize takes a vertex algebra or a vertex coalgebra, got a {}",
                other.kind()
            )))
        }
    };
    Ok(Output::new(write_checked(&dual, output, "dualize")?))
}

pub fn envelope(
    g: &Global,
    file: &Path,
    cutoff: i64,
    central: CentralHandling,
    mode_bound: i64,
    output: Option<&Path>,
) -> Result<Output> {
    let lie = match specfile::read_file(file)? {
        Structure::Lie(l) => l,
        other => {
            return Err(Error::Unsupported(format!(
                "envelope takes a vertex Lie algebra, got a {}",
                other.kind()
            )))
        }
    };
    let win = g.window();
    let (_, lie_report) = affinize(&lie, mode_bound, g.convention);
    let built = Envelope::new(&lie, cutoff, g.convention, central)
        .and_then(|e| Ok((e.dimensions(), e.vertex_algebra()?)));
    let (dims, va) = match built {
        Ok(x) => x,
        Err(e) => {
            let mut r = Report::new(format!("envelope({}, {cutoff})", lie.name), win);
            r.extend(lie_report);
            r.push(CheckResult::from_error("envelope", &e));
            return Ok(Output::new(r));
        }
    };
    let mut r = Report::new(&va.name, win);
    r.extend(lie_report);
    let listed: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    r.push(CheckResult::pass(
        "envelope",
        format!("dimensions by weight 0..{cutoff}: {}", listed.join(", ")),
    ));
    r.extend(coalgebra_report(&va.name, &dual_of(&va)?, g));
    if let Some(path) = output {
        r.extend(write_checked(&va.clone().into(), path, "write")?);
    }
    let text = format!("dimensions: {}\n", listed.join(" "));
    Ok(Output::new(r).with("dimensions", json!(dims), text))
}

pub fn classical(_g: &Global, dim: usize, degree: usize) -> Result<Output> {
    let b = classical_enveloping(dim, degree)?;
    let table = b.delta_table();
    let comparison = b.comparison();
    let mut text = String::from("delta:\n");
    for (u, d) in &table {
        text.push_str(&format!("  {u} -> {d}\n"));
    }
    text.push_str("induced against multiplicative coproduct:\n");
    for c in &comparison {
        let verdict = if c.agree { "agree" } else { "differ" };
        text.push_str(&format!("  {}: {verdict}\n", c.monomial));
        if !c.agree {
            text.push_str(&format!(
                "    induced        = {}\n    multiplicative = {}\n",
                c.induced, c.multiplicative
            ));
        }
    }
    let rows: Vec<Value> = table
        .iter()
        .map(|(u, d)| json!({ "monomial": u, "delta": d }))
        .collect();
    let out = Output::new(b.check())
        .with("delta", Value::Array(rows), text)
        .with(
            "comparison",
            serde_json::to_value(&comparison).expect("comparison serializes"),
            String::new(),
        );
    Ok(out)
}

pub fn correlate(
    g: &Global,
    file: &Path,
    functional: &str,
    vector: Option<&str>,
    side: Side,
) -> Result<Output> {
    let m = match specfile::read_file(file)? {
        Structure::Comodule(m) => m,
        Structure::Coalgebra(c) => Comodule::regular(&c),
        Structure::Voc(v) => Comodule::regular(&v.base),
        Structure::Algebra { algebra, form } => Comodule::regular(&dual_coalgebra(&algebra, form.as_ref())?),
        Structure::Lie(_) => {
            return Err(Error::Unsupported(
                "correlate takes a coalgebra, a comodule or a vertex algebra".into(),
            ))
        }
    };
    let f = specfile::parse_functional(&m, functional)?;
    let vectors: Vec<Idx> = match vector {
        Some(l) => vec![m.space.index_of(l)?],
        None => {
            let bound = f
                .0
                .keys()
                .map(|[a, b, c]| {
                    scalar::int(m.over.space.int_weight(*a) + m.over.space.int_weight(*b)) + m.space.weight(*c)
                })
                .max()
                .ok_or_else(|| Error::Unsupported("the functional is zero".into()))?;
            m.space.basis().filter(|w| *m.space.weight(*w) <= bound).collect()
        }
    };
    let kind = match side {
        Side::Right => CorrelationKind::Right,
        Side::Left => CorrelationKind::Left,
    };
    let win = g.window();
    let mut report = Report::new(format!("{} against {}", m.name, functional.trim()), win);
    let (mut rows, mut text) = (Vec::new(), String::new());
    for w in vectors {
        let label = m.space.label(w);
        let c = correlation(&m, &f, w, kind, &win, DEFAULT_SLACK);
        for check in c.report.checks {
            report.push(CheckResult {
                name: format!("{label}: {}", check.name),
                ..check
            });
        }
        let expr = c.expr.as_ref().map(|e| e.to_string());
        let right = c.right.as_ref().map(|e| e.to_string());
        text.push_str(&format!("{label}: {}\n", expr.as_deref().unwrap_or("none")));
        if side == Side::Left {
            text.push_str(&format!("{label}: right {}\n", right.as_deref().unwrap_or("none")));
        }
        rows.push(json!({ "vector": label, "expression": expr, "right": right }));
    }
    Ok(Output::new(report).with("correlations", Value::Array(rows), text))
}

pub fn example(_g: &Global, name: &str, top: i64, output: &Path) -> Result<Output> {
    let s: Structure = match name {
        "trivial" => trivial_algebra().into(),
        "abelian-vla" => abelian_vla(top)?.into(),
        "heisenberg-vla" => heisenberg_vla(top)?.into(),
        "virasoro-vla" => virasoro_vla(&scalar::one(), top)?.into(),
        "mutant-jacobi" => mutant_jacobi()?.into(),
        "mutant-sign" => mutant_sign()?.into(),
        "mutant-comodule" => mutant_comodule()?.into(),
        "shifted-comodule" => shifted_comodule(&dual_of(&commutative(4)?)?, &scalar::ratio(1, 2))?.into(),
        _ => match name.strip_prefix("commutative").and_then(|n| n.parse().ok()) {
            Some(n) => commutative(n)?.into(),
            None => return Err(Error::OutOfRange(format!("unknown example `{name}`"))),
        },
    };
    Ok(Output::new(write_checked(&s, output, "example")?))
}

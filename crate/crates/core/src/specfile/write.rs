use std::fmt::Write as _;

use crate::graded::{DualFunctional, GradedSpace, Idx, Tensor2};
use crate::scalar;
use crate::structures::VertexCoalgebra;

use super::Structure;

fn meta(out: &mut String, name: &str, kind: &str) {
    let _ = writeln!(out, "[meta]\nname = {name}\nkind = {kind}");
}

fn bounds(out: &mut String, prefix: &str, top: Option<String>, modes: Option<(i64, i64)>) {
    if let Some(t) = top {
        let _ = writeln!(out, "{prefix}top = {t}");
    }
    if let Some((lo, hi)) = modes {
        let _ = writeln!(out, "{prefix}modes = {lo}:{hi}");
    }
}

fn space(out: &mut String, header: &str, s: &GradedSpace) {
    let _ = writeln!(out, "\n[{header}]");
    for (w, range) in s.pieces() {
        let labels: Vec<&str> = range.clone().map(|i| s.label(i)).collect();
        let _ = writeln!(out, "{} : {} : {}", scalar::format(w), labels.len(), labels.join(", "));
    }
}

fn functional(out: &mut String, header: &str, s: &GradedSpace, f: &DualFunctional<Idx>) {
    let _ = writeln!(out, "\n[{header}]\n{}", s.format_vector(&f.0));
}

fn coproducts<'a>(
    out: &mut String,
    header: &str,
    left: &GradedSpace,
    right: &GradedSpace,
    rows: impl Iterator<Item = (&'a (Idx, i64), &'a Tensor2)>,
) {
    let _ = writeln!(out, "\n[{header}]");
    for ((v, k), t) in rows {
        let _ = writeln!(out, "{}, {} -> {}", right.label(*v), k, left.format_tensor2(right, t));
    }
}

fn coalgebra(out: &mut String, prefix: &str, c: &VertexCoalgebra) {
    space(out, &format!("{prefix}space"), &c.space);
    functional(out, &format!("{prefix}covacuum"), &c.space, &c.covacuum);
    coproducts(out, &format!("{prefix}coproducts"), &c.space, &c.space, c.table().iter());
}

/// Render a structure in the file format; `parse(&write(s))` rebuilds `s`.
pub fn write(s: &Structure) -> String {
    let mut out = String::new();
    match s {
        Structure::Algebra { algebra: a, form } => {
            meta(&mut out, &a.name, "vertex-algebra");
            bounds(&mut out, "", a.top_weight.map(|t| t.to_string()), a.mode_window);
            space(&mut out, "space", &a.space);
            let _ = writeln!(out, "\n[vacuum]\n{}", a.space.format_vector(&a.vacuum));
            let _ = writeln!(out, "\n[products]");
            for ((u, n, v), x) in a.table() {
                let _ = writeln!(
                    out,
                    "{}, {}, {} -> {}",
                    a.space.label(*u),
                    n,
                    a.space.label(*v),
                    a.space.format_vector(x)
                );
            }
            if let Some(f) = form {
                let _ = writeln!(out, "\n[form]");
                for ((i, j), c) in &f.entries {
                    let _ = writeln!(
                        out,
                        "{}, {} -> {}",
                        a.space.label(*i),
                        a.space.label(*j),
                        scalar::format(c)
                    );
                }
            }
        }
        Structure::Coalgebra(c) => {
            meta(&mut out, &c.name, "vertex-coalgebra");
            bounds(&mut out, "", c.top_weight.map(|t| t.to_string()), c.mode_window);
            coalgebra(&mut out, "", c);
        }
        Structure::Voc(v) => {
            let c = &v.base;
            meta(&mut out, &c.name, "voc");
            let _ = writeln!(out, "rank = {}", scalar::format(&v.rank));
            bounds(&mut out, "", c.top_weight.map(|t| t.to_string()), c.mode_window);
            coalgebra(&mut out, "", c);
            functional(&mut out, "rho", &c.space, &v.rho);
        }
        Structure::Lie(l) => {
            meta(&mut out, &l.name, "vertex-lie");
            bounds(&mut out, "", l.top_weight.map(|t| t.to_string()), None);
            space(&mut out, "space", &l.space);
            let _ = writeln!(out, "\n[derivation]");
            for (u, x) in l.derivation_table() {
                let _ = writeln!(out, "{} -> {}", l.space.label(*u), l.space.format_vector(x));
            }
            let _ = writeln!(out, "\n[products]");
            for ((u, k, v), x) in l.table() {
                let _ = writeln!(
                    out,
                    "{}, {}, {} -> {}",
                    l.space.label(*u),
                    k,
                    l.space.label(*v),
                    l.space.format_vector(x)
                );
            }
        }
        Structure::Comodule(m) => {
            meta(&mut out, &m.name, "comodule");
            let _ = writeln!(out, "over = {}", m.over.name);
            bounds(&mut out, "", m.top_weight.as_ref().map(scalar::format), m.mode_window);
            bounds(&mut out, "over-", m.over.top_weight.map(|t| t.to_string()), m.over.mode_window);
            space(&mut out, "space", &m.space);
            coproducts(&mut out, "coproducts", &m.over.space, &m.space, m.table().iter());
            coalgebra(&mut out, "base-", &m.over);
        }
    }
    out
}

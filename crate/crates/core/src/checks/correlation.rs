use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::formal::{
    format_mono, fraction_eq, iota_expand, match_rational_graded, mono_of, Expansion, GradedSupport, LaurentPoly, RationalExpr,
    RationalShape, VarId, Window,
};
use crate::graded::{Idx, Tensor3};
use crate::scalar::{self, Scalar};
use crate::structures::Comodule;
use crate::{Error, Result};

use super::coaction::{key_weights, Composites};
use super::weak::{self, first_coassoc, Functional};
use super::{CheckResult, Report, Status, Witness};

const RIGHT: &str = "right-rationality";
const COCOMM: &str = "cocommutativity";
const LEFT: &str = "left-rationality";
const COASSOC: &str = "coassociativity";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelationKind {
    /// `f(x1, x2)` from `⟨v', (Id ⊗ Y(x2)) Y(x1) w⟩`.
    Right,
    /// `k(x0, x2)` from `⟨v', (Y(x0) ⊗ Id) Y(x2) w⟩`.
    Left,
}

/// A reconstructed correlation function together with the cross-checks run
/// on it.
#[derive(Clone, Debug)]
pub struct Correlation {
    pub kind: CorrelationKind,
    /// The requested function, when reconstruction succeeded.
    pub expr: Option<RationalExpr>,
    /// The right-kind function `f(x1, x2)`, also computed for the left kind.
    pub right: Option<RationalExpr>,
    pub report: Report,
}

/// Certified upper bound on the exponent of `var` for `key`; `None` when the
/// relevant factor is not truncated.
fn cert_upper(m: &Comodule, key: &[Idx; 3], var: VarId) -> Option<i64> {
    let (p, q, s) = key_weights(m, key);
    match var {
        VarId::X2 => m.top_weight.as_ref().map(|t| scalar::floor_i64(&(t - &s)) - q),
        VarId::X1 => m.top_weight.as_ref().map(|t| scalar::floor_i64(&(t - &s)) - p),
        VarId::X0 => m.over.top_weight.map(|t| t - p - q),
        _ => None,
    }
}

/// Lowest certified upper bound on the exponent of `var` over the keys of `f`.
fn truncation(m: &Comodule, f: &Functional, var: VarId) -> Option<i32> {
    f.0.keys().filter_map(|k| cert_upper(m, k, var)).min().map(|c| c as i32)
}

/// The `(a, b)` part of `win` with the upper bound of `capped` lowered to the
/// range certified for every key of `f`.
fn series_window<'k>(
    m: &Comodule,
    keys: impl Iterator<Item = &'k [Idx; 3]>,
    win: &Window,
    (a, b): (VarId, VarId),
    capped: VarId,
) -> Result<Window> {
    let (alo, ahi) = win.require(a)?;
    let (blo, bhi) = win.require(b)?;
    let mut w = Window::unbounded().with(a, alo, ahi).with(b, blo, bhi);
    let cap = keys.filter_map(|k| cert_upper(m, k, capped)).min();
    if let Some(cap) = cap {
        let (lo, hi) = w.require(capped)?;
        let hi = (hi as i64).min(cap) as i32;
        if hi < lo {
            return Err(Error::WindowTooSmall(format!(
                "no certified exponents of {capped} inside {lo}:{hi}"
            )));
        }
        w = w.with(capped, lo, hi);
    }
    Ok(w)
}

/// The three composed series of one basis vector, as tensors per monomial.
struct Composed {
    a: BTreeMap<(i32, i32), Tensor3>,
    b: BTreeMap<(i32, i32), Tensor3>,
    r: BTreeMap<(i32, i32), Tensor3>,
}

impl Composed {
    fn new(comp: &mut Composites, win: &Window, left: bool) -> Result<Self> {
        let (lo1, hi1) = win.require(VarId::X1)?;
        let (lo2, hi2) = win.require(VarId::X2)?;
        let mut a = BTreeMap::new();
        let mut b = BTreeMap::new();
        for e1 in lo1..=hi1 {
            for e2 in lo2..=hi2 {
                let (k, l) = (-(e1 as i64) - 1, -(e2 as i64) - 1);
                a.insert((e1, e2), comp.a(k, l)?.clone());
                b.insert((e1, e2), comp.b(k, l)?.clone());
            }
        }
        let mut r = BTreeMap::new();
        if left {
            let (lo0, hi0) = win.require(VarId::X0)?;
            for e0 in lo0..=hi0 {
                for e2 in lo2..=hi2 {
                    r.insert((e0, e2), first_coassoc(comp, e0, e2)?);
                }
            }
        }
        Ok(Composed { a, b, r })
    }

    fn keys(&self) -> BTreeSet<[Idx; 3]> {
        self.a
            .values()
            .chain(self.b.values())
            .chain(self.r.values())
            .flat_map(|t| t.keys().copied())
            .collect()
    }
}

fn series(
    table: &BTreeMap<(i32, i32), Tensor3>,
    f: &Functional,
    w: &Window,
    (a, b): (VarId, VarId),
) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for ((ea, eb), t) in table {
        let m = mono_of(&[(a, *ea), (b, *eb)]);
        if w.contains(&m) {
            out.add_term(m, f.pair(t));
        }
    }
    out
}

/// Exponent sums `e_a + e_b` that grading allows in the composed series of
/// `f` against `w`.
fn exponent_sums(m: &Comodule, f: &Functional, w: Idx) -> Vec<i64> {
    let wt = m.space.weight(w);
    f.0.keys()
        .filter_map(|key| {
            let (p, q, s) = key_weights(m, key);
            let c = wt - &scalar::int(p + q) - &s;
            c.is_integer().then(|| c.to_integer().try_into().ok()).flatten()
        })
        .collect::<BTreeSet<i64>>()
        .into_iter()
        .collect()
}

/// Lowest exponents grading allows, over the keys of `f`: `x1` in the
/// opposite composition, `x2` in the right composition and `x0` in the left
/// series.
fn lowest_exponents(m: &Comodule, f: &Functional) -> (Option<i32>, Option<i32>, Option<i32>) {
    let Some(min_m) = m.space.min_weight().cloned() else {
        return (None, None, None);
    };
    let min_v = m.over.space.min_int_weight();
    let lo = |x: Scalar| scalar::ceil_i64(&x) as i32;
    let mut out: (Option<i32>, Option<i32>, Option<i32>) = (None, None, None);
    for key in f.0.keys() {
        let (p, q, s) = key_weights(m, key);
        let e1 = lo(&min_m - &scalar::int(p) - &s);
        let e2 = lo(&min_m - &scalar::int(q) - &s);
        let e0 = (min_v - p - q) as i32;
        out.0 = Some(out.0.map_or(e1, |v| v.min(e1)));
        out.1 = Some(out.1.map_or(e2, |v| v.min(e2)));
        out.2 = Some(out.2.map_or(e0, |v| v.min(e0)));
    }
    out
}

/// `f(x0 + x2, x2)` as a function of `x0` and `x2`.
fn shift_right(f: &RationalExpr) -> RationalExpr {
    let sum = LaurentPoly::var(VarId::X0).add(&LaurentPoly::var(VarId::X2));
    let g = f.g.substitute(VarId::X1, &sum);
    RationalExpr::new(g, f.t, f.s, f.r, RationalShape::iota20())
}

type Step<T> = std::result::Result<T, (&'static str, Error)>;

fn at<T>(name: &'static str, r: Result<T>) -> Step<T> {
    r.map_err(|e| (name, e))
}

/// Result of reconstructing the correlation functions of one functional
/// against one basis vector.
struct Pair {
    checks: Vec<CheckResult>,
    right: Option<RationalExpr>,
    left: Option<RationalExpr>,
    /// Reconstruction needs data above the top weight.
    truncated: bool,
    /// Reconstruction needs coefficients outside the window.
    beyond_window: bool,
}

fn step_error(name: &'static str, e: Error, label: &str) -> CheckResult {
    match e {
        Error::NotRational(t) => CheckResult::fail(
            name,
            Witness {
                vector: label.to_string(),
                multidegree: "series".into(),
                lhs: "windowed series".into(),
                rhs: format!("no rational function with linear-factor exponent <= {t}"),
            },
        ),
        e => CheckResult::from_error(name, &e),
    }
}

/// Rationality and the two rational-function identities for `f` on the
/// precomputed series, with linear-factor exponents bounded by `t12` and
/// `t20` (the latter only when the left kind is wanted).
#[allow(clippy::too_many_arguments)]
fn reconstruct(
    m: &Comodule,
    f: &Functional,
    w: Idx,
    series_of: &Composed,
    win: &Window,
    t12: u32,
    t20: Option<u32>,
    label: &str,
) -> Pair {
    let mut out = Pair {
        checks: vec![],
        right: None,
        left: None,
        truncated: false,
        beyond_window: false,
    };
    if let Err((name, e)) = reconstruct_steps(m, f, w, series_of, win, t12, t20, label, &mut out) {
        out.truncated = matches!(e, Error::Truncated(_));
        out.beyond_window = matches!(e, Error::Inconclusive(_) | Error::WindowTooSmall(_));
        out.checks.push(step_error(name, e, label));
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn reconstruct_steps(
    m: &Comodule,
    f: &Functional,
    w: Idx,
    s: &Composed,
    win: &Window,
    t12: u32,
    t20: Option<u32>,
    label: &str,
    out: &mut Pair,
) -> Step<()> {
    let (x0, x1, x2) = (VarId::X0, VarId::X1, VarId::X2);
    let sums = exponent_sums(m, f, w);
    let (lo1, lo2, lo0) = lowest_exponents(m, f);
    // Each composition is exact below its own cap; between them they
    // determine the numerator unless the top weight is too low.
    let w12 = at(RIGHT, series_window(m, f.0.keys(), win, (x1, x2), x2))?;
    let w21 = at(COCOMM, series_window(m, f.0.keys(), win, (x1, x2), x1))?;
    let s12 = series(&s.a, f, &w12, (x1, x2));
    let s21 = series(&s.b, f, &w21, (x1, x2));
    let parts = [
        Expansion {
            series: &s12,
            window: &w12,
            expand_in: x2,
            vanishes_below: (None, lo2),
            truncated_above: (None, truncation(m, f, x2)),
        },
        Expansion {
            series: &s21,
            window: &w21,
            expand_in: x1,
            vanishes_below: (lo1, None),
            truncated_above: (truncation(m, f, x1), None),
        },
    ];
    let support = GradedSupport {
        sums: sums.clone(),
        lower: (lo1, lo2),
    };
    let fexpr = at(
        RIGHT,
        match_rational_graded(&parts, RationalShape::iota12(), &support, t12),
    )?;
    out.checks.push(CheckResult::pass(RIGHT, format!("f = {fexpr}")));
    out.right = Some(fexpr.clone());

    let f21 = at(
        COCOMM,
        iota_expand(&fexpr, RationalShape::iota21().orientation(), &w21),
    )?
    .truncate(&w21);
    match f21.first_difference(&s21) {
        None => out.checks.push(CheckResult::pass(
            COCOMM,
            "opposite composition is the other expansion of f",
        )),
        Some(mono) => out.checks.push(CheckResult::fail(
            COCOMM,
            Witness {
                vector: label.to_string(),
                multidegree: format_mono(&mono),
                lhs: scalar::format(&s21.coeff(&mono)),
                rhs: scalar::format(&f21.coeff(&mono)),
            },
        )),
    }

    let Some(t20) = t20 else {
        return Ok(());
    };
    let w20 = at(LEFT, series_window(m, f.0.keys(), win, (x0, x2), x0))?;
    let s20 = series(&s.r, f, &w20, (x0, x2));
    let left = [Expansion {
        series: &s20,
        window: &w20,
        expand_in: x0,
        vanishes_below: (lo0, None),
        truncated_above: (truncation(m, f, x0), None),
    }];
    let support = GradedSupport {
        sums,
        lower: (lo0, lo2),
    };
    let kexpr = match match_rational_graded(&left, RationalShape::iota20(), &support, t20) {
        Ok(k) => k,
        Err(Error::Truncated(why) | Error::Inconclusive(why)) => {
            // The left series alone does not determine k; check its exact
            // coefficients against f(x0 + x2, x2) instead.
            let kexpr = shift_right(&fexpr);
            let expected = at(LEFT, iota_expand(&kexpr, RationalShape::iota20().orientation(), &w20))?
                .truncate(&w20);
            match expected.first_difference(&s20) {
                None => {
                    out.checks.push(CheckResult::pass(
                        LEFT,
                        format!("k = {kexpr}, through x1 = x0 + x2 ({why})"),
                    ));
                    out.checks.push(CheckResult::pass(
                        COASSOC,
                        "every exact coefficient of the left series expands f(x0 + x2, x2)",
                    ));
                    out.left = Some(kexpr);
                }
                Some(mono) => {
                    out.checks.push(CheckResult::inconclusive(LEFT, why));
                    out.checks.push(CheckResult::fail(
                        COASSOC,
                        Witness {
                            vector: label.to_string(),
                            multidegree: format_mono(&mono),
                            lhs: scalar::format(&s20.coeff(&mono)),
                            rhs: scalar::format(&expected.coeff(&mono)),
                        },
                    ));
                }
            }
            return Ok(());
        }
        Err(e) => return Err((LEFT, e)),
    };

    out.checks.push(CheckResult::pass(LEFT, format!("k = {kexpr}")));
    out.left = Some(kexpr.clone());

    let lin = LaurentPoly::var(x1).sub(&LaurentPoly::var(x2));
    let substituted = kexpr.substitute(x0, &lin);
    if fraction_eq(&substituted, &fexpr.as_fraction()) {
        out.checks
            .push(CheckResult::pass(COASSOC, "k(x1 - x2, x2) = f(x1, x2)"));
    } else {
        out.checks.push(CheckResult::fail(
            COASSOC,
            Witness {
                vector: label.to_string(),
                multidegree: "x0 = x1 - x2".into(),
                lhs: format!("{kexpr}"),
                rhs: format!("{fexpr}"),
            },
        ));
    }
    Ok(())
}

/// Reconstruct the correlation function of `f` against the basis vector `w`
/// of `m`.
///
/// The weak property search over `win` (with `slack`) must succeed; the
/// numerator is then rebuilt with the linear factor at the proof bound, which
/// is valid whatever the truncation, and reduced. The right kind also checks that the opposite
/// composition expands the same rational function the other way; the left
/// kind checks that substituting `x0 = x1 - x2` gives the right-kind
/// function. Every step is recorded in the report; `expr` is the requested
/// function when it could be reconstructed.
pub fn correlation(
    m: &Comodule,
    f: &Functional,
    w: Idx,
    kind: CorrelationKind,
    win: &Window,
    slack: u32,
) -> Correlation {
    let label = format!("{} against {}", m.space.label(w), format_functional(m, f));
    let mut report = Report::new(format!("{} correlation {label}", m.name), win);
    let left = kind == CorrelationKind::Left;
    let done = |report: Report, right: Option<RationalExpr>, left_expr| Correlation {
        kind,
        expr: if left { left_expr } else { right.clone() },
        right,
        report,
    };

    let cocomm = weak::weak_cocomm_k(m, f, win, slack);
    report.push(cocomm.check.clone());
    if cocomm.k.is_none() {
        return done(report, None, None);
    }
    let t12 = cocomm.bound as u32;
    let t20 = if left {
        let coassoc = weak::weak_coassoc_k(m, f, win, slack);
        report.push(coassoc.check.clone());
        match coassoc.k {
            Some(_) => Some(coassoc.bound as u32),
            None => return done(report, None, None),
        }
    } else {
        None
    };
    let mut comp = Composites::new(m, w);
    let composed = match Composed::new(&mut comp, win, left) {
        Ok(c) => c,
        Err(e) => {
            report.push(CheckResult::from_error(RIGHT, &e));
            return done(report, None, None);
        }
    };
    let pair = reconstruct(m, f, w, &composed, win, t12, t20, &label);
    for c in pair.checks {
        report.push(c);
    }
    done(report, pair.right, pair.left)
}

/// Named checks for one basis vector and the counts of skipped pairs.
type PerVector = (Vec<(&'static str, CheckResult)>, [usize; 2]);

/// Rationality, cocommutativity and coassociativity as rational-function
/// identities for every dual basis tensor with component weights at most
/// `max_weight`, against every basis vector. Linear-factor exponents are the
/// proof bounds. Pairs whose numerator needs coefficients above the top
/// weight or outside the window are counted and skipped.
pub(crate) fn rca_checks(m: &Comodule, max_weight: i64, win: &Window, slack: u32) -> Vec<CheckResult> {
    let cocomm = weak::weak_cocomm_sweep(m, max_weight, win, slack);
    let coassoc = weak::weak_coassoc_sweep(m, max_weight, win, slack);
    let mut checks = vec![cocomm.check.clone(), coassoc.check.clone()];
    if cocomm.check.status != Status::Pass || coassoc.check.status != Status::Pass {
        for name in [RIGHT, COCOMM, LEFT, COASSOC] {
            checks.push(CheckResult::inconclusive(
                name,
                "needs exponents from both weak property sweeps",
            ));
        }
        return checks;
    }
    let cap = scalar::int(max_weight);
    let in_sweep = |key: &[Idx; 3]| {
        let (p, q, s) = key_weights(m, key);
        p <= max_weight && q <= max_weight && s <= cap
    };
    let basis: Vec<Idx> = m.space.basis().collect();
    let per_w: Vec<Result<PerVector>> = basis
        .par_iter()
        .map(|&w| {
            let mut comp = Composites::new(m, w);
            let composed = Composed::new(&mut comp, win, true)?;
            let mut out = vec![];
            let mut skipped = [0, 0];
            for key in composed.keys().into_iter().filter(|k| in_sweep(k)) {
                let f = Functional::dual_basis(key);
                let t12 = weak::key_bound(m, weak::Kind::Cocomm, &key) as u32;
                let t20 = weak::key_bound(m, weak::Kind::Coassoc, &key) as u32;
                let label = format!("{} against {}", m.space.label(w), format_functional(m, &f));
                let pair = reconstruct(m, &f, w, &composed, win, t12, Some(t20), &label);
                if pair.truncated || pair.beyond_window {
                    skipped[usize::from(pair.beyond_window)] += 1;
                    continue;
                }
                for c in pair.checks {
                    let name = match c.name.as_str() {
                        RIGHT => RIGHT,
                        COCOMM => COCOMM,
                        LEFT => LEFT,
                        _ => COASSOC,
                    };
                    out.push((name, c));
                }
            }
            Ok((out, skipped))
        })
        .collect();
    let skipped = per_w
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .fold([0, 0], |acc, (_, s)| [acc[0] + s[0], acc[1] + s[1]]);
    for name in [RIGHT, COCOMM, LEFT, COASSOC] {
        let mut passed = 0;
        let mut verdict = None;
        let mut inconclusive = None;
        for r in &per_w {
            match r {
                Err(e) => {
                    if inconclusive.is_none() {
                        inconclusive = Some(CheckResult::from_error(name, e));
                    }
                }
                Ok((items, _)) => {
                    for (_, c) in items.iter().filter(|(n, _)| *n == name) {
                        match c.status {
                            Status::Pass => passed += 1,
                            Status::Fail if verdict.is_none() => verdict = Some(c.clone()),
                            Status::Inconclusive if inconclusive.is_none() => {
                                inconclusive = Some(c.clone())
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        checks.push(match (verdict, inconclusive) {
            (Some(f), _) => f,
            (None, Some(i)) => i,
            (None, None) if passed == 0 => {
                CheckResult::inconclusive(name, "no functional has a nonzero series")
            }
            (None, None) => CheckResult::pass(
                name,
                format!(
                    "{passed} functional and vector pairs; skipped {} reaching the top weight, {} needing coefficients outside the window",
                    skipped[0], skipped[1]
                ),
            ),
        });
    }
    checks
}

pub(crate) fn format_functional(m: &Comodule, f: &Functional) -> String {
    crate::graded::format_combination(f.0.iter().map(|([a, b, c], x)| {
        (
            format!(
                "({}|{}|{})'",
                m.over.space.label(*a),
                m.over.space.label(*b),
                m.space.label(*c)
            ),
            x,
        )
    }))
}

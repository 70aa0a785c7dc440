use crate::formal::{
    binom_expand, delta_expansion, format_mono, mono, mono_of, taylor_shift, LaurentPoly, LinearSign,
    VarId, Window,
};
use crate::scalar::{self, int};
use crate::Result;

use super::{CheckResult, Report, Witness};

use LinearSign::{Minus, Plus};
use VarId::{X, X0, X1, X2};

fn compare(name: &str, what: &str, lhs: Result<LaurentPoly>, rhs: Result<LaurentPoly>, w: &Window) -> CheckResult {
    let (lhs, rhs) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l.truncate(w), r.truncate(w)),
        (Err(e), _) | (_, Err(e)) => return CheckResult::from_error(name, &e),
    };
    match lhs.first_difference(&rhs) {
        None => CheckResult::pass(name, format!("{} coefficients compared", lhs.len().max(rhs.len()))),
        Some(m) => CheckResult::fail(
            name,
            Witness {
                vector: what.into(),
                multidegree: format_mono(&m),
                lhs: scalar::format(&lhs.coeff(&m)),
                rhs: scalar::format(&rhs.coeff(&m)),
            },
        ),
    }
}

/// Run several comparisons under one name; the first failure wins.
fn all(name: &str, results: Vec<CheckResult>) -> CheckResult {
    let mut compared = 0usize;
    for r in &results {
        if r.status != super::Status::Pass {
            return r.clone();
        }
        compared += r
            .detail
            .as_deref()
            .and_then(|d| d.split(' ').next())
            .and_then(|n| n.parse::<usize>().ok())
            .unwrap_or(0);
    }
    CheckResult::pass(name, format!("{compared} coefficients compared over {} cases", results.len()))
}

/// `Res_{x1} x1^k x1^{-1} δ((x2 + x0)/x1) = (x2 + x0)^k` for every `k` whose
/// residue lies in the window; `k = 0` is the normalization of the residue.
fn residue(w: &Window) -> CheckResult {
    const NAME: &str = "residue-delta";
    let Ok((lo, hi)) = w.require(X1) else {
        return CheckResult::inconclusive(NAME, "no bounds for x1");
    };
    let delta = match delta_expansion(X1, false, X2, X0, Plus, w) {
        Ok(d) => d,
        Err(e) => return CheckResult::from_error(NAME, &e),
    };
    let cases = (-hi - 1..=-lo - 1)
        .map(|k| {
            let lhs = delta.shifted(&mono(X1, k)).residue(X1);
            compare(NAME, &format!("k = {k}"), Ok(lhs), binom_expand(X2, X0, Plus, k as i64, w), w)
        })
        .collect();
    all(NAME, cases)
}

/// `x1^{-1} δ((x2 + x0)/x1) = x2^{-1} δ((x1 - x0)/x2)`.
fn substitution(w: &Window) -> CheckResult {
    compare(
        "delta-substitution",
        "delta kernels",
        delta_expansion(X1, false, X2, X0, Plus, w),
        delta_expansion(X2, false, X1, X0, Minus, w),
        w,
    )
}

/// `x0^{-1} δ((x1 - x2)/x0) - x0^{-1} δ((x2 - x1)/(-x0)) = x2^{-1} δ((x1 - x0)/x2)`.
fn three_term(w: &Window) -> CheckResult {
    let lhs = delta_expansion(X0, false, X1, X2, Minus, w)
        .and_then(|a| Ok(a.sub(&delta_expansion(X0, true, X2, X1, Minus, w)?)));
    compare("delta-jacobi", "delta kernels", lhs, delta_expansion(X2, false, X1, X0, Minus, w), w)
}

/// `∂/∂x2 x2^{-1} δ(x1/x2) = (x1 - x2)^{-2} - (-x2 + x1)^{-2}`.
fn split(w: &Window) -> CheckResult {
    const NAME: &str = "delta-derivative";
    let (Ok((lo1, hi1)), Ok(_)) = (w.require(X1), w.require(X2)) else {
        return CheckResult::inconclusive(NAME, "needs bounds for x1 and x2");
    };
    let mut delta = LaurentPoly::zero();
    for n in lo1..=hi1 {
        delta.add_term(mono_of(&[(X1, n), (X2, -n - 1)]), int(1));
    }
    let lhs = delta.derivative(X2);
    let rhs = binom_expand(X1, X2, Minus, -2, w)
        .and_then(|a| Ok(a.sub(&binom_expand(X2, X1, Minus, -2, w)?)));
    compare(NAME, "delta kernel", Ok(lhs), rhs, w)
}

/// `e^{x0 ∂/∂x} f(x) = f(x + x0)` for every monomial in the window and one
/// mixed series.
fn taylor(w: &Window) -> CheckResult {
    const NAME: &str = "taylor";
    let (Ok((lo, hi)), Ok((_, h))) = (w.require(X), w.require(X0)) else {
        return CheckResult::inconclusive(NAME, "needs bounds for x and x0");
    };
    let exp = |f: &LaurentPoly| {
        let mut out = LaurentPoly::zero();
        let mut d = f.clone();
        let mut fact = int(1);
        for j in 0..=h.max(0) {
            if j > 0 {
                d = d.derivative(X);
                fact *= int(j as i64);
            }
            out = out.add(&d.shifted(&mono(X0, j)).scaled(&(int(1) / &fact)));
        }
        out
    };
    let mut samples: Vec<(String, LaurentPoly)> = (lo..=hi)
        .map(|k| (format!("x^{k}"), LaurentPoly::monomial(mono(X, k), int(1))))
        .collect();
    let mut mixed = LaurentPoly::zero();
    mixed.add_term(mono(X, -3), scalar::ratio(1, 2));
    mixed.add_term(mono(X, 0), int(-4));
    mixed.add_term(mono(X, 2), int(3));
    samples.push(("x^-3/2 - 4 + 3x^2".into(), mixed));
    let cases = samples
        .iter()
        .map(|(label, f)| compare(NAME, label, Ok(exp(f)), taylor_shift(f, X, X0, w), w))
        .collect();
    all(NAME, cases)
}

/// The delta-function identities and Taylor's theorem, coefficientwise on
/// `win` (which must bound `x`, `x0`, `x1` and `x2`).
pub fn run_delta_suite(win: &Window) -> Report {
    let mut r = Report::new("formal calculus", win);
    r.push(residue(win));
    r.push(substitution(win));
    r.push(three_term(win));
    r.push(split(win));
    r.push(taylor(win));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::Status;

    #[test]
    fn suite_passes_on_small_windows() {
        for (lo, hi) in [(-2, 2), (-4, 3), (-6, 6)] {
            let r = run_delta_suite(&Window::cube(&VarId::ALL, lo, hi));
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn wrong_sign_is_caught() {
        let w = Window::cube(&VarId::ALL, -3, 3);
        let bad = compare(
            "delta-jacobi",
            "delta kernels",
            delta_expansion(X0, false, X1, X2, Minus, &w),
            delta_expansion(X2, false, X1, X0, Minus, &w),
            &w,
        );
        assert_eq!(bad.status, Status::Fail);
        assert!(!bad.witness.unwrap().multidegree.is_empty());
    }

    #[test]
    fn missing_bounds_are_inconclusive() {
        let w = Window::unbounded().with(X1, -2, 2);
        assert_eq!(split(&w).status, Status::Inconclusive);
        assert_eq!(taylor(&w).status, Status::Inconclusive);
    }
}

use crate::formal::{mono, mono_of, taylor_shift, LaurentPoly, VarId, Window};
use crate::graded::{transposition_t, Idx, Tensor2, Vector};
use crate::scalar;
use crate::structures::{Comodule, VertexCoalgebra};
use crate::Result;

use super::coaction::{check_comodule_counit, check_comodule_jacobi, check_comodule_truncation};
use super::{run_items, witness, CheckResult, Outcome, Report};

fn basis(c: &VertexCoalgebra) -> Vec<Idx> {
    c.space.basis().collect()
}

fn x_bounds(win: &Window, name: &str) -> std::result::Result<(i32, i32), CheckResult> {
    win.require(VarId::X)
        .map_err(|_| CheckResult::inconclusive(name, "window has no bounds for x"))
}

/// `(c ⊗ Id) Yc(x) v = v`.
pub fn check_counit(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    check_comodule_counit(&Comodule::regular(c), win)
}

/// Only finitely many `k <= -2` give a nonzero `Δ_k(v)`.
pub fn check_truncation(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    check_comodule_truncation(&Comodule::regular(c), win)
}

pub fn check_jacobi(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    check_comodule_jacobi(&Comodule::regular(c), win)
}

/// `(Id ⊗ c) Yc(x) v` has no negative powers of `x` and constant term `v`.
pub fn check_cocreation(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    const NAME: &str = "cocreation";
    let (lo, hi) = match x_bounds(win, NAME) {
        Ok(b) => b,
        Err(r) => return r,
    };
    run_items(NAME, &basis(c), |&v| {
        let mut out = Outcome::default();
        let r = c.space.int_weight(v);
        for e in lo..=hi.min(0) {
            let k = -(e as i64) - 1;
            if !c.known(r + k + 1) {
                out.skipped += 1;
                continue;
            }
            let lhs = c.id_c(&c.delta_basis(v, k)?);
            let rhs = if k == -1 { Vector::basis(v) } else { Vector::new() };
            out.compared += 1;
            if lhs != rhs {
                return Ok(Outcome::failed(witness(
                    c.space.label(v),
                    &mono(VarId::X, e),
                    c.space.format_vector(&lhs),
                    c.space.format_vector(&rhs),
                )));
            }
        }
        Ok(out)
    })
}

/// Counit, cocreation, truncation and the Jacobi identity.
pub fn run_coalgebra_suite(c: &VertexCoalgebra, win: &Window) -> Report {
    let mut r = Report::new(&c.name, win);
    r.push(check_counit(c, win));
    r.push(check_cocreation(c, win));
    r.push(check_truncation(c, win));
    r.push(check_jacobi(c, win));
    r
}

/// Keep only the keys accepted by `ok`, counting the dropped ones.
fn restrict(
    lhs: Tensor2,
    rhs: Tensor2,
    ok: impl Fn(&[Idx; 2]) -> bool,
    out: &mut Outcome,
) -> (Tensor2, Tensor2) {
    let before = lhs.len().max(rhs.len());
    let (l, r) = (lhs.filtered(&ok), rhs.filtered(&ok));
    out.skipped += before - l.len().max(r.len());
    (l, r)
}

/// Compare two tensor-valued series on the monomials of `win` over `vars`.
#[allow(clippy::too_many_arguments)]
fn compare_series(
    c: &VertexCoalgebra,
    v: Idx,
    lhs: &LaurentPoly<Tensor2>,
    rhs: &LaurentPoly<Tensor2>,
    win: &Window,
    vars: &[VarId],
    ok: impl Fn(&[i32; 4], &[Idx; 2]) -> bool,
    out: &mut Outcome,
) -> Result<bool> {
    for m in win.monomials(vars)? {
        let (l, r) = restrict(lhs.coeff(&m), rhs.coeff(&m), |k| ok(&m, k), out);
        out.compared += 1;
        if l != r {
            out.failure = Some(witness(
                c.space.label(v),
                &m,
                c.format_tensor(&l),
                c.format_tensor(&r),
            ));
            return Ok(false);
        }
    }
    Ok(true)
}

fn map_series(
    f: &LaurentPoly<Tensor2>,
    g: impl Fn(&Tensor2) -> Result<Tensor2>,
) -> Result<LaurentPoly<Tensor2>> {
    let mut out = LaurentPoly::zero();
    for (m, t) in f.terms() {
        out.add_term(*m, g(t)?);
    }
    Ok(out)
}

/// `(D* ⊗ Id) Yc(x) = d/dx Yc(x)`, with the derivative taken on the series.
fn check_dco(c: &VertexCoalgebra, lo: i32, hi: i32) -> CheckResult {
    let win = Window::unbounded().with(VarId::X, lo, hi);
    run_items("dstar-coproduct", &basis(c), |&v| {
        let mut out = Outcome::default();
        let f = c.field(&Vector::basis(v), VarId::X, &win.widened(VarId::X, 0, 1))?;
        let lhs = map_series(&f, |t| c.dstar_id(t))?;
        let rhs = f.derivative(VarId::X);
        let ok = |_: &[i32; 4], k: &[Idx; 2]| c.known(c.space.int_weight(k[0]) + 1);
        compare_series(c, v, &lhs, &rhs, &win, &[VarId::X], ok, &mut out)?;
        Ok(out)
    })
}

/// `c D* = 0`.
fn check_cd0(c: &VertexCoalgebra) -> CheckResult {
    run_items("counit-dstar", &basis(c), |&v| {
        let d = c.dstar(&Vector::basis(v))?;
        let x = c.counit(&d);
        if num_traits::Zero::is_zero(&x) {
            Ok(Outcome {
                compared: 1,
                ..Default::default()
            })
        } else {
            Ok(Outcome::failed(witness(
                c.space.label(v),
                &crate::formal::ONE,
                scalar::format(&x),
                "0".into(),
            )))
        }
    })
}

/// `(Id ⊗ c) Yc(x) v = e^{x D*} v` on nonnegative powers of `x`.
fn check_cocreat3(c: &VertexCoalgebra, lo: i32, hi: i32) -> CheckResult {
    run_items("cocreation-exp", &basis(c), |&v| {
        let mut out = Outcome::default();
        let r = c.space.int_weight(v);
        let e = c.exp_dstar(&Vector::basis(v), VarId::X)?;
        for j in lo.max(0)..=hi {
            let k = -(j as i64) - 1;
            if !c.known(r + k + 1) {
                out.skipped += 1;
                continue;
            }
            let lhs = c.id_c(&c.delta_basis(v, k)?);
            let rhs = e.coeff(&mono(VarId::X, j));
            out.compared += 1;
            if lhs != rhs {
                return Ok(Outcome::failed(witness(
                    c.space.label(v),
                    &mono(VarId::X, j),
                    c.space.format_vector(&lhs),
                    c.space.format_vector(&rhs),
                )));
            }
        }
        Ok(out)
    })
}

/// `d/dx Yc(x) = Yc(x) D* - (Id ⊗ D*) Yc(x)`.
fn check_dbracket(c: &VertexCoalgebra, lo: i32, hi: i32) -> CheckResult {
    let win = Window::unbounded().with(VarId::X, lo, hi);
    run_items("dstar-bracket", &basis(c), |&v| {
        let mut out = Outcome::default();
        let bv = Vector::basis(v);
        let f = c.field(&bv, VarId::X, &win.widened(VarId::X, 0, 1))?;
        let lhs = f.derivative(VarId::X);
        let g = c.field(&c.dstar(&bv)?, VarId::X, &win)?;
        let rhs = g.sub(&map_series(&f, |t| c.id_dstar(t))?);
        let ok = |_: &[i32; 4], k: &[Idx; 2]| c.known(c.space.int_weight(k[1]) + 1);
        compare_series(c, v, &lhs, &rhs, &win, &[VarId::X], ok, &mut out)?;
        Ok(out)
    })
}

pub(crate) fn check_dbracket_report(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    match x_bounds(win, "dstar-bracket") {
        Ok((lo, hi)) => check_dbracket(c, lo, hi),
        Err(r) => r,
    }
}

/// `(Id ⊗ e^{-x0 D*}) Yc(x) e^{x0 D*} = Yc(x + x0)`, the right side by a
/// Taylor shift of the series.
fn check_dconjugate(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    const NAME: &str = "dstar-conjugation";
    let (Ok((lo, hi)), Ok((lo0, hi0))) = (win.require(VarId::X), win.require(VarId::X0)) else {
        return CheckResult::inconclusive(NAME, "window needs bounds for x and x0");
    };
    let (lo0, hi0) = (lo0.max(0), hi0.max(0));
    let cmp = Window::unbounded()
        .with(VarId::X, lo, hi)
        .with(VarId::X0, lo0, hi0);
    run_items(NAME, &basis(c), |&v| {
        let mut out = Outcome::default();
        let bv = Vector::basis(v);
        let mut lhs = LaurentPoly::<Tensor2>::zero();
        for j in lo0..=hi0 {
            for b in 0..=j {
                let u = c.dstar_divided(&bv, b as u32)?;
                if u.is_zero() {
                    break;
                }
                for e in lo..=hi {
                    let t = c.delta(&u, -(e as i64) - 1)?;
                    let mut s = t;
                    for _ in 0..(j - b) {
                        s = c.id_dstar(&s)?;
                    }
                    let coeff = scalar::int(scalar::sign((j - b) as i64))
                        * crate::structures::inv_factorial((j - b) as u32);
                    lhs.add_term(mono_of(&[(VarId::X, e), (VarId::X0, j)]), s.scaled(&coeff));
                }
            }
        }
        let f = c.field(&bv, VarId::X, &Window::unbounded().with(VarId::X, lo, hi + hi0))?;
        let rhs = taylor_shift(&f, VarId::X, VarId::X0, &cmp)?;
        let ok = |m: &[i32; 4], k: &[Idx; 2]| {
            c.known(c.space.int_weight(k[1]) + m[VarId::X0.index()] as i64)
        };
        compare_series(c, v, &lhs, &rhs, &cmp, &[VarId::X, VarId::X0], ok, &mut out)?;
        Ok(out)
    })
}

/// The `D*` identities: coproduct derivative, `c D* = 0`, cocreation as an
/// exponential, the `D*` bracket and conjugation by `e^{x0 D*}`.
pub fn check_dstar_laws(c: &VertexCoalgebra, win: &Window) -> Report {
    let mut r = Report::new(&c.name, win);
    let (lo, hi) = match x_bounds(win, "dstar-laws") {
        Ok(b) => b,
        Err(res) => {
            r.push(res);
            return r;
        }
    };
    r.push(check_dco(c, lo, hi));
    r.push(check_cd0(c));
    r.push(check_cocreat3(c, lo, hi));
    r.push(check_dbracket(c, lo, hi));
    r.push(check_dconjugate(c, win));
    r
}

/// `Yc(-x) e^{x D*} v` on the exponents `[lo, hi]` of `x`.
fn skew_rhs(c: &VertexCoalgebra, v: &Vector, lo: i32, hi: i32) -> Result<LaurentPoly<Tensor2>> {
    let e = c.exp_dstar(v, VarId::X)?;
    let jmax = e.degree_range(VarId::X).map_or(0, |(_, h)| h);
    let mut out = LaurentPoly::zero();
    for (m, u) in e.terms() {
        let f = c
            .field(u, VarId::X, &Window::unbounded().with(VarId::X, lo - jmax, hi))?
            .negate_var(VarId::X);
        out = out.add(&f.shifted(m));
    }
    Ok(out.truncate(&Window::unbounded().with(VarId::X, lo, hi)))
}

/// `T Yc(x) = Yc(-x) e^{x D*}`.
pub fn check_skew_symmetry(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    const NAME: &str = "skew-symmetry";
    let (lo, hi) = match x_bounds(win, NAME) {
        Ok(b) => b,
        Err(r) => return r,
    };
    let xw = Window::unbounded().with(VarId::X, lo, hi);
    run_items(NAME, &basis(c), |&v| {
        let mut out = Outcome::default();
        let bv = Vector::basis(v);
        let lhs = c.field(&bv, VarId::X, &xw)?.map_coeffs(transposition_t);
        let rhs = skew_rhs(c, &bv, lo, hi)?;
        compare_series(c, v, &lhs, &rhs, &xw, &[VarId::X], |_, _| true, &mut out)?;
        Ok(out)
    })
}

/// Skew-symmetry applied twice: `Yc(x) v` equals
/// `T(Yc(-x) e^{x D*}) v` rewritten once more, i.e.
/// `Yc(-(-x)) e^{-x D*} e^{x D*} v`, which must collapse to `Yc(x) v`.
pub fn check_skew_twice(c: &VertexCoalgebra, win: &Window) -> CheckResult {
    const NAME: &str = "skew-symmetry-twice";
    let (lo, hi) = match x_bounds(win, NAME) {
        Ok(b) => b,
        Err(r) => return r,
    };
    let xw = Window::unbounded().with(VarId::X, lo, hi);
    run_items(NAME, &basis(c), |&v| {
        let mut out = Outcome::default();
        let bv = Vector::basis(v);
        // e^{-x D*} e^{x D*} v as a polynomial in x with vector coefficients.
        let e = c.exp_dstar(&bv, VarId::X)?;
        let mut back = LaurentPoly::<Vector>::zero();
        for (m, u) in e.terms() {
            let inner = c.exp_dstar(u, VarId::X)?.negate_var(VarId::X);
            back = back.add(&inner.shifted(m));
        }
        let mut rhs = LaurentPoly::<Tensor2>::zero();
        for (m, u) in back.terms() {
            let f = c.field(u, VarId::X, &Window::unbounded().with(VarId::X, lo - m[VarId::X.index()], hi))?;
            let f = f.negate_var(VarId::X).negate_var(VarId::X);
            rhs = rhs.add(&f.shifted(m));
        }
        let rhs = rhs.truncate(&xw).map_coeffs(transposition_t).map_coeffs(transposition_t);
        let lhs = c.field(&bv, VarId::X, &xw)?;
        compare_series(c, v, &lhs, &rhs, &xw, &[VarId::X], |_, _| true, &mut out)?;
        Ok(out)
    })
}

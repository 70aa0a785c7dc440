use crate::formal::{mono, VarId, Window, ONE};
use crate::graded::{Idx, Tensor2, Vector};
use crate::scalar;
use crate::structures::VocData;
use crate::Result;

use super::{run_items, witness, CheckResult, Outcome, Report};

fn basis(voc: &VocData) -> Vec<Idx> {
    voc.base.space.basis().collect()
}

/// `[L(j), L(k)] = (j - k) L(j + k) + (j^3 - j)/12 δ_{j,-k} d` for
/// `|j|, |k| <= bound`, on every basis vector whose intermediate weights are
/// represented.
fn check_bracket(voc: &VocData, bound: i64) -> CheckResult {
    const NAME: &str = "virasoro-bracket";
    let c = &voc.base;
    run_items(NAME, &basis(voc), |&v| {
        let mut out = Outcome::default();
        let bv = Vector::basis(v);
        let r = c.space.int_weight(v);
        for j in -bound..=bound {
            for k in -bound..=bound {
                if !(c.known(r - j) && c.known(r - k) && c.known(r - j - k)) {
                    out.skipped += 1;
                    continue;
                }
                let jk = voc.l_op(j, &voc.l_op(k, &bv)?)?;
                let kj = voc.l_op(k, &voc.l_op(j, &bv)?)?;
                let lhs = jk.difference(&kj);
                let mut rhs = voc.l_op(j + k, &bv)?.scaled(&scalar::int(j - k));
                if j + k == 0 {
                    let central = scalar::ratio(j * j * j - j, 12) * &voc.rank;
                    rhs.add_scaled(&bv, &central);
                }
                out.compared += 1;
                if lhs != rhs {
                    return Ok(Outcome::failed(witness(
                        &format!("[L({j}), L({k})] {}", c.space.label(v)),
                        &ONE,
                        c.space.format_vector(&lhs),
                        c.space.format_vector(&rhs),
                    )));
                }
            }
        }
        Ok(out)
    })
}

/// `L(0) v = wt(v) v`.
fn check_grading(voc: &VocData) -> CheckResult {
    const NAME: &str = "l0-grading";
    let c = &voc.base;
    run_items(NAME, &basis(voc), |&v| {
        let bv = Vector::basis(v);
        let lhs = voc.l_op(0, &bv)?;
        let rhs = bv.scaled(&scalar::int(c.space.int_weight(v)));
        if lhs != rhs {
            return Ok(Outcome::failed(witness(
                &format!("L(0) {}", c.space.label(v)),
                &ONE,
                c.space.format_vector(&lhs),
                c.space.format_vector(&rhs),
            )));
        }
        Ok(Outcome {
            compared: 1,
            ..Default::default()
        })
    })
}

fn apply_left(voc: &VocData, t: &Tensor2) -> Result<Tensor2> {
    let mut out = Tensor2::new();
    for ([a, b], x) in t.iter() {
        for (a2, y) in voc.l_op(1, &Vector::basis(*a))?.iter() {
            out.add_term([*a2, *b], x * y);
        }
    }
    Ok(out)
}

fn apply_right(voc: &VocData, t: &Tensor2) -> Result<Tensor2> {
    let mut out = Tensor2::new();
    for ([a, b], x) in t.iter() {
        for (b2, y) in voc.l_op(1, &Vector::basis(*b))?.iter() {
            out.add_term([*a, *b2], x * y);
        }
    }
    Ok(out)
}

/// `d/dx Yc(x) = (L(1) ⊗ Id) Yc(x) = Yc(x) L(1) - (Id ⊗ L(1)) Yc(x)` at
/// every exponent of `x` in the window. Tensor components whose true value
/// could involve vectors above the top weight are left out.
fn check_l1(voc: &VocData, lo: i32, hi: i32) -> [CheckResult; 2] {
    let c = &voc.base;
    let items = basis(voc);
    let run = |name: &str, left: bool| {
        run_items(name, &items, |&v| {
            let mut out = Outcome::default();
            let bv = Vector::basis(v);
            let l1v = voc.l_op(1, &bv)?;
            for e in lo..=hi {
                let k = -(e as i64) - 1;
                let deriv = c.delta(&bv, k - 1)?.scaled(&scalar::int(e as i64 + 1));
                let other = if left {
                    apply_left(voc, &c.delta(&bv, k)?)?
                } else {
                    let mut t = c.delta(&l1v, k)?;
                    t.sub_assign(&apply_right(voc, &c.delta(&bv, k)?)?);
                    t
                };
                let slot = if left { 0 } else { 1 };
                let ok = |key: &[Idx; 2]| c.known(c.space.int_weight(key[slot]) + 1);
                let before = deriv.len().max(other.len());
                let (a, b) = (deriv.filtered(ok), other.filtered(ok));
                out.skipped += before - a.len().max(b.len());
                out.compared += 1;
                if a != b {
                    return Ok(Outcome::failed(witness(
                        c.space.label(v),
                        &mono(VarId::X, e),
                        c.format_tensor(&a),
                        c.format_tensor(&b),
                    )));
                }
            }
            Ok(out)
        })
    };
    [run("l1-derivative", true), run("l1-bracket", false)]
}

/// The conformal structure of vertex operator coalgebra data: the Virasoro
/// relations for `|j|, |k| <= bound`, the `L(0)` grading and the two `L(1)`
/// laws on the exponents of `x` in the window.
pub fn check_virasoro(voc: &VocData, bound: i64, win: &Window) -> Report {
    let mut r = Report::new(&voc.base.name, win);
    r.push(check_bracket(voc, bound));
    r.push(check_grading(voc));
    match win.require(VarId::X) {
        Ok((lo, hi)) => {
            for c in check_l1(voc, lo, hi) {
                r.push(c);
            }
        }
        Err(_) => {
            r.push(CheckResult::inconclusive("l1-derivative", "window has no bounds for x"));
            r.push(CheckResult::inconclusive("l1-bracket", "window has no bounds for x"));
        }
    }
    r
}

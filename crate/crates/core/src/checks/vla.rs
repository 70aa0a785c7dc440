use crate::formal::{mono, mono_of, principal_part_eq, LaurentPoly, VarId, Window};
use crate::graded::{Idx, Vector};
use crate::scalar;
use crate::structures::VertexLieAlgebra;
use crate::{Error, Result};

use super::{run_items, witness, CheckResult, Outcome, Report};

/// `Ok(None)` when the value needs data above the top weight.
fn available<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::IncompleteData(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Largest mode `k` with `x^{-k-1}` inside the window.
fn max_mode(win: &Window, name: &str) -> std::result::Result<i64, CheckResult> {
    match win.require(VarId::X) {
        Ok((lo, _)) if lo <= -1 => Ok(-(lo as i64) - 1),
        Ok(_) => Err(CheckResult::inconclusive(name, "window has no negative powers of x")),
        Err(_) => Err(CheckResult::inconclusive(name, "window has no bounds for x")),
    }
}

fn triples(l: &VertexLieAlgebra) -> Vec<(Idx, Idx, Idx)> {
    let b: Vec<Idx> = l.space.basis().collect();
    let mut out = Vec::with_capacity(b.len().pow(3));
    for &u in &b {
        for &v in &b {
            for &w in &b {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// `u_a (v_b w)`.
fn compose(l: &VertexLieAlgebra, u: Idx, a: i64, v: Idx, b: i64, w: Idx) -> Result<Vector> {
    let inner = l.product_basis(v, b, w)?;
    l.product(&Vector::basis(u), a, &inner)
}

/// Coefficients of the half Jacobi identity applied to `w`, at
/// `x0^{-i-1} x1^{-m-1} x2^{-n-1}` for `0 <= i, m, n <= kmax`:
///
/// `Σ_j (-1)^j C(i,j) (u_{m+i-j} v_{n+j} - (-1)^i v_{n+i-j} u_{m+j}) w`
/// against `Σ_j C(m,j) (u_{i+j} v)_{m+n-j} w`. Coefficients needing data
/// above the top weight are left out of both sides.
fn half_jacobi_series(
    l: &VertexLieAlgebra,
    (u, v, w): (Idx, Idx, Idx),
    kmax: i64,
    out: &mut Outcome,
) -> Result<(LaurentPoly<Vector>, LaurentPoly<Vector>)> {
    let mut lhs = LaurentPoly::zero();
    let mut rhs = LaurentPoly::zero();
    let (x0, x1, x2) = (VarId::X0, VarId::X1, VarId::X2);
    for i in 0..=kmax {
        for m in 0..=kmax {
            'coeff: for n in 0..=kmax {
                let mut left = Vector::new();
                for j in 0..=i {
                    let c = scalar::binomial(i, j) * scalar::int(scalar::sign(j));
                    let Some(a) = available(compose(l, u, m + i - j, v, n + j, w))? else {
                        out.skipped += 1;
                        continue 'coeff;
                    };
                    let Some(b) = available(compose(l, v, n + i - j, u, m + j, w))? else {
                        out.skipped += 1;
                        continue 'coeff;
                    };
                    left.add_scaled(&a, &c);
                    left.add_scaled(&b, &(-c * scalar::int(scalar::sign(i))));
                }
                let mut right = Vector::new();
                for j in 0..=m {
                    let Some(uv) = available(l.product_basis(u, i + j, v))? else {
                        out.skipped += 1;
                        continue 'coeff;
                    };
                    let Some(x) = available(l.product(&uv, m + n - j, &Vector::basis(w)))? else {
                        out.skipped += 1;
                        continue 'coeff;
                    };
                    right.add_scaled(&x, &scalar::binomial(m, j));
                }
                out.compared += 1;
                let mono = mono_of(&[
                    (x0, -(i as i32) - 1),
                    (x1, -(m as i32) - 1),
                    (x2, -(n as i32) - 1),
                ]);
                lhs.add_term(mono, left);
                rhs.add_term(mono, right);
            }
        }
    }
    Ok((lhs, rhs))
}

/// Principal parts of both sides of the half Jacobi identity agree.
fn check_half_jacobi(l: &VertexLieAlgebra, kmax: i64) -> CheckResult {
    const NAME: &str = "half-jacobi";
    let vars = [VarId::X0, VarId::X1, VarId::X2];
    run_items(NAME, &triples(l), |&(u, v, w)| {
        let mut out = Outcome::default();
        let (lhs, rhs) = half_jacobi_series(l, (u, v, w), kmax, &mut out)?;
        if !principal_part_eq(&lhs, &rhs, &vars) {
            let m = lhs.first_difference(&rhs).expect("series differ");
            return Ok(Outcome::failed(witness(
                &format!("{}, {}, {}", l.space.label(u), l.space.label(v), l.space.label(w)),
                &m,
                l.space.format_vector(&lhs.coeff(&m)),
                l.space.format_vector(&rhs.coeff(&m)),
            )));
        }
        Ok(out)
    })
}

/// `Y(u, x) v ≃ e^{xD} Y(v, -x) u`: for `k >= 0`,
/// `u_k v = Σ_{j>=0} (-1)^{k+j+1} D^j/j! (v_{k+j} u)`.
fn check_half_skew(l: &VertexLieAlgebra, kmax: i64) -> CheckResult {
    const NAME: &str = "half-skew-symmetry";
    let b: Vec<Idx> = l.space.basis().collect();
    let pairs: Vec<(Idx, Idx)> = b.iter().flat_map(|&u| b.iter().map(move |&v| (u, v))).collect();
    run_items(NAME, &pairs, |&(u, v)| {
        let mut out = Outcome::default();
        let mut lhs = LaurentPoly::zero();
        let mut rhs = LaurentPoly::zero();
        let jmax = l.max_mode(v, u).max(0);
        'coeff: for k in 0..=kmax {
            let Some(left) = available(l.product_basis(u, k, v))? else {
                out.skipped += 1;
                continue;
            };
            let mut right = Vector::new();
            for j in 0..=jmax {
                let Some(p) = available(l.product_basis(v, k + j, u))? else {
                    out.skipped += 1;
                    continue 'coeff;
                };
                if p.is_zero() {
                    continue;
                }
                let Some(d) = available(l.d_divided(&p, j as u32))? else {
                    out.skipped += 1;
                    continue 'coeff;
                };
                right.add_scaled(&d, &scalar::int(scalar::sign(k + j + 1)));
            }
            out.compared += 1;
            let m = mono(VarId::X, -(k as i32) - 1);
            lhs.add_term(m, left);
            rhs.add_term(m, right);
        }
        if !principal_part_eq(&lhs, &rhs, &[VarId::X]) {
            let m = lhs.first_difference(&rhs).expect("series differ");
            return Ok(Outcome::failed(witness(
                &format!("{}, {}", l.space.label(u), l.space.label(v)),
                &m,
                l.space.format_vector(&lhs.coeff(&m)),
                l.space.format_vector(&rhs.coeff(&m)),
            )));
        }
        Ok(out)
    })
}

/// `[D, u_k] = (Du)_k = -k u_{k-1}`, the coefficient of `x^{-k-1}` in
/// `[D, Y(u, x)] = Y(Du, x) = d/dx Y(u, x)`.
fn check_d_bracket(l: &VertexLieAlgebra, kmax: i64) -> CheckResult {
    const NAME: &str = "d-bracket";
    let b: Vec<Idx> = l.space.basis().collect();
    let pairs: Vec<(Idx, Idx)> = b.iter().flat_map(|&u| b.iter().map(move |&w| (u, w))).collect();
    run_items(NAME, &pairs, |&(u, w)| {
        let mut out = Outcome::default();
        let bu = Vector::basis(u);
        let bw = Vector::basis(w);
        for k in 0..=kmax {
            let commutator = (|| -> Result<Vector> {
                let a = l.d(&l.product(&bu, k, &bw)?)?;
                let b = l.product(&bu, k, &l.d(&bw)?)?;
                Ok(a.difference(&b))
            })();
            let du = (|| -> Result<Vector> { l.product(&l.d(&bu)?, k, &bw) })();
            let deriv = if k == 0 {
                Ok(Vector::new())
            } else {
                l.product(&bu, k - 1, &bw).map(|v| v.scaled(&scalar::int(-k)))
            };
            let (Some(c), Some(d), Some(e)) = (available(commutator)?, available(du)?, available(deriv)?)
            else {
                out.skipped += 1;
                continue;
            };
            out.compared += 1;
            let m = mono(VarId::X, -(k as i32) - 1);
            let vec = format!("{}, {}", l.space.label(u), l.space.label(w));
            if c != d {
                return Ok(Outcome::failed(witness(
                    &format!("[D, Y] vs Y(D.) on {vec}"),
                    &m,
                    l.space.format_vector(&c),
                    l.space.format_vector(&d),
                )));
            }
            if d != e {
                return Ok(Outcome::failed(witness(
                    &format!("Y(D.) vs d/dx Y on {vec}"),
                    &m,
                    l.space.format_vector(&d),
                    l.space.format_vector(&e),
                )));
            }
        }
        Ok(out)
    })
}

/// Every stored product sits at a mode allowed by grading, so `u_k v = 0`
/// beyond the largest such mode.
fn check_vla_truncation(l: &VertexLieAlgebra) -> CheckResult {
    const NAME: &str = "truncation";
    for (&(i, k, j), v) in l.table() {
        if k > l.max_mode(i, j) {
            return CheckResult::fail(
                NAME,
                super::Witness {
                    vector: format!("{}, {}", l.space.label(i), l.space.label(j)),
                    multidegree: format!("mode {k}"),
                    lhs: l.space.format_vector(v),
                    rhs: "0".into(),
                },
            );
        }
    }
    let top = l
        .space
        .basis()
        .flat_map(|i| l.space.basis().map(move |j| l.max_mode(i, j)))
        .max()
        .unwrap_or(0);
    CheckResult::pass(NAME, format!("all modes above {top} vanish"))
}

/// Truncation, half Jacobi identity, half skew-symmetry and the `D` bracket,
/// for modes `k` with `x^{-k-1}` in the window.
pub fn check_vla_axioms(l: &VertexLieAlgebra, win: &Window) -> Report {
    let mut r = Report::new(&l.name, win);
    r.push(check_vla_truncation(l));
    let kmax = match max_mode(win, "half-jacobi") {
        Ok(k) => k,
        Err(c) => {
            r.push(c);
            return r;
        }
    };
    r.push(check_half_jacobi(l, kmax));
    r.push(check_half_skew(l, kmax));
    r.push(check_d_bracket(l, kmax));
    r
}

use std::collections::HashMap;

use crate::formal::{mono_of, VarId, Window};
use crate::graded::{Idx, Tensor2, Tensor3, Vector};
use crate::scalar::{self, Scalar};
use crate::structures::{swap12, Comodule};
use crate::Result;

use super::{run_items, weak, witness, CheckResult, Outcome, Report};

/// Memoized composites of the coaction on one basis vector `w`.
///
/// * `a(k, l) = (Id ⊗ Δ_l) Δ_k w`
/// * `b(k, l) = (T ⊗ Id)(Id ⊗ Δ_k) Δ_l w`
/// * `r(n, l) = (Δ_n ⊗ Id) Δ_l w`
pub(crate) struct Composites<'a> {
    pub m: &'a Comodule,
    pub w: Idx,
    kmin: i64,
    kmax: i64,
    delta: HashMap<i64, Tensor2>,
    a: HashMap<(i64, i64), Tensor3>,
    b: HashMap<(i64, i64), Tensor3>,
    r: HashMap<(i64, i64), Tensor3>,
}

impl<'a> Composites<'a> {
    pub fn new(m: &'a Comodule, w: Idx) -> Self {
        let (kmin, kmax) = m.k_range(w);
        Composites {
            m,
            w,
            kmin,
            kmax,
            delta: HashMap::new(),
            a: HashMap::new(),
            b: HashMap::new(),
            r: HashMap::new(),
        }
    }

    /// Lowest mode with `Δ_k w` possibly nonzero.
    pub fn kmin(&self) -> i64 {
        self.kmin
    }

    pub fn delta(&mut self, k: i64) -> Result<&Tensor2> {
        if !self.delta.contains_key(&k) {
            let t = if k < self.kmin || k > self.kmax {
                Tensor2::new()
            } else {
                self.m.coact_basis(self.w, k)?
            };
            self.delta.insert(k, t);
        }
        Ok(&self.delta[&k])
    }

    pub fn a(&mut self, k: i64, l: i64) -> Result<&Tensor3> {
        if !self.a.contains_key(&(k, l)) {
            let d = self.delta(k)?.clone();
            let t = self.m.id_coact(&d, l)?;
            self.a.insert((k, l), t);
        }
        Ok(&self.a[&(k, l)])
    }

    pub fn b(&mut self, k: i64, l: i64) -> Result<&Tensor3> {
        if !self.b.contains_key(&(k, l)) {
            let d = self.delta(l)?.clone();
            let t = swap12(&self.m.id_coact(&d, k)?);
            self.b.insert((k, l), t);
        }
        Ok(&self.b[&(k, l)])
    }

    pub fn r(&mut self, n: i64, l: i64) -> Result<&Tensor3> {
        if !self.r.contains_key(&(n, l)) {
            let d = self.delta(l)?.clone();
            let t = self.m.delta_id(&d, n)?;
            self.r.insert((n, l), t);
        }
        Ok(&self.r[&(n, l)])
    }
}

/// Weights of the three tensor factors of a key in `V ⊗ V ⊗ M`.
pub(crate) fn key_weights(m: &Comodule, key: &[Idx; 3]) -> (i64, i64, Scalar) {
    (
        m.over.space.int_weight(key[0]),
        m.over.space.int_weight(key[1]),
        m.space.weight(key[2]).clone(),
    )
}

pub(crate) fn m_known(m: &Comodule, w: Scalar) -> bool {
    m.known(&w)
}

fn truncated(m: &Comodule) -> bool {
    m.top_weight.is_some() || m.over.top_weight.is_some()
}

fn basis(m: &Comodule) -> Vec<Idx> {
    m.space.basis().collect()
}

/// `(c ⊗ Id_M) Y_M(x) w = w`, coefficientwise in `x`.
pub fn check_comodule_counit(m: &Comodule, win: &Window) -> CheckResult {
    const NAME: &str = "counit";
    let Ok((lo, hi)) = win.require(VarId::X) else {
        return CheckResult::inconclusive(NAME, "window has no bounds for x");
    };
    run_items(NAME, &basis(m), |&w| {
        let mut out = Outcome::default();
        let wt = m.space.weight(w).clone();
        for e in lo..=hi {
            let k = -(e as i64) - 1;
            if !m.known(&(&wt + scalar::int(k + 1))) {
                out.skipped += 1;
                continue;
            }
            let lhs = m.c_id(&m.coact_basis(w, k)?);
            let rhs = if k == -1 { Vector::basis(w) } else { Vector::new() };
            out.compared += 1;
            if lhs != rhs {
                return Ok(Outcome::failed(witness(
                    m.space.label(w),
                    &mono_of(&[(VarId::X, e)]),
                    m.space.format_vector(&lhs),
                    m.space.format_vector(&rhs),
                )));
            }
        }
        Ok(out)
    })
}

/// `Y_M(x) w` has finitely many positive powers of `x`: every stored mode
/// respects the grading bound and every mode in the window is available.
pub fn check_comodule_truncation(m: &Comodule, win: &Window) -> CheckResult {
    const NAME: &str = "truncation";
    let Ok((lo, hi)) = win.require(VarId::X) else {
        return CheckResult::inconclusive(NAME, "window has no bounds for x");
    };
    for ((j, k), t) in m.table() {
        let (kmin, _) = m.k_range(*j);
        if *k < kmin && !t.is_zero() {
            return CheckResult::fail(
                NAME,
                witness(
                    m.space.label(*j),
                    &mono_of(&[(VarId::X, (-k - 1) as i32)]),
                    m.format_tensor(t),
                    "0".into(),
                ),
            );
        }
    }
    let r = run_items(NAME, &basis(m), |&w| {
        let mut out = Outcome::default();
        for e in lo..=hi {
            m.coact_basis(w, -(e as i64) - 1)?;
            out.compared += 1;
        }
        Ok(out)
    });
    if r.status != super::Status::Pass {
        return r;
    }
    let lowest = m
        .space
        .basis()
        .map(|j| m.k_range(j).0)
        .min()
        .unwrap_or(0);
    CheckResult::pass(NAME, format!("Δ_k vanishes for k < {lowest}"))
}

/// The three-term Jacobi identity, coefficient of
/// `x0^{-n-1} x1^{-m-1} x2^{-l-1}`:
///
/// `Σ_i (-1)^i C(n,i) a(m+n-i, l+i) - (-1)^n Σ_i (-1)^i C(n,i) b(m+i, l+n-i)
///  = Σ_i C(m,i) r(n+i, l+m-i)`.
pub fn check_comodule_jacobi(m: &Comodule, win: &Window) -> CheckResult {
    const NAME: &str = "jacobi";
    let bounds = (
        win.require(VarId::X0),
        win.require(VarId::X1),
        win.require(VarId::X2),
    );
    let (Ok(b0), Ok(b1), Ok(b2)) = bounds else {
        return CheckResult::inconclusive(NAME, "window needs bounds for x0, x1 and x2");
    };
    let vmin = m.over.space.min_int_weight();
    let vmax = m.over.space.max_int_weight();
    let (Some(mmin), Some(mmax)) = (m.space.min_weight().cloned(), m.space.max_weight().cloned())
    else {
        return CheckResult::pass(NAME, "empty comodule");
    };
    let vtop = m.over.top_weight;
    let mtop = m.top_weight.clone();
    run_items(NAME, &basis(m), |&w| {
        let mut out = Outcome::default();
        let mut comp = Composites::new(m, w);
        let kmin = comp.kmin();
        let wt = m.space.weight(w).clone();
        let tmin = scalar::int(2 * vmin) + &mmin - &wt - scalar::int(2);
        let tmax = scalar::int(2 * vmax) + &mmax - &wt - scalar::int(2);
        let (smin, smax) = (scalar::ceil_i64(&tmin), scalar::floor_i64(&tmax));
        for e0 in b0.0..=b0.1 {
            let n = -(e0 as i64) - 1;
            if vtop.is_some_and(|t| 2 * vmin > t + n + 1) {
                continue;
            }
            for e1 in b1.0..=b1.1 {
                let mm = -(e1 as i64) - 1;
                if mtop
                    .as_ref()
                    .is_some_and(|t| scalar::int(vmin) + &mmin > t + scalar::int(mm + 1))
                {
                    continue;
                }
                for e2 in b2.0..=b2.1 {
                    let l = -(e2 as i64) - 1;
                    let s = n + mm + l;
                    if s < smin || s > smax {
                        continue;
                    }
                    if mtop
                        .as_ref()
                        .is_some_and(|t| scalar::int(vmin) + &mmin > t + scalar::int(l + 1))
                    {
                        continue;
                    }
                    let mut lhs = Tensor3::new();
                    let imax = if n >= 0 { n } else { mm + n - kmin };
                    for i in 0..=imax.max(-1) {
                        let c = scalar::int(scalar::sign(i)) * scalar::binomial(n, i);
                        lhs.add_scaled(comp.a(mm + n - i, l + i)?, &c);
                    }
                    let imax = if n >= 0 { n } else { l + n - kmin };
                    let sgn = scalar::int(-scalar::sign(n));
                    for i in 0..=imax.max(-1) {
                        let c = &sgn * scalar::int(scalar::sign(i)) * scalar::binomial(n, i);
                        lhs.add_scaled(comp.b(mm + i, l + n - i)?, &c);
                    }
                    let mut rhs = Tensor3::new();
                    let imax = if mm >= 0 { mm } else { l + mm - kmin };
                    for i in 0..=imax.max(-1) {
                        rhs.add_scaled(comp.r(n + i, l + mm - i)?, &scalar::binomial(mm, i));
                    }
                    let (lhs, rhs) = if truncated(m) {
                        let ok = |key: &[Idx; 3]| {
                            let (p, q, s) = key_weights(m, key);
                            m_known(m, scalar::int(q - l - 1) + &s)
                                && m_known(m, scalar::int(p - mm - 1) + &s)
                                && m.over.known(p + q - n - 1)
                        };
                        let before = lhs.len().max(rhs.len());
                        let (lf, rf) = (lhs.filtered(ok), rhs.filtered(ok));
                        out.skipped += before - lf.len().max(rf.len());
                        (lf, rf)
                    } else {
                        (lhs, rhs)
                    };
                    out.compared += 1;
                    if lhs != rhs {
                        return Ok(Outcome::failed(witness(
                            m.space.label(w),
                            &mono_of(&[(VarId::X0, e0), (VarId::X1, e1), (VarId::X2, e2)]),
                            m.format_tensor3(&lhs),
                            m.format_tensor3(&rhs),
                        )));
                    }
                }
            }
        }
        Ok(out)
    })
}

/// `(e^{x0 D*} ⊗ Id_M) Y_M(x2) = Y_M(x2 + x0)`: the coefficient of
/// `x2^{-k-1} x0^j` is `((D*)^j / j! ⊗ Id) Δ_k w = C(j-k-1, j) Δ_{k-j} w`.
pub fn check_mdderiv(m: &Comodule, win: &Window) -> CheckResult {
    const NAME: &str = "dstar-derivative";
    let (Ok((lo0, hi0)), Ok((lo2, hi2))) = (win.require(VarId::X0), win.require(VarId::X2)) else {
        return CheckResult::inconclusive(NAME, "window needs bounds for x0 and x2");
    };
    let v = &m.over;
    run_items(NAME, &basis(m), |&w| {
        let mut out = Outcome::default();
        for e2 in lo2..=hi2 {
            let k = -(e2 as i64) - 1;
            let d = m.coact_basis(w, k)?;
            for j in lo0.max(0)..=hi0 {
                let mut lhs = Tensor2::new();
                for ([a, b], x) in d.iter() {
                    for (c, y) in v.dstar_divided(&Vector::basis(*a), j as u32)?.iter() {
                        lhs.add_term([*c, *b], x * y);
                    }
                }
                let jj = j as i64;
                let rhs = m
                    .coact_basis(w, k - jj)?
                    .scaled(&scalar::binomial(jj - k - 1, jj));
                let ok = |key: &[Idx; 2]| v.known(v.space.int_weight(key[0]) + jj);
                let (lhs, rhs) = if v.top_weight.is_some() {
                    let before = lhs.len().max(rhs.len());
                    let (lf, rf) = (lhs.filtered(ok), rhs.filtered(ok));
                    out.skipped += before - lf.len().max(rf.len());
                    (lf, rf)
                } else {
                    (lhs, rhs)
                };
                out.compared += 1;
                if lhs != rhs {
                    return Ok(Outcome::failed(witness(
                        m.space.label(w),
                        &mono_of(&[(VarId::X0, j), (VarId::X2, e2)]),
                        m.format_tensor(&lhs),
                        m.format_tensor(&rhs),
                    )));
                }
            }
        }
        Ok(out)
    })
}

/// `⟨v' ⊗ w', Y_M(x0) w⟩ ∈ x0^{-K} F[[x0]]`: for every pair of dual basis
/// vectors the pairing has finitely many negative powers. Reports the
/// largest `K` seen in the window.
pub fn check_positive_powers(m: &Comodule, win: &Window) -> CheckResult {
    const NAME: &str = "positive-powers";
    let Ok((lo, hi)) = win.require(VarId::X0) else {
        return CheckResult::inconclusive(NAME, "window has no bounds for x0");
    };
    let results: Vec<Result<(i64, Option<super::Witness>)>> = basis(m)
        .iter()
        .map(|&w| {
            let mut lowest: HashMap<[Idx; 2], i32> = HashMap::new();
            for e in lo..=hi {
                for key in m.coact_basis(w, -(e as i64) - 1)?.keys() {
                    lowest.entry(*key).or_insert(e);
                }
            }
            let k = lowest.values().map(|e| -(*e as i64)).max().unwrap_or(0).max(0);
            Ok((k, None))
        })
        .collect();
    let mut kmax = 0;
    for r in results {
        match r {
            Ok((k, _)) => kmax = kmax.max(k),
            Err(e) => return CheckResult::from_error(NAME, &e),
        }
    }
    CheckResult::pass(NAME, format!("K = {kmax}"))
}

/// Comodule axioms together with the weak cocommutativity and weak
/// coassociativity exponents, the positive-power bound and the
/// `D*`-derivative property.
pub fn run_comodule_suite(m: &Comodule, win: &Window) -> Report {
    let mut r = Report::new(&m.name, win);
    r.push(check_comodule_counit(m, win));
    r.push(check_comodule_truncation(m, win));
    r.push(check_comodule_jacobi(m, win));
    r.push(weak::weak_cocomm_sweep(m, weak::DEFAULT_SWEEP_WEIGHT, win, weak::DEFAULT_SLACK).check);
    r.push(weak::weak_coassoc_sweep(m, weak::DEFAULT_SWEEP_WEIGHT, win, weak::DEFAULT_SLACK).check);
    r.push(check_positive_powers(m, win));
    r.push(check_mdderiv(m, win));
    r
}

use super::*;
use crate::constructions::{
    commutative, dualize, envelope, heisenberg_vla, mutant_jacobi, CentralHandling, Convention,
};
use crate::formal::{LaurentPoly, RationalExpr, RationalShape, VarId, Window};
use crate::graded::DualFunctional;
use crate::structures::{Comodule, VertexCoalgebra};

fn win(lo: i32, hi: i32) -> Window {
    Window::cube(&VarId::ALL, lo, hi)
}

fn heisenberg_dual(cutoff: i64) -> VertexCoalgebra {
    let l = heisenberg_vla(cutoff).unwrap();
    dualize(&envelope(&l, cutoff, Convention::Standard, CentralHandling::default()).unwrap()).unwrap()
}

fn functional(m: &Comodule, a: &str, b: &str, c: &str) -> Functional {
    let v = |s: &str| m.over.space.index_of(s).unwrap();
    DualFunctional::dual_basis([v(a), v(b), m.space.index_of(c).unwrap()])
}

#[test]
fn commutative_dual_correlations_are_polynomial() {
    let c = dualize(&commutative(4).unwrap()).unwrap();
    let m = Comodule::regular(&c);
    let w = win(-6, 6);
    for key in basis_functionals(&m, 2).into_iter().take(20) {
        let f = Functional::dual_basis(key);
        assert_eq!(weak_cocomm_k(&m, &f, &w, DEFAULT_SLACK).k, Some(0));
        for v in m.space.basis() {
            let c = correlation(&m, &f, v, CorrelationKind::Right, &w, DEFAULT_SLACK);
            if let Some(e) = c.expr {
                assert_eq!(e.t, 0, "{}", c.report.to_text());
            }
            assert_ne!(c.report.overall(), Status::Fail, "{}", c.report.to_text());
        }
    }
}

#[test]
fn heisenberg_pole_functional() {
    let c = heisenberg_dual(4);
    let m = Comodule::regular(&c);
    let w = win(-8, 8);
    let f = functional(&m, "a_{-1}1", "a_{-1}1", "1");
    let k = m.space.index_of("K_{-1}1").unwrap();
    assert_eq!(weak_cocomm_k(&m, &f, &w, DEFAULT_SLACK).k, Some(2));
    // a_1 a_{-1} 1 = K_{-1} 1 gives the double pole 1/(x1 - x2)^2.
    let right = correlation(&m, &f, k, CorrelationKind::Right, &w, DEFAULT_SLACK);
    let want = RationalExpr::new(LaurentPoly::one(), 0, 0, 2, RationalShape::iota12());
    assert_eq!(right.expr, Some(want), "{}", right.report.to_text());
    let left = correlation(&m, &f, k, CorrelationKind::Left, &w, DEFAULT_SLACK);
    assert!(left.report.passed(), "{}", left.report.to_text());
    let k = left.expr.unwrap();
    assert_eq!((k.g.clone(), k.r, k.s, k.t), (LaurentPoly::one(), 2, 0, 0));
}

#[test]
fn proof_bounds_follow_the_weights() {
    let c = heisenberg_dual(4);
    let m = Comodule::regular(&c);
    let f = functional(&m, "a_{-2}1", "a_{-1}1", "a_{-1}1");
    let min_v = m.over.space.min_int_weight();
    let min_m = crate::scalar::floor_i64(m.space.min_weight().unwrap());
    let wt = |s: &str| crate::scalar::floor_i64(m.space.weight(m.space.index_of(s).unwrap()));
    assert_eq!(cocomm_bound(&m, &f), (2 + 1 - min_v + 2).max(0));
    assert_eq!(coassoc_bound(&m, &f), (2 + wt("a_{-1}1") - min_m + 2).max(0));
}

#[test]
fn truncated_data_is_not_reconstructed() {
    // The weak exponent seen below the top weight is 7 where the full
    // structure needs 8; the reconstruction must not settle on a function.
    let c = heisenberg_dual(6);
    let m = Comodule::regular(&c);
    let f = functional(&m, "a_{-3}1", "a_{-5}1", "a_{-1}a_{-1}a_{-1}1");
    let v = m.space.index_of("K_{-1}a_{-1}a_{-1}a_{-1}1").unwrap();
    let r = correlation(&m, &f, v, CorrelationKind::Right, &win(-8, 8), DEFAULT_SLACK);
    assert_eq!(r.expr, None);
    assert_eq!(r.report.overall(), Status::Inconclusive, "{}", r.report.to_text());
}

#[test]
fn rca_rejects_the_jacobi_mutant() {
    let r = run_rca_suite(&mutant_jacobi().unwrap(), &win(-6, 6), 3);
    assert_ne!(r.overall(), Status::Pass, "{}", r.to_text());
}

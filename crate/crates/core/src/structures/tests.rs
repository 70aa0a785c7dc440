use super::*;
use crate::formal::{mono, VarId, Window};
use crate::graded::{DualFunctional, GradedSpace, Tensor2, Vector};
use crate::scalar::int;
use crate::Error;

fn one_dim() -> GradedSpace {
    GradedSpace::from_int_pieces(&[(0, vec!["1"])]).unwrap()
}

fn trivial_coalgebra() -> VertexCoalgebra {
    VertexCoalgebra::new(
        "trivial",
        one_dim(),
        DualFunctional::dual_basis(0),
        [((0, -1), Tensor2::basis([0, 0]))],
        None,
        None,
    )
    .unwrap()
}

#[test]
fn vacuum_products() {
    let a = VertexAlgebra::new(
        "trivial",
        one_dim(),
        Vector::basis(0),
        [((0, -1, 0), Vector::basis(0))],
        None,
        None,
    )
    .unwrap();
    let one = Vector::basis(0);
    assert_eq!(a.mode_product(&one, -1, &one).unwrap(), one);
    assert!(a.mode_product(&one, 0, &one).unwrap().is_zero());
    assert!(a.mode_product(&one, -3, &one).unwrap().is_zero());
}

#[test]
fn algebra_rejects_bad_weight() {
    let space = GradedSpace::from_int_pieces(&[(0, vec!["1"]), (1, vec!["t"])]).unwrap();
    let r = VertexAlgebra::new(
        "bad",
        space,
        Vector::basis(0),
        [((1, -1, 1), Vector::basis(1))],
        None,
        None,
    );
    match r {
        Err(Error::WeightRule { row, .. }) => assert_eq!(row, "t, -1, t"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn vacuum_must_have_weight_zero() {
    let space = GradedSpace::from_int_pieces(&[(0, vec!["1"]), (1, vec!["t"])]).unwrap();
    let r = VertexAlgebra::new("bad", space, Vector::basis(1), [], None, None);
    assert!(matches!(r, Err(Error::WeightRule { .. })));
}

#[test]
fn trivial_coproduct_and_field() {
    let c = trivial_coalgebra();
    let v = Vector::basis(0);
    assert_eq!(c.delta(&v, -1).unwrap(), Tensor2::basis([0, 0]));
    assert!(c.delta(&v, 0).unwrap().is_zero());
    assert!(c.delta(&Vector::new(), -1).unwrap().is_zero());
    assert!(c.dstar(&v).unwrap().is_zero());
    let f = c.field(&v, VarId::X, &Window::default()).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f.coeff(&mono(VarId::X, 0)), Tensor2::basis([0, 0]));
}

#[test]
fn missing_window_is_incomplete() {
    let space = GradedSpace::from_int_pieces(&[(0, vec!["1"]), (1, vec!["t"])]).unwrap();
    let c = VertexCoalgebra::new(
        "windowed",
        space,
        DualFunctional::dual_basis(0),
        [((0, -1), Tensor2::basis([0, 0]))],
        None,
        Some((-1, -1)),
    )
    .unwrap();
    // Δ_0(t) has weight 2 and may be nonzero; it is not stored.
    assert!(matches!(
        c.delta_basis(1, 0),
        Err(Error::IncompleteData(_))
    ));
    // Δ_5(t) has weight 7, above anything in V ⊗ V.
    assert!(c.delta_basis(1, 5).unwrap().is_zero());
}

#[test]
fn regular_comodule_matches_coalgebra() {
    let c = trivial_coalgebra();
    let m = Comodule::regular(&c);
    let v = Vector::basis(0);
    assert_eq!(m.coact(&v, -1).unwrap(), c.delta(&v, -1).unwrap());
    assert_eq!(m.c_id(&m.coact(&v, -1).unwrap()), v);
}

#[test]
fn comodule_rational_weights() {
    let c = trivial_coalgebra();
    let space = GradedSpace::new([(crate::scalar::ratio(1, 2), vec!["m".to_string()])]).unwrap();
    let m = Comodule::new(
        "half",
        space.clone(),
        c.clone(),
        [((0, -1), Tensor2::basis([0, 0]))],
        None,
        None,
    )
    .unwrap();
    assert_eq!(m.k_range(0), (-1, -1));
    let bad = Comodule::new("bad", space, c, [((0, 0), Tensor2::basis([0, 0]))], None, None);
    assert!(matches!(bad, Err(Error::WeightRule { .. })));
}

#[test]
fn lie_derived_product() {
    let space = GradedSpace::from_int_pieces(&[(0, vec!["K"]), (1, vec!["a"]), (2, vec!["Da"])]).unwrap();
    let (k, a, da) = (0, 1, 2);
    let l = VertexLieAlgebra::new(
        "heis",
        space,
        [(a, Vector::basis(da))],
        [((a, 1, a), Vector::basis(k))],
        Some(2),
    )
    .unwrap();
    // (Da)_2 a = -2 a_1 a = -2K
    let got = l.derived_product(&Vector::basis(a), 1, 2, &Vector::basis(a)).unwrap();
    assert_eq!(got, Vector::term(k, int(-2)));
    assert!(matches!(l.d_basis(da), Err(Error::IncompleteData(_))));
}

#[test]
fn voc_l_operator() {
    let c = trivial_coalgebra();
    let voc = VocData::new(c, int(0), DualFunctional::dual_basis(0)).unwrap();
    // ρ = c here, so L(2) = (c ⊗ Id) Δ_{-1} = Id.
    assert_eq!(voc.l_op(2, &Vector::basis(0)).unwrap(), Vector::basis(0));
    assert_eq!(voc.rho_weight(), Some(0));
}

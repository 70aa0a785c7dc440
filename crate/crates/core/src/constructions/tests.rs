use super::*;
use crate::checks::{check_vla_axioms, run_coalgebra_suite, Status};
use crate::formal::{VarId, Window};
use crate::graded::Vector;
use crate::scalar::{int, ratio};

fn win(lo: i32, hi: i32) -> Window {
    Window::cube(&VarId::ALL, lo, hi)
}

fn partitions(n: usize) -> Vec<usize> {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}

#[test]
fn commutative_product() {
    let a = commutative(4).unwrap();
    let t = Vector::basis(a.space.index_of("t").unwrap());
    let t3 = Vector::basis(a.space.index_of("t^3").unwrap());
    assert_eq!(a.mode_product(&t, -2, &t).unwrap(), t3);
}

#[test]
fn builtin_vlas_pass() {
    for l in [
        abelian_vla(5).unwrap(),
        heisenberg_vla(5).unwrap(),
        virasoro_vla(&ratio(1, 2), 5).unwrap(),
    ] {
        let r = check_vla_axioms(&l, &win(-6, 6));
        assert_eq!(r.overall(), Status::Pass, "{}", r.to_text());
    }
}

#[test]
fn quotient_reduction() {
    let l = abelian_vla(4).unwrap();
    let aff = Affinization::new(&l, Convention::Standard);
    let a = l.space.index_of("a").unwrap();
    let da = l.space.index_of("Da").unwrap();
    assert_eq!(aff.reduce(da, -3), LieVector::term((a, -4), int(3)));
}

#[test]
fn heisenberg_brackets() {
    let l = heisenberg_vla(4).unwrap();
    let aff = Affinization::new(&l, Convention::Standard);
    let a = l.space.index_of("a").unwrap();
    let k = l.space.index_of("K").unwrap();
    for m in -3..=3 {
        for n in -3..=3 {
            let want = if m + n == 0 {
                LieVector::term((k, -1), int(m))
            } else {
                LieVector::new()
            };
            assert_eq!(aff.bracket((a, m), (a, n)).unwrap(), want, "[a_{m}, a_{n}]");
        }
    }
    assert!(aff.reduce(k, 2).is_zero());
    assert!(aff.reduce(k, -3).is_zero());
}

#[test]
fn abelian_envelope_dimensions() {
    let env = Envelope::new(&abelian_vla(8).unwrap(), 8, Convention::Standard, CentralHandling::default()).unwrap();
    assert_eq!(env.dimensions(), partitions(8));
}

#[test]
fn heisenberg_envelope_pairing() {
    let env = Envelope::new(&heisenberg_vla(4).unwrap(), 4, Convention::Standard, CentralHandling::default()).unwrap();
    let l = &env.aff.lie.space;
    let a = l.index_of("a").unwrap();
    let s = env.apply(a, 1, &env.apply(a, -1, &env.vacuum()).unwrap()).unwrap();
    assert_eq!(env.format(&s), "1*K_{-1}1");
}

#[test]
fn virasoro_envelope() {
    let d = ratio(1, 2);
    let env = Envelope::new(&virasoro_vla(&d, 6).unwrap(), 6, Convention::Standard, CentralHandling::default()).unwrap();
    let r = env.check_virasoro("w", "K", &d, 4);
    assert_eq!(r.overall(), Status::Pass, "{}", r.to_text());
}

#[test]
fn envelope_duals_pass() {
    for l in [abelian_vla(6).unwrap(), heisenberg_vla(6).unwrap()] {
        let a = envelope(&l, 6, Convention::Standard, CentralHandling::default()).unwrap();
        let c = dualize(&a).unwrap();
        let r = run_coalgebra_suite(&c, &win(-6, 6));
        assert_eq!(r.overall(), Status::Pass, "{}", r.to_text());
    }
}


#[test]
fn classical_rules() {
    let b = classical_enveloping(2, 3).unwrap();
    let one = b.unit();
    let e1 = b.generator(1);
    let e2 = b.generator(2);
    assert_eq!(b.format_tensor(&b.delta(one)), "1*1|1");
    let e12 = b.multiply(e1, e2).unwrap();
    let want = crate::graded::Tensor2::from_iter([
        ([e12, one], int(1)),
        ([e1, e2], int(1)),
        ([e2, e1], int(1)),
        ([one, e12], int(1)),
    ]);
    assert_eq!(b.delta(e12), want);
    assert!(b.check().passed(), "{}", b.check().to_text());
    let sq = b.multiply(e1, e1).unwrap();
    assert_eq!(b.delta(sq).get(&[e1, e1]), int(1));
    assert_eq!(b.multiplicative_delta(sq).get(&[e1, e1]), int(2));
}

#[test]
fn trivial_coproduct() {
    let c = trivial_coalgebra();
    assert_eq!(c.delta_basis(0, -1).unwrap(), crate::graded::Tensor2::basis([0, 0]));
    assert_eq!(c.table().len(), 1);
}

#[test]
fn double_dual_is_identity() {
    let a = commutative(8).unwrap();
    let back = dualize_coalgebra(&dualize(&a).unwrap()).unwrap();
    assert_eq!(back.table(), a.table());
    assert_eq!(back.vacuum, a.vacuum);
    assert_eq!(back.space, a.space);
}

#[test]
fn default_form_matches_dual() {
    let a = commutative(4).unwrap();
    let from_form = coalgebra_from_form(&a, None).unwrap();
    let dual = dualize(&a).unwrap();
    assert_eq!(from_form.table(), dual.table());
    assert_eq!(from_form.covacuum, dual.covacuum);
}

#[test]
fn nondiagonal_form_passes() {
    let a = envelope(&abelian_vla(4).unwrap(), 4, Convention::Standard, CentralHandling::default()).unwrap();
    let piece: Vec<_> = a.space.piece_int(2).collect();
    assert_eq!(piece.len(), 2);
    let mut form = BilinearForm::identity(a.space.dim());
    form.entries.insert((piece[0], piece[0]), int(2));
    form.entries.insert((piece[0], piece[1]), int(1));
    form.entries.insert((piece[1], piece[0]), int(1));
    let c = coalgebra_from_form(&a, Some(&form)).unwrap();
    assert_ne!(c.table(), dualize(&a).unwrap().table());
    let r = run_coalgebra_suite(&c, &win(-5, 5));
    assert_eq!(r.overall(), Status::Pass, "{}", r.to_text());
}

#[test]
fn degenerate_forms_rejected() {
    let a = commutative(3).unwrap();
    let mut form = BilinearForm::identity(a.space.dim());
    form.entries.insert((1, 1), int(0));
    assert!(matches!(coalgebra_from_form(&a, Some(&form)), Err(crate::Error::DegenerateForm(_))));
    let mut form = BilinearForm::identity(a.space.dim());
    form.entries.insert((1, 2), int(1));
    assert!(matches!(coalgebra_from_form(&a, Some(&form)), Err(crate::Error::DegenerateForm(_))));
}

#[test]
fn commutative_range() {
    assert!(commutative(0).is_err());
    assert!(commutative(13).is_err());
    assert_eq!(commutative(12).unwrap().space.dim(), 13);
}

#[test]
fn mutants_fail() {
    let w = win(-5, 5);
    let r = run_coalgebra_suite(&mutant_jacobi().unwrap(), &w);
    let j = r.get("jacobi").unwrap();
    assert_eq!(j.status, Status::Fail, "{}", r.to_text());
    assert!(j.witness.is_some());
    let s = crate::checks::check_skew_symmetry(&mutant_sign().unwrap(), &w);
    assert_eq!(s.status, Status::Fail);
    let m = crate::checks::run_comodule_suite(&mutant_comodule().unwrap(), &w);
    assert_eq!(m.overall(), Status::Fail, "{}", m.to_text());
}

#[test]
fn shifted_comodule_passes() {
    let c = dualize(&commutative(4).unwrap()).unwrap();
    let m = shifted_comodule(&c, &ratio(1, 2)).unwrap();
    let r = crate::checks::run_comodule_suite(&m, &win(-5, 5));
    assert_eq!(r.overall(), Status::Pass, "{}", r.to_text());
}

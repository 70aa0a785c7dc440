use proptest::prelude::*;

use super::*;
use crate::constructions::{
    abelian_vla, commutative, dualize, envelope, heisenberg_vla, mutant_comodule, shifted_comodule,
    virasoro_vla, BilinearForm, CentralHandling, Convention,
};
use crate::graded::DualFunctional;
use crate::scalar::{int, ratio};

fn roundtrip(s: Structure) -> Structure {
    let text = write(&s);
    let back = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(write(&back), text);
    assert_eq!(back.kind(), s.kind());
    assert_eq!(back.name(), s.name());
    back
}

#[test]
fn roundtrip_algebra() {
    let a = commutative(4).unwrap();
    let Structure::Algebra { algebra, .. } = roundtrip(a.clone().into()) else {
        panic!("wrong kind")
    };
    assert_eq!(algebra.table(), a.table());
    assert_eq!(algebra.space, a.space);
    let env = envelope(&heisenberg_vla(4).unwrap(), 4, Convention::Standard, CentralHandling::default()).unwrap();
    roundtrip(env.into());
}

#[test]
fn roundtrip_coalgebra_and_comodules() {
    let c = dualize(&commutative(4).unwrap()).unwrap();
    let Structure::Coalgebra(back) = roundtrip(c.clone().into()) else {
        panic!("wrong kind")
    };
    assert_eq!(back.table(), c.table());
    roundtrip(shifted_comodule(&c, &ratio(1, 2)).unwrap().into());
    let Structure::Comodule(m) = roundtrip(mutant_comodule().unwrap().into()) else {
        panic!("wrong kind")
    };
    assert_eq!(m.over.table(), c.table());
    let voc = VocData::new(c, int(0), DualFunctional::dual_basis(0)).unwrap();
    roundtrip(voc.into());
}

#[test]
fn roundtrip_lie() {
    for l in [abelian_vla(3), heisenberg_vla(4), virasoro_vla(&ratio(1, 2), 5)] {
        let l = l.unwrap();
        let Structure::Lie(back) = roundtrip(l.clone().into()) else {
            panic!("wrong kind")
        };
        assert_eq!(back.table(), l.table());
        assert_eq!(back.derivation_table(), l.derivation_table());
    }
}

#[test]
fn roundtrip_form() {
    let a = commutative(3).unwrap();
    let mut form = BilinearForm::identity(a.space.dim());
    form.entries.insert((0, 0), ratio(-3, 2));
    let Structure::Algebra { form: back, .. } = roundtrip(Structure::Algebra {
        algebra: a,
        form: Some(form.clone()),
    }) else {
        panic!("wrong kind")
    };
    assert_eq!(back, Some(form));
}

const SMALL: &str = "\
# two-dimensional commutative example
[meta]
name = small
kind = vertex-algebra

[space]
0 : 1 : 1
1 : 1 : t

[vacuum]
1

[products]
1, -1, 1 -> 1
1, -1, t -> t   # identity
t, -1, 1 -> - 1/2*t + 3/2*t
";

#[test]
fn parses_handwritten_file() {
    let Structure::Algebra { algebra, form } = parse(SMALL).unwrap() else {
        panic!("wrong kind")
    };
    assert!(form.is_none());
    let t = algebra.space.index_of("t").unwrap();
    let one = algebra.space.index_of("1").unwrap();
    assert_eq!(algebra.product_basis(t, -1, one).unwrap().get(&t), int(1));
}

fn error_line(text: &str) -> usize {
    match parse(text) {
        Err(Error::Parse { line, .. }) => line,
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn errors_carry_line_numbers() {
    assert_eq!(error_line(&SMALL.replace("1, -1, t -> t ", "1, -1, s -> t ")), 15);
    assert_eq!(error_line(&SMALL.replace("1 : 1 : t", "1 : 2 : t")), 8);
    assert_eq!(error_line(&SMALL.replace("[vacuum]", "[vaccum]")), 10);
    assert_eq!(error_line(&SMALL.replace("-> t ", "-> t +")), 15);
    assert_eq!(error_line(&SMALL.replace("-> t ", "-> t t")), 15);
    assert_eq!(error_line(&SMALL.replace("kind = vertex-algebra", "kind = monoid")), 4);
    assert_eq!(error_line(&SMALL.replace("[products]", "[coproducts]")), 13);
    assert_eq!(error_line(&format!("{SMALL}1, -1, t -> t\n")), 17);
    assert_eq!(error_line(&format!("x = 1\n{SMALL}")), 1);
    assert!(matches!(
        parse(&SMALL.replace("[vacuum]\n1\n", "")),
        Err(Error::Parse { line: 0, .. })
    ));
}

#[test]
fn weight_errors_name_the_row() {
    let bad = SMALL.replace("1, -1, t -> t ", "1, -2, t -> t ");
    match parse(&bad) {
        Err(Error::WeightRule { row, .. }) => assert_eq!(row, "1, -2, t (line 15)"),
        other => panic!("expected a weight error, got {other:?}"),
    }
}

#[test]
fn zero_and_signs() {
    let a = SMALL.replace("- 1/2*t + 3/2*t", "0");
    let Structure::Algebra { algebra, .. } = parse(&a).unwrap() else {
        panic!("wrong kind")
    };
    assert_eq!(algebra.table().len(), 2);
    let b = SMALL.replace("- 1/2*t + 3/2*t", "-1*t - -2*t");
    let Structure::Algebra { algebra, .. } = parse(&b).unwrap() else {
        panic!("wrong kind")
    };
    let t = algebra.space.index_of("t").unwrap();
    let one = algebra.space.index_of("1").unwrap();
    assert_eq!(algebra.product_basis(t, -1, one).unwrap().get(&t), int(1));
}

proptest! {
    #[test]
    fn combination_roundtrip(coeffs in proptest::collection::vec((-20i64..20, 1i64..7), 3)) {
        let a = commutative(3).unwrap();
        let mut v = crate::graded::Vector::new();
        for (i, (p, q)) in coeffs.iter().enumerate() {
            v.add_term(i as u32, ratio(*p, *q));
        }
        let text = a.space.format_vector(&v);
        let back = parse::parse_combination(&text, 1, |l| Ok(a.space.index_of(l).unwrap())).unwrap();
        prop_assert_eq!(back, v);
    }
}

#[test]
fn functional_descriptions() {
    let m = crate::structures::Comodule::regular(&dualize(&commutative(3).unwrap()).unwrap());
    let f = parse_functional(&m, "t|t|1 - 1/2*t^2|1|t").unwrap();
    assert_eq!(f.0.len(), 2);
    assert!(parse_functional(&m, "t|t").is_err());
    assert!(parse_functional(&m, "t|t|s").is_err());
}

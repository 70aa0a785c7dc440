use std::path::{Path, PathBuf};

use vcoalg::constructions::{commutative, heisenberg_vla, mutant_jacobi, trivial_algebra};
use vcoalg::specfile::{parse, read_file, write, Structure};
use vcoalg::Error;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(name: &str) -> Structure {
    read_file(fixtures().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn every_fixture_round_trips() {
    let mut seen = 0;
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if name == "weight_violation.spec" {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let once = write(&parse(&text).unwrap_or_else(|e| panic!("{name}: {e}")));
        let twice = write(&parse(&once).unwrap());
        assert_eq!(once, twice, "{name}");
        if !text.starts_with('#') {
            assert_eq!(once, text, "{name} is not in canonical form");
        }
        seen += 1;
    }
    assert!(seen >= 9);
}

#[test]
fn commutative4_matches_builtin() {
    let Structure::Algebra { algebra, form } = read("commutative4.spec") else {
        panic!("wrong kind")
    };
    let want = commutative(4).unwrap();
    assert!(form.is_none());
    assert_eq!(algebra.space, want.space);
    assert_eq!(algebra.vacuum, want.vacuum);
    assert_eq!(algebra.table(), want.table());
}

#[test]
fn trivial_matches_builtin() {
    let Structure::Algebra { algebra, .. } = read("trivial.spec") else {
        panic!("wrong kind")
    };
    assert_eq!(algebra.table(), trivial_algebra().table());
    assert_eq!(algebra.space.dim(), 1);
}

#[test]
fn mutant_and_lie_fixtures_match_builtins() {
    let Structure::Coalgebra(c) = read("mutant_jacobi.spec") else {
        panic!("wrong kind")
    };
    assert_eq!(c.table(), mutant_jacobi().unwrap().table());
    let Structure::Lie(l) = read("heisenberg_vla.spec") else {
        panic!("wrong kind")
    };
    let want = heisenberg_vla(6).unwrap();
    assert_eq!(l.table(), want.table());
    assert_eq!(l.derivation_table(), want.derivation_table());
}

#[test]
fn weight_violation_names_the_row() {
    match read_file(fixtures().join("weight_violation.spec")) {
        Err(Error::WeightRule { row, message }) => {
            assert_eq!(row, "t, -1, t (line 25)");
            assert!(message.contains("expected 2"), "{message}");
        }
        other => panic!("expected a weight-rule error, got {other:?}"),
    }
}

//! Plain-text structure files.
//!
//! A file is a sequence of `[section]` blocks; `#` starts a comment.
//!
//! ```text
//! [meta]
//! name = commutative(2)
//! kind = vertex-algebra
//!
//! [space]
//! 0 : 1 : 1
//! 1 : 1 : t
//!
//! [vacuum]
//! 1*1
//!
//! [products]
//! 1, -1, t -> 1*t
//! ```
//!
//! Kinds and their sections:
//!
//! * `vertex-algebra`: `space`, `vacuum`, `products` (`u, n, v -> comb`),
//!   optional `form` (`u, v -> c`).
//! * `vertex-coalgebra`: `space`, `covacuum`, `coproducts`
//!   (`v, k -> c*a|b + ...`).
//! * `voc`: as `vertex-coalgebra`, plus `rho` and meta `rank`.
//! * `vertex-lie`: `space`, `derivation` (`u -> comb`), `products`.
//! * `comodule`: `space`, `coproducts` (left factor in the base),
//!   `base-space`, `base-covacuum`, `base-coproducts`, meta `over`.
//!
//! `[space]` rows read `weight : dim : label, label, ...`. Meta keys `top`
//! and `modes = lo:hi` bound the represented data; a comodule also takes
//! `over-top` and `over-modes` for its base.

mod parse;
mod write;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::constructions::BilinearForm;
use crate::structures::{Comodule, VertexAlgebra, VertexCoalgebra, VertexLieAlgebra, VocData};
use crate::{Error, Result};

pub use parse::{parse, parse_functional};
pub use write::write;

const SECTIONS: [&str; 12] = [
    "meta",
    "space",
    "vacuum",
    "covacuum",
    "products",
    "coproducts",
    "derivation",
    "form",
    "rho",
    "base-space",
    "base-covacuum",
    "base-coproducts",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    VertexAlgebra,
    VertexCoalgebra,
    VertexLie,
    Comodule,
    Voc,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::VertexAlgebra => "vertex-algebra",
            Kind::VertexCoalgebra => "vertex-coalgebra",
            Kind::VertexLie => "vertex-lie",
            Kind::Comodule => "comodule",
            Kind::Voc => "voc",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "vertex-algebra" => Kind::VertexAlgebra,
            "vertex-coalgebra" => Kind::VertexCoalgebra,
            "vertex-lie" => Kind::VertexLie,
            "comodule" => Kind::Comodule,
            "voc" => Kind::Voc,
            _ => return Err(Error::OutOfRange(format!("unknown kind `{s}`"))),
        })
    }
}

/// Any structure a file can hold.
#[derive(Clone, Debug)]
pub enum Structure {
    Algebra {
        algebra: VertexAlgebra,
        form: Option<BilinearForm>,
    },
    Coalgebra(VertexCoalgebra),
    Lie(VertexLieAlgebra),
    Comodule(Comodule),
    Voc(VocData),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Algebra { .. } => Kind::VertexAlgebra,
            Structure::Coalgebra(_) => Kind::VertexCoalgebra,
            Structure::Lie(_) => Kind::VertexLie,
            Structure::Comodule(_) => Kind::Comodule,
            Structure::Voc(_) => Kind::Voc,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Structure::Algebra { algebra, .. } => &algebra.name,
            Structure::Coalgebra(c) => &c.name,
            Structure::Lie(l) => &l.name,
            Structure::Comodule(m) => &m.name,
            Structure::Voc(v) => &v.base.name,
        }
    }
}

impl From<VertexAlgebra> for Structure {
    fn from(algebra: VertexAlgebra) -> Self {
        Structure::Algebra { algebra, form: None }
    }
}

impl From<VertexCoalgebra> for Structure {
    fn from(c: VertexCoalgebra) -> Self {
        Structure::Coalgebra(c)
    }
}

impl From<VertexLieAlgebra> for Structure {
    fn from(l: VertexLieAlgebra) -> Self {
        Structure::Lie(l)
    }
}

impl From<Comodule> for Structure {
    fn from(m: Comodule) -> Self {
        Structure::Comodule(m)
    }
}

impl From<VocData> for Structure {
    fn from(v: VocData) -> Self {
        Structure::Voc(v)
    }
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Structure> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_file(path: impl AsRef<Path>, s: &Structure) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write(s)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests;

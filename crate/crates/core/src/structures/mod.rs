//! Structure-constant tables for vertex algebras, vertex coalgebras, vertex
//! Lie algebras, comodules and vertex operator coalgebra data.

mod algebra;
mod coalgebra;
mod comodule;
mod lie;
mod voc;

pub use algebra::VertexAlgebra;
pub use coalgebra::{swap12, swap23, VertexCoalgebra};
pub(crate) use coalgebra::inv_factorial;
pub use comodule::Comodule;
pub use lie::VertexLieAlgebra;
pub use voc::VocData;

use crate::graded::{GradedSpace, Vector};
use crate::{Error, Result};

pub(crate) fn require_integral(space: &GradedSpace) -> Result<()> {
    if space.is_integral() {
        Ok(())
    } else {
        Err(Error::SpaceMismatch(
            "vertex (co)algebras need integer weights".into(),
        ))
    }
}

/// Vacuum and covacuum must be nonzero and homogeneous of weight 0.
pub(crate) fn check_vacuum_like(space: &GradedSpace, v: &Vector, what: &str) -> Result<()> {
    if !space.contains(v) {
        return Err(Error::SpaceMismatch(format!("{what} uses an unknown basis index")));
    }
    match space.homogeneous_weight(v) {
        Some(w) if num_traits::Zero::is_zero(&w) => Ok(()),
        Some(w) => Err(Error::WeightRule {
            row: what.into(),
            message: format!("{what} has weight {}, expected 0", crate::scalar::format(&w)),
        }),
        None => Err(Error::WeightRule {
            row: what.into(),
            message: format!("{what} must be a nonzero homogeneous vector"),
        }),
    }
}

#[cfg(test)]
mod tests;

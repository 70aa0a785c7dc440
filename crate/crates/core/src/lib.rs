//! Exact computer algebra for graded vertex algebras, vertex coalgebras,
//! vertex Lie algebras and comodules.
//!
//! Structures are finite tables of structure constants over the rationals.
//! Every axiom check runs coefficientwise on a bounded [`formal::Window`] and
//! reports the window it certifies.

pub mod checks;
pub mod constructions;
pub mod error;
pub mod formal;
pub mod graded;
pub mod scalar;
pub mod specfile;
pub mod structures;

pub use error::{Error, Result};
pub use scalar::Scalar;

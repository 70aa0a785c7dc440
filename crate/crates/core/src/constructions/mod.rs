//! Builders for the standard examples: graded duals, the commutative
//! examples, vertex Lie algebras and their envelopes, classical enveloping
//! bialgebras and deliberately broken mutants.

mod affine;
mod classical;
mod dual;
mod envelope;
mod examples;
mod mutants;

pub use affine::{affinize, Affinization, Convention, LieVector, Mode};
pub use classical::{classical_enveloping, BialgebraData, DeltaComparison};
pub use dual::{coalgebra_from_form, dualize, dualize_coalgebra, BilinearForm};
pub use examples::{
    abelian_vla, commutative, derived_label, heisenberg_vla, power_label, shifted_comodule,
    trivial_algebra, trivial_coalgebra, virasoro_vla, VlaBuilder,
};
pub use envelope::{envelope, CentralHandling, Envelope, State};
pub use mutants::{mutant_comodule, mutant_jacobi, mutant_sign};

#[cfg(test)]
mod tests;

use crate::graded::Tensor2;
use crate::structures::{Comodule, VertexCoalgebra};
use crate::Result;

use super::dual::dualize;
use super::examples::{commutative, power_label};

fn commutative_dual() -> Result<VertexCoalgebra> {
    dualize(&commutative(4)?)
}

/// `dual(commutative(4))` with `Δ_{-2}((t^3)')` set to zero; breaks the
/// Jacobi identity.
pub fn mutant_jacobi() -> Result<VertexCoalgebra> {
    let c = commutative_dual()?;
    let t3 = c.space.index_of(&power_label(3))?;
    let mut m = c.with_entry(t3, -2, Tensor2::new())?;
    m.name = "mutant-jacobi".into();
    Ok(m)
}

/// `dual(commutative(4))` with `Δ_{-2}((t^3)')` negated; breaks skew
/// symmetry.
pub fn mutant_sign() -> Result<VertexCoalgebra> {
    let c = commutative_dual()?;
    let t3 = c.space.index_of(&power_label(3))?;
    let negated = c.delta_basis(t3, -2)?.neg();
    let mut m = c.with_entry(t3, -2, negated)?;
    m.name = "mutant-sign".into();
    Ok(m)
}

/// `dual(commutative(4))` as a comodule over itself with `Y_M` corrupted by
/// zeroing `Δ_{-2}((t^3)')` on the module side only.
pub fn mutant_comodule() -> Result<Comodule> {
    let c = commutative_dual()?;
    let t3 = c.space.index_of(&power_label(3))?;
    let mut m = Comodule::regular(&c).with_entry(t3, -2, Tensor2::new())?;
    m.name = "mutant-comodule".into();
    Ok(m)
}

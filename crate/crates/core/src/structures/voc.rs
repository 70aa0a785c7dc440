use crate::graded::{DualFunctional, Idx, Vector};
use crate::scalar::Scalar;
use crate::{Error, Result};

use super::VertexCoalgebra;

/// Vertex operator coalgebra data: a graded vertex coalgebra with a rank and
/// a functional `ρ`, giving `(ρ ⊗ Id) Yc(x) = Σ_k L(k) x^{k-2}`.
#[derive(Clone, Debug)]
pub struct VocData {
    pub base: VertexCoalgebra,
    pub rank: Scalar,
    pub rho: DualFunctional<Idx>,
}

impl VocData {
    pub fn new(base: VertexCoalgebra, rank: Scalar, rho: DualFunctional<Idx>) -> Result<Self> {
        if !base.space.contains(&rho.0) {
            return Err(Error::SpaceMismatch("rho uses an unknown basis index".into()));
        }
        Ok(VocData { base, rank, rho })
    }

    /// `L(k) v = (ρ ⊗ Id) Δ_{1-k}(v)`.
    pub fn l_op(&self, k: i64, v: &Vector) -> Result<Vector> {
        let t = self.base.delta(v, 1 - k)?;
        let mut out = Vector::new();
        for ([a, b], x) in t.iter() {
            if let Some(r) = self.rho.0.coeff(a) {
                out.add_term(*b, x * r);
            }
        }
        Ok(out)
    }

    /// Weight of `ρ` when it is homogeneous.
    pub fn rho_weight(&self) -> Option<i64> {
        self.base
            .space
            .homogeneous_weight(&self.rho.0)
            .and_then(|w| crate::scalar::to_i64(&w))
    }
}

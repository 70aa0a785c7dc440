use std::collections::BTreeMap;

use crate::graded::{GradedSpace, Idx, Tensor2, Tensor3, Vector};
use crate::scalar::{self, Scalar};
use crate::{Error, Result};

use super::VertexCoalgebra;

/// Comodule `M` over a graded vertex coalgebra `V`, with
/// `Y_M(x) w = Σ_k Δ_k(w) x^{-k-1}` and `Δ_k(w) ∈ V ⊗ M`.
///
/// Tensor keys are `[v, m]` with `v` indexing `V` and `m` indexing `M`.
/// Weights of `M` may be rational.
#[derive(Clone, Debug)]
pub struct Comodule {
    pub name: String,
    pub space: GradedSpace,
    pub over: VertexCoalgebra,
    pub top_weight: Option<Scalar>,
    pub mode_window: Option<(i64, i64)>,
    coproducts: BTreeMap<(Idx, i64), Tensor2>,
}

impl Comodule {
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        over: VertexCoalgebra,
        coproducts: impl IntoIterator<Item = ((Idx, i64), Tensor2)>,
        top_weight: Option<Scalar>,
        mode_window: Option<(i64, i64)>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for ((j, k), t) in coproducts {
            let row = format!("{}, {}", space.label(j), k);
            if let Some((lo, hi)) = mode_window {
                if k < lo || k > hi {
                    return Err(Error::WeightRule {
                        row,
                        message: format!("mode {k} outside the declared window {lo}:{hi}"),
                    });
                }
            }
            let want = space.weight(j) + scalar::int(k + 1);
            for [a, b] in t.keys() {
                if (*a as usize) >= over.space.dim() {
                    return Err(Error::SpaceMismatch(format!("row `{row}` uses an unknown index")));
                }
                let got = scalar::int(over.space.int_weight(*a)) + space.weight(*b);
                if got != want {
                    return Err(Error::WeightRule {
                        row,
                        message: format!(
                            "term `{}|{}` has weight {}, expected {}",
                            over.space.label(*a),
                            space.label(*b),
                            scalar::format(&got),
                            scalar::format(&want)
                        ),
                    });
                }
            }
            if !t.is_zero() {
                table.insert((j, k), t);
            }
        }
        Ok(Comodule {
            name: name.into(),
            space,
            over,
            top_weight,
            mode_window,
            coproducts: table,
        })
    }

    /// A coalgebra viewed as a comodule over itself.
    pub fn regular(c: &VertexCoalgebra) -> Self {
        Comodule {
            name: c.name.clone(),
            space: c.space.clone(),
            over: c.clone(),
            top_weight: c.top_weight.map(scalar::int),
            mode_window: c.mode_window,
            coproducts: c.table().clone(),
        }
    }

    pub fn table(&self) -> &BTreeMap<(Idx, i64), Tensor2> {
        &self.coproducts
    }

    pub fn with_entry(&self, j: Idx, k: i64, t: Tensor2) -> Result<Self> {
        let mut entries = self.coproducts.clone();
        entries.insert((j, k), t);
        Self::new(
            self.name.clone(),
            self.space.clone(),
            self.over.clone(),
            entries,
            self.top_weight.clone(),
            self.mode_window,
        )
    }

    pub fn known(&self, w: &Scalar) -> bool {
        self.top_weight.as_ref().is_none_or(|t| w <= t)
    }

    /// Modes `k` for which `Δ_k(e_j)` may be nonzero, by grading alone.
    pub fn k_range(&self, j: Idx) -> (i64, i64) {
        let wj = self.space.weight(j);
        let (Some(mlo), Some(mhi)) = (self.space.min_weight(), self.space.max_weight()) else {
            return (1, 0);
        };
        let vlo = scalar::int(self.over.space.min_int_weight());
        let vhi = scalar::int(self.over.space.max_int_weight());
        let one = scalar::one();
        (
            scalar::ceil_i64(&(&vlo + mlo - wj - &one)),
            scalar::floor_i64(&(&vhi + mhi - wj - &one)),
        )
    }

    pub fn coact_basis(&self, j: Idx, k: i64) -> Result<Tensor2> {
        let (lo, hi) = self.k_range(j);
        if k < lo || k > hi {
            return Ok(Tensor2::new());
        }
        if let Some((wlo, whi)) = self.mode_window {
            if k < wlo || k > whi {
                return Err(Error::IncompleteData(format!(
                    "Δ_{k}({}) outside the stored window {wlo}:{whi}",
                    self.space.label(j)
                )));
            }
        }
        Ok(self.coproducts.get(&(j, k)).cloned().unwrap_or_default())
    }

    pub fn coact(&self, w: &Vector, k: i64) -> Result<Tensor2> {
        w.try_apply(|j| self.coact_basis(j, k))
    }

    /// `(c ⊗ Id_M) t`.
    pub fn c_id(&self, t: &Tensor2) -> Vector {
        self.over.c_id(t)
    }

    /// `(Id_V ⊗ Δ^M_l) t` for `t ∈ V ⊗ M`.
    pub fn id_coact(&self, t: &Tensor2, l: i64) -> Result<Tensor3> {
        let mut out = Tensor3::new();
        for ([a, b], x) in t.iter() {
            for ([c, d], y) in self.coact_basis(*b, l)?.iter() {
                out.add_term([*a, *c, *d], x * y);
            }
        }
        Ok(out)
    }

    /// `(Δ^V_n ⊗ Id_M) t` for `t ∈ V ⊗ M`.
    pub fn delta_id(&self, t: &Tensor2, n: i64) -> Result<Tensor3> {
        self.over.delta_id(t, n)
    }

    /// `(D* ⊗ Id_M) t`.
    pub fn dstar_id(&self, t: &Tensor2) -> Result<Tensor2> {
        self.over.dstar_id(t)
    }

    pub fn format_tensor(&self, t: &Tensor2) -> String {
        self.over.space.format_tensor2(&self.space, t)
    }

    pub fn format_tensor3(&self, t: &Tensor3) -> String {
        let v = &self.over.space;
        crate::graded::format_combination(t.iter().map(|([a, b, c], x)| {
            (
                format!("{}|{}|{}", v.label(*a), v.label(*b), self.space.label(*c)),
                x,
            )
        }))
    }
}

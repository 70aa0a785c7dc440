use std::collections::BTreeMap;

use crate::graded::linalg::invert;
use crate::graded::{DualFunctional, Idx, Tensor2, Vector};
use crate::scalar::Scalar;
use crate::structures::{VertexAlgebra, VertexCoalgebra};
use crate::{Error, Result};

/// Graded dual: `⟨Δ_k(u'), v ⊗ w⟩ = ⟨u', v_k w⟩` and the covacuum is the
/// double dual of the vacuum. The dual basis keeps the labels of the basis.
pub fn dualize(a: &VertexAlgebra) -> Result<VertexCoalgebra> {
    let mut table: BTreeMap<(Idx, i64), Tensor2> = BTreeMap::new();
    for (&(i, n, j), v) in a.table() {
        for (u, c) in v.iter() {
            table.entry((*u, n)).or_default().add_term([i, j], c.clone());
        }
    }
    VertexCoalgebra::new(
        format!("dual({})", a.name),
        a.space.dual(),
        DualFunctional(a.vacuum.clone()),
        table,
        a.top_weight,
        a.mode_window,
    )
}

/// Graded dual of a coalgebra: `⟨t', u_k w⟩ = ⟨Δ_k(t'), u ⊗ w⟩`, with the
/// vacuum the covacuum read through the double-dual identification.
pub fn dualize_coalgebra(c: &VertexCoalgebra) -> Result<VertexAlgebra> {
    let mut table: BTreeMap<(Idx, i64, Idx), Vector> = BTreeMap::new();
    for (&(t, k), tensor) in c.table() {
        for ([u, w], x) in tensor.iter() {
            table.entry((*u, k, *w)).or_default().add_term(t, x.clone());
        }
    }
    VertexAlgebra::new(
        format!("dual({})", c.name),
        c.space.dual(),
        c.covacuum.0.clone(),
        table,
        c.top_weight,
        c.mode_window,
    )
}

/// Bilinear form given by its Gram entries `(e_i, e_j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BilinearForm {
    pub entries: BTreeMap<(Idx, Idx), Scalar>,
}

impl BilinearForm {
    /// `(e_i, e_j) = δ_ij`.
    pub fn identity(dim: usize) -> Self {
        BilinearForm {
            entries: (0..dim as Idx).map(|i| ((i, i), crate::scalar::one())).collect(),
        }
    }

    pub fn get(&self, i: Idx, j: Idx) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }
}

/// Coalgebra structure on the space of `a` itself, characterized by
/// `(Yc(x) u, v ⊗ w) = (u, Y(v, x) w)` with the product form on `V ⊗ V`, and
/// covacuum `v ↦ (v, 1)`. Without a form the basis is orthonormal.
///
/// The form must be graded (distinct weights are orthogonal) and
/// nondegenerate on every weight piece.
pub fn coalgebra_from_form(a: &VertexAlgebra, form: Option<&BilinearForm>) -> Result<VertexCoalgebra> {
    let space = &a.space;
    let owned;
    let g = match form {
        Some(f) => f,
        None => {
            owned = BilinearForm::identity(space.dim());
            &owned
        }
    };
    for (&(i, j), x) in &g.entries {
        if (i as usize) >= space.dim() || (j as usize) >= space.dim() {
            return Err(Error::DegenerateForm(format!("entry ({i}, {j}) outside the space")));
        }
        if space.weight(i) != space.weight(j) && !num_traits::Zero::is_zero(x) {
            return Err(Error::DegenerateForm(format!(
                "`{}` and `{}` have different weights but pair nontrivially",
                space.label(i),
                space.label(j)
            )));
        }
    }
    // Inverse Gram matrix, piece by piece.
    let mut h: BTreeMap<(Idx, Idx), Scalar> = BTreeMap::new();
    for (w, range) in space.pieces() {
        let idx: Vec<Idx> = range.clone().collect();
        let gram: Vec<Vec<Scalar>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| g.get(i, j)).collect())
            .collect();
        let inv = invert(&gram).ok_or_else(|| {
            Error::DegenerateForm(format!(
                "Gram matrix of the weight {} piece is singular",
                crate::scalar::format(w)
            ))
        })?;
        for (r, &i) in idx.iter().enumerate() {
            for (s, &j) in idx.iter().enumerate() {
                if !num_traits::Zero::is_zero(&inv[r][s]) {
                    h.insert((i, j), inv[r][s].clone());
                }
            }
        }
    }
    let h_row = |i: Idx| -> Vec<(Idx, Scalar)> {
        h.range((i, 0)..=(i, Idx::MAX))
            .map(|(&(_, j), x)| (j, x.clone()))
            .collect()
    };
    let g_col = |c: Idx| -> Vec<(Idx, Scalar)> {
        g.entries
            .iter()
            .filter(|(&(_, j), x)| j == c && !num_traits::Zero::is_zero(*x))
            .map(|(&(u, _), x)| (u, x.clone()))
            .collect()
    };
    // R[u, k][a', b'] = (u, a'_k b').
    let mut r: BTreeMap<(Idx, i64), Tensor2> = BTreeMap::new();
    for (&(a1, k, b1), v) in a.table() {
        for (c, p) in v.iter() {
            for (u, guc) in g_col(*c) {
                r.entry((u, k)).or_default().add_term([a1, b1], guc * p);
            }
        }
    }
    // X = H^T R H.
    let mut table: BTreeMap<(Idx, i64), Tensor2> = BTreeMap::new();
    for (key, rt) in r {
        let mut x = Tensor2::new();
        for ([a1, b1], val) in rt.iter() {
            for (aa, ha) in h_row(*a1) {
                for (bb, hb) in h_row(*b1) {
                    x.add_term([aa, bb], &ha * val * &hb);
                }
            }
        }
        table.insert(key, x);
    }
    let mut covacuum = Vector::new();
    for (j, vac) in a.vacuum.iter() {
        for (v, gvj) in g_col(*j) {
            covacuum.add_term(v, gvj * vac);
        }
    }
    VertexCoalgebra::new(
        format!("form({})", a.name),
        space.clone(),
        DualFunctional(covacuum),
        table,
        a.top_weight,
        a.mode_window,
    )
}

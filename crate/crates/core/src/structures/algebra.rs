use std::collections::BTreeMap;

use crate::formal::{mono, LaurentPoly, VarId, Window};
use crate::graded::{GradedSpace, Idx, Vector};
use crate::{Error, Result};

/// Graded vertex algebra given by the products `u_n v` of basis vectors.
///
/// Products absent from the table are zero. With `top_weight = Some(T)` the
/// space is the weight `<= T` part of a larger algebra: products landing above
/// `T` are unknown rather than zero. With a `mode_window` only modes inside it
/// were supplied, and other modes are known only when grading kills them.
#[derive(Clone, Debug)]
pub struct VertexAlgebra {
    pub name: String,
    pub space: GradedSpace,
    pub vacuum: Vector,
    pub top_weight: Option<i64>,
    pub mode_window: Option<(i64, i64)>,
    products: BTreeMap<(Idx, i64, Idx), Vector>,
}

impl VertexAlgebra {
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        vacuum: Vector,
        products: impl IntoIterator<Item = ((Idx, i64, Idx), Vector)>,
        top_weight: Option<i64>,
        mode_window: Option<(i64, i64)>,
    ) -> Result<Self> {
        super::require_integral(&space)?;
        super::check_vacuum_like(&space, &vacuum, "vacuum")?;
        let mut table = BTreeMap::new();
        for ((i, n, j), v) in products {
            let row = format!("{}, {}, {}", space.label(i), n, space.label(j));
            let want = space.int_weight(i) + space.int_weight(j) - n - 1;
            if let Some(t) = top_weight {
                if want > t {
                    return Err(Error::WeightRule {
                        row,
                        message: format!("target weight {want} is above the top weight {t}"),
                    });
                }
            }
            if let Some((lo, hi)) = mode_window {
                if n < lo || n > hi {
                    return Err(Error::WeightRule {
                        row,
                        message: format!("mode {n} outside the declared window {lo}:{hi}"),
                    });
                }
            }
            for k in v.keys() {
                let got = space.int_weight(*k);
                if got != want {
                    return Err(Error::WeightRule {
                        row,
                        message: format!(
                            "term `{}` has weight {got}, expected {want}",
                            space.label(*k)
                        ),
                    });
                }
            }
            if !v.is_zero() {
                table.insert((i, n, j), v);
            }
        }
        Ok(VertexAlgebra {
            name: name.into(),
            space,
            vacuum,
            top_weight,
            mode_window,
            products: table,
        })
    }

    /// Stored nonzero structure constants.
    pub fn table(&self) -> &BTreeMap<(Idx, i64, Idx), Vector> {
        &self.products
    }

    /// Modes `n` for which `u_n v` may be nonzero, by grading alone.
    pub fn mode_range(&self, i: Idx, j: Idx) -> (i64, i64) {
        let s = self.space.int_weight(i) + self.space.int_weight(j) - 1;
        (s - self.space.max_int_weight(), s - self.space.min_int_weight())
    }

    /// `e_i` with mode `n` applied to `e_j`.
    pub fn product_basis(&self, i: Idx, n: i64, j: Idx) -> Result<Vector> {
        let p = self.space.int_weight(i) + self.space.int_weight(j) - n - 1;
        if let Some(t) = self.top_weight {
            if p > t {
                return Err(Error::IncompleteData(format!(
                    "{}_{} {} has weight {p} above the top weight {t}",
                    self.space.label(i),
                    n,
                    self.space.label(j)
                )));
            }
        }
        if self.space.piece_int(p).is_empty() {
            return Ok(Vector::new());
        }
        if let Some((lo, hi)) = self.mode_window {
            if n < lo || n > hi {
                return Err(Error::IncompleteData(format!(
                    "mode {n} outside the stored window {lo}:{hi}"
                )));
            }
        }
        Ok(self.products.get(&(i, n, j)).cloned().unwrap_or_default())
    }

    /// Bilinear extension of the structure constants.
    pub fn mode_product(&self, u: &Vector, n: i64, v: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.add_scaled(&self.product_basis(*i, n, *j)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// `Y(u, x) v` on the exponents of `x` allowed by `w`.
    pub fn field(&self, u: &Vector, v: &Vector, w: &Window) -> Result<LaurentPoly<Vector>> {
        let (lo, hi) = w.require(VarId::X)?;
        let mut out = LaurentPoly::zero();
        for e in lo..=hi {
            let n = -(e as i64) - 1;
            out.add_term(mono(VarId::X, e), self.mode_product(u, n, v)?);
        }
        Ok(out)
    }

    /// Render one table row for diagnostics.
    pub fn describe(&self, i: Idx, n: i64, j: Idx) -> String {
        format!(
            "{}_{{{}}} {} = {}",
            self.space.label(i),
            n,
            self.space.label(j),
            self.product_basis(i, n, j)
                .map(|v| self.space.format_vector(&v))
                .unwrap_or_else(|e| e.to_string())
        )
    }
}

impl PartialEq for VertexAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.vacuum == other.vacuum
            && self.top_weight == other.top_weight
            && self.products == other.products
    }
}

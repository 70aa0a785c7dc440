use std::collections::BTreeMap;

use crate::graded::{GradedSpace, Idx, Vector};
use crate::scalar;
use crate::{Error, Result};

/// Vertex Lie algebra given by the nonnegative modes `u_k v` and the
/// derivation `D` on basis vectors.
///
/// With `top_weight = Some(T)` only weights `<= T` are represented; `D` of a
/// top-weight vector and products landing above `T` are unknown.
#[derive(Clone, Debug)]
pub struct VertexLieAlgebra {
    pub name: String,
    pub space: GradedSpace,
    pub top_weight: Option<i64>,
    derivation: BTreeMap<Idx, Vector>,
    products: BTreeMap<(Idx, i64, Idx), Vector>,
}

impl VertexLieAlgebra {
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        derivation: impl IntoIterator<Item = (Idx, Vector)>,
        products: impl IntoIterator<Item = ((Idx, i64, Idx), Vector)>,
        top_weight: Option<i64>,
    ) -> Result<Self> {
        super::require_integral(&space)?;
        if space.min_int_weight() < 0 {
            return Err(Error::SpaceMismatch(
                "vertex Lie algebras need nonnegative weights".into(),
            ));
        }
        let check = |row: String, v: &Vector, want: i64| -> Result<()> {
            if let Some(t) = top_weight {
                if want > t {
                    return Err(Error::WeightRule {
                        row,
                        message: format!("target weight {want} is above the top weight {t}"),
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
            Ok(())
        };
        let mut dtable = BTreeMap::new();
        for (i, v) in derivation {
            check(format!("D {}", space.label(i)), &v, space.int_weight(i) + 1)?;
            dtable.insert(i, v);
        }
        let mut table = BTreeMap::new();
        for ((i, k, j), v) in products {
            let row = format!("{}, {}, {}", space.label(i), k, space.label(j));
            if k < 0 {
                return Err(Error::WeightRule {
                    row,
                    message: "vertex Lie algebras carry only nonnegative modes".into(),
                });
            }
            check(row, &v, space.int_weight(i) + space.int_weight(j) - k - 1)?;
            if !v.is_zero() {
                table.insert((i, k, j), v);
            }
        }
        Ok(VertexLieAlgebra {
            name: name.into(),
            space,
            top_weight,
            derivation: dtable,
            products: table,
        })
    }

    pub fn table(&self) -> &BTreeMap<(Idx, i64, Idx), Vector> {
        &self.products
    }

    pub fn derivation_table(&self) -> &BTreeMap<Idx, Vector> {
        &self.derivation
    }

    fn known(&self, w: i64) -> bool {
        self.top_weight.is_none_or(|t| w <= t)
    }

    pub fn d_basis(&self, i: Idx) -> Result<Vector> {
        let w = self.space.int_weight(i) + 1;
        if !self.known(w) {
            return Err(Error::IncompleteData(format!(
                "D {} lies above the top weight",
                self.space.label(i)
            )));
        }
        Ok(self.derivation.get(&i).cloned().unwrap_or_default())
    }

    pub fn d(&self, v: &Vector) -> Result<Vector> {
        v.try_apply(|i| self.d_basis(i))
    }

    /// `D^j v / j!`.
    pub fn d_divided(&self, v: &Vector, j: u32) -> Result<Vector> {
        let mut out = v.clone();
        for _ in 0..j {
            out = self.d(&out)?;
        }
        Ok(out.scaled(&super::inv_factorial(j)))
    }

    /// Largest mode that can be nonzero on `e_i, e_j`.
    pub fn max_mode(&self, i: Idx, j: Idx) -> i64 {
        self.space.int_weight(i) + self.space.int_weight(j) - 1 - self.space.min_int_weight()
    }

    pub fn product_basis(&self, i: Idx, k: i64, j: Idx) -> Result<Vector> {
        if k < 0 {
            return Err(Error::OutOfRange(format!("mode {k} is negative")));
        }
        let p = self.space.int_weight(i) + self.space.int_weight(j) - k - 1;
        if p < self.space.min_int_weight() {
            return Ok(Vector::new());
        }
        if !self.known(p) {
            return Err(Error::IncompleteData(format!(
                "{}_{} {} lies above the top weight",
                self.space.label(i),
                k,
                self.space.label(j)
            )));
        }
        Ok(self.products.get(&(i, k, j)).cloned().unwrap_or_default())
    }

    pub fn product(&self, u: &Vector, k: i64, v: &Vector) -> Result<Vector> {
        let mut out = Vector::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.add_scaled(&self.product_basis(*i, k, *j)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// `(D^i u)_k v = (-1)^i i! C(k, i) u_{k-i} v`, zero when `k < i`.
    pub fn derived_product(&self, u: &Vector, i: u32, k: i64, v: &Vector) -> Result<Vector> {
        if k < i as i64 {
            return Ok(Vector::new());
        }
        let c = scalar::int(scalar::sign(i as i64))
            * scalar::Scalar::from_integer(scalar::factorial(i))
            * scalar::binomial(k, i as i64);
        Ok(self.product(u, k - i as i64, v)?.scaled(&c))
    }
}

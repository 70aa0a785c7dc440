use std::collections::BTreeMap;

use crate::formal::{mono, LaurentPoly, VarId, Window};
use crate::graded::{DualFunctional, GradedSpace, Idx, Tensor2, Tensor3, Vector};
use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Graded vertex coalgebra given by `Δ_k(v)` on basis vectors, where
/// `Yc(x) v = Σ_k Δ_k(v) x^{-k-1}`.
///
/// With `top_weight = Some(W)` the space is the weight `<= W` part of a larger
/// coalgebra and `Δ_k(v)` stores only the components in
/// `V_(<=W) ⊗ V_(<=W)`; checkers restrict to coefficients that do not depend
/// on anything above `W`.
#[derive(Clone, Debug)]
pub struct VertexCoalgebra {
    pub name: String,
    pub space: GradedSpace,
    pub covacuum: DualFunctional<Idx>,
    pub top_weight: Option<i64>,
    pub mode_window: Option<(i64, i64)>,
    coproducts: BTreeMap<(Idx, i64), Tensor2>,
}

impl VertexCoalgebra {
    pub fn new(
        name: impl Into<String>,
        space: GradedSpace,
        covacuum: DualFunctional<Idx>,
        coproducts: impl IntoIterator<Item = ((Idx, i64), Tensor2)>,
        top_weight: Option<i64>,
        mode_window: Option<(i64, i64)>,
    ) -> Result<Self> {
        super::require_integral(&space)?;
        super::check_vacuum_like(&space, &covacuum.0, "covacuum")?;
        let mut table = BTreeMap::new();
        for ((i, k), t) in coproducts {
            let row = format!("{}, {}", space.label(i), k);
            let want = space.int_weight(i) + k + 1;
            if let Some((lo, hi)) = mode_window {
                if k < lo || k > hi {
                    return Err(Error::WeightRule {
                        row,
                        message: format!("mode {k} outside the declared window {lo}:{hi}"),
                    });
                }
            }
            for [a, b] in t.keys() {
                let got = space.int_weight(*a) + space.int_weight(*b);
                if got != want {
                    return Err(Error::WeightRule {
                        row,
                        message: format!(
                            "term `{}|{}` has weight {got}, expected {want}",
                            space.label(*a),
                            space.label(*b)
                        ),
                    });
                }
            }
            if !t.is_zero() {
                table.insert((i, k), t);
            }
        }
        Ok(VertexCoalgebra {
            name: name.into(),
            space,
            covacuum,
            top_weight,
            mode_window,
            coproducts: table,
        })
    }

    pub fn table(&self) -> &BTreeMap<(Idx, i64), Tensor2> {
        &self.coproducts
    }

    /// Copy with a replaced table entry; used to build mutants.
    pub fn with_entry(&self, i: Idx, k: i64, t: Tensor2) -> Result<Self> {
        let mut entries = self.coproducts.clone();
        entries.insert((i, k), t);
        Self::new(
            self.name.clone(),
            self.space.clone(),
            self.covacuum.clone(),
            entries,
            self.top_weight,
            self.mode_window,
        )
    }

    /// True when weight `w` lies in the represented part of the space.
    pub fn known(&self, w: i64) -> bool {
        self.top_weight.is_none_or(|t| w <= t)
    }

    /// Modes `k` for which `Δ_k(e_i)` may be nonzero, by grading alone.
    pub fn k_range(&self, i: Idx) -> (i64, i64) {
        let r = self.space.int_weight(i);
        (
            2 * self.space.min_int_weight() - r - 1,
            2 * self.space.max_int_weight() - r - 1,
        )
    }

    pub fn delta_basis(&self, i: Idx, k: i64) -> Result<Tensor2> {
        let (lo, hi) = self.k_range(i);
        if k < lo || k > hi {
            return Ok(Tensor2::new());
        }
        if let Some((wlo, whi)) = self.mode_window {
            if k < wlo || k > whi {
                return Err(Error::IncompleteData(format!(
                    "Δ_{k}({}) outside the stored window {wlo}:{whi}",
                    self.space.label(i)
                )));
            }
        }
        Ok(self.coproducts.get(&(i, k)).cloned().unwrap_or_default())
    }

    pub fn delta(&self, v: &Vector, k: i64) -> Result<Tensor2> {
        v.try_apply(|i| self.delta_basis(i, k))
    }

    /// `c(v)`.
    pub fn counit(&self, v: &Vector) -> Scalar {
        self.covacuum.pair(v)
    }

    /// `(Id ⊗ c) t`.
    pub fn id_c(&self, t: &Tensor2) -> Vector {
        let mut out = Vector::new();
        for ([a, b], x) in t.iter() {
            if let Some(c) = self.covacuum.0.coeff(b) {
                out.add_term(*a, x * c);
            }
        }
        out
    }

    /// `(c ⊗ Id) t`.
    pub fn c_id(&self, t: &Tensor2) -> Vector {
        let mut out = Vector::new();
        for ([a, b], x) in t.iter() {
            if let Some(c) = self.covacuum.0.coeff(a) {
                out.add_term(*b, x * c);
            }
        }
        out
    }

    /// `D* = (Id ⊗ c) Δ_{-2}`, a weight `-1` operator.
    pub fn dstar(&self, v: &Vector) -> Result<Vector> {
        Ok(self.id_c(&self.delta(v, -2)?))
    }

    /// `(D*)^j v / j!`.
    pub fn dstar_divided(&self, v: &Vector, j: u32) -> Result<Vector> {
        let mut out = v.clone();
        for _ in 0..j {
            out = self.dstar(&out)?;
        }
        Ok(out.scaled(&inv_factorial(j)))
    }

    /// `e^{h D*} v`. The sum is finite because `D*` lowers weight.
    pub fn exp_dstar(&self, v: &Vector, h: VarId) -> Result<LaurentPoly<Vector>> {
        let mut out = LaurentPoly::zero();
        let mut cur = v.clone();
        let mut j = 0u32;
        while !cur.is_zero() {
            out.add_term(mono(h, j as i32), cur.scaled(&inv_factorial(j)));
            cur = self.dstar(&cur)?;
            j += 1;
        }
        Ok(out)
    }

    /// `Yc(x) v` on the exponents of `var` allowed by `w`.
    pub fn field(&self, v: &Vector, var: VarId, w: &Window) -> Result<LaurentPoly<Tensor2>> {
        let (lo, hi) = w.require(var)?;
        let mut out = LaurentPoly::zero();
        for e in lo..=hi {
            let k = -(e as i64) - 1;
            out.add_term(mono(var, e), self.delta(v, k)?);
        }
        Ok(out)
    }

    /// `(Id ⊗ Δ_l) t`.
    pub fn id_delta(&self, t: &Tensor2, l: i64) -> Result<Tensor3> {
        let mut out = Tensor3::new();
        for ([a, b], x) in t.iter() {
            for ([c, d], y) in self.delta_basis(*b, l)?.iter() {
                out.add_term([*a, *c, *d], x * y);
            }
        }
        Ok(out)
    }

    /// `(Δ_n ⊗ Id) t`.
    pub fn delta_id(&self, t: &Tensor2, n: i64) -> Result<Tensor3> {
        let mut out = Tensor3::new();
        for ([a, b], x) in t.iter() {
            for ([c, d], y) in self.delta_basis(*a, n)?.iter() {
                out.add_term([*c, *d, *b], x * y);
            }
        }
        Ok(out)
    }

    /// `(D* ⊗ Id) t`.
    pub fn dstar_id(&self, t: &Tensor2) -> Result<Tensor2> {
        let mut out = Tensor2::new();
        for ([a, b], x) in t.iter() {
            for (c, y) in self.dstar(&Vector::basis(*a))?.iter() {
                out.add_term([*c, *b], x * y);
            }
        }
        Ok(out)
    }

    /// `(Id ⊗ D*) t`.
    pub fn id_dstar(&self, t: &Tensor2) -> Result<Tensor2> {
        let mut out = Tensor2::new();
        for ([a, b], x) in t.iter() {
            for (c, y) in self.dstar(&Vector::basis(*b))?.iter() {
                out.add_term([*a, *c], x * y);
            }
        }
        Ok(out)
    }

    pub fn format_tensor(&self, t: &Tensor2) -> String {
        self.space.format_tensor2(&self.space, t)
    }

    pub fn format_tensor3(&self, t: &Tensor3) -> String {
        crate::graded::format_combination(t.iter().map(|([a, b, c], x)| {
            (
                format!(
                    "{}|{}|{}",
                    self.space.label(*a),
                    self.space.label(*b),
                    self.space.label(*c)
                ),
                x,
            )
        }))
    }
}

impl PartialEq for VertexCoalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self.covacuum == other.covacuum
            && self.top_weight == other.top_weight
            && self.coproducts == other.coproducts
    }
}

/// `(T ⊗ Id)` on a three-fold tensor.
pub fn swap12(t: &Tensor3) -> Tensor3 {
    t.map_keys(|[a, b, c]| [b, a, c])
}

/// `(Id ⊗ T)` on a three-fold tensor.
pub fn swap23(t: &Tensor3) -> Tensor3 {
    t.map_keys(|[a, b, c]| [a, c, b])
}

pub(crate) fn inv_factorial(j: u32) -> Scalar {
    scalar::one() / Scalar::from_integer(scalar::factorial(j))
}

//! Weight-graded vector spaces with finite-dimensional pieces, their graded
//! duals, tensor products and homogeneous linear maps.

pub(crate) mod linalg;
mod sparse;

pub use sparse::{tensor, DualFunctional, Idx, Sparse, Tensor2, Tensor3, Vector};

use std::collections::HashMap;
use std::ops::Range;

use num_traits::Zero;

use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// A graded space with labelled basis. Basis indices are weight-major:
/// pieces are stored in increasing weight, labels sorted within each piece.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedSpace {
    labels: Vec<String>,
    weights: Vec<Scalar>,
    pieces: Vec<(Scalar, Range<Idx>)>,
    index: HashMap<String, Idx>,
}

impl std::fmt::Debug for GradedSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for (w, r) in &self.pieces {
            m.entry(&scalar::format(w), &&self.labels[r.start as usize..r.end as usize]);
        }
        m.finish()
    }
}

impl GradedSpace {
    /// Build from `(weight, labels)` pieces in any order. Pieces with the same
    /// weight are merged; labels must be unique.
    pub fn new(pieces: impl IntoIterator<Item = (Scalar, Vec<String>)>) -> Result<Self> {
        let mut by_weight: std::collections::BTreeMap<Scalar, Vec<String>> = Default::default();
        for (w, ls) in pieces {
            by_weight.entry(w).or_default().extend(ls);
        }
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        let mut out_pieces = Vec::new();
        let mut index = HashMap::new();
        for (w, mut ls) in by_weight {
            if ls.is_empty() {
                continue;
            }
            ls.sort();
            let start = labels.len() as Idx;
            for l in ls {
                if index.insert(l.clone(), labels.len() as Idx).is_some() {
                    return Err(Error::SpaceMismatch(format!("duplicate basis label `{l}`")));
                }
                labels.push(l);
                weights.push(w.clone());
            }
            out_pieces.push((w, start..labels.len() as Idx));
        }
        Ok(GradedSpace {
            labels,
            weights,
            pieces: out_pieces,
            index,
        })
    }

    /// Integer-weighted space from `(weight, labels)` pairs.
    pub fn from_int_pieces(pieces: &[(i64, Vec<&str>)]) -> Result<Self> {
        Self::new(pieces.iter().map(|(w, ls)| {
            (scalar::int(*w), ls.iter().map(|s| s.to_string()).collect())
        }))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: Idx) -> &str {
        &self.labels[i as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<Idx> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn weight(&self, i: Idx) -> &Scalar {
        &self.weights[i as usize]
    }

    /// Weight of a basis vector of an integer-graded space.
    pub fn int_weight(&self, i: Idx) -> i64 {
        scalar::to_i64(&self.weights[i as usize]).expect("integer weight expected")
    }

    pub fn is_integral(&self) -> bool {
        self.weights.iter().all(|w| w.is_integer())
    }

    /// Smallest weight present, `None` for the zero space.
    pub fn min_weight(&self) -> Option<&Scalar> {
        self.pieces.first().map(|(w, _)| w)
    }

    pub fn max_weight(&self) -> Option<&Scalar> {
        self.pieces.last().map(|(w, _)| w)
    }

    pub fn min_int_weight(&self) -> i64 {
        self.min_weight().map_or(0, scalar::floor_i64)
    }

    pub fn max_int_weight(&self) -> i64 {
        self.max_weight().map_or(-1, scalar::ceil_i64)
    }

    /// Weight pieces in increasing weight.
    pub fn pieces(&self) -> &[(Scalar, Range<Idx>)] {
        &self.pieces
    }

    /// Indices of the weight-`w` piece (empty if absent).
    pub fn piece(&self, w: &Scalar) -> Range<Idx> {
        match self.pieces.binary_search_by(|(pw, _)| pw.cmp(w)) {
            Ok(i) => self.pieces[i].1.clone(),
            Err(_) => 0..0,
        }
    }

    pub fn piece_int(&self, w: i64) -> Range<Idx> {
        self.piece(&scalar::int(w))
    }

    pub fn piece_dim(&self, w: &Scalar) -> usize {
        self.piece(w).len()
    }

    pub fn basis(&self) -> Range<Idx> {
        0..self.dim() as Idx
    }

    /// Weight of a homogeneous nonzero vector; `None` if zero or mixed.
    pub fn homogeneous_weight(&self, v: &Vector) -> Option<Scalar> {
        let mut it = v.keys().map(|i| self.weight(*i));
        let first = it.next()?.clone();
        it.all(|w| *w == first).then_some(first)
    }

    /// Component of `v` of weight `w`.
    pub fn homogeneous_part(&self, v: &Vector, w: &Scalar) -> Vector {
        v.filtered(|i| self.weight(*i) == w)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.keys().all(|i| (*i as usize) < self.dim())
    }

    /// Render a vector as `c*label + ...`.
    pub fn format_vector(&self, v: &Vector) -> String {
        format_combination(v.iter().map(|(i, c)| (self.label(*i).to_string(), c)))
    }

    pub fn format_tensor2(&self, right: &GradedSpace, t: &Tensor2) -> String {
        format_combination(
            t.iter()
                .map(|([i, j], c)| (format!("{}|{}", self.label(*i), right.label(*j)), c)),
        )
    }

    /// Dual space: same labels, read as the dual basis, same grading.
    pub fn dual(&self) -> GradedSpace {
        self.clone()
    }
}

pub(crate) fn format_combination<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>) -> String {
    let parts: Vec<String> = terms
        .map(|(l, c)| format!("{}*{}", scalar::format(c), l))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Tensor product of two or three graded spaces. Basis tuples are ordered
/// lexicographically; a tuple's weight is the sum of its factor weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub factors: Vec<GradedSpace>,
}

impl TensorSpace {
    pub fn new(factors: Vec<GradedSpace>) -> Result<Self> {
        if !(2..=3).contains(&factors.len()) {
            return Err(Error::SpaceMismatch(format!(
                "tensor spaces have 2 or 3 factors, got {}",
                factors.len()
            )));
        }
        Ok(TensorSpace { factors })
    }

    pub fn weight(&self, tuple: &[Idx]) -> Scalar {
        tuple
            .iter()
            .zip(&self.factors)
            .map(|(i, s)| s.weight(*i).clone())
            .fold(Scalar::zero(), |a, b| a + b)
    }

    /// All basis tuples in lexicographic order.
    pub fn basis(&self) -> Vec<Vec<Idx>> {
        let mut out = vec![vec![]];
        for f in &self.factors {
            out = out
                .into_iter()
                .flat_map(|t| {
                    f.basis().map(move |i| {
                        let mut t2 = t.clone();
                        t2.push(i);
                        t2
                    })
                })
                .collect();
        }
        out
    }

    /// Pair `⟨f, t⟩` on a two-fold tensor, checking that the tuples fit.
    pub fn pair2(&self, f: &DualFunctional<[Idx; 2]>, t: &Tensor2) -> Result<Scalar> {
        if self.factors.len() != 2 {
            return Err(Error::SpaceMismatch("expected a 2-fold tensor space".into()));
        }
        for [i, j] in f.0.keys().chain(t.keys()) {
            if *i as usize >= self.factors[0].dim() || *j as usize >= self.factors[1].dim() {
                return Err(Error::SpaceMismatch(format!("tuple ({i},{j}) out of range")));
            }
        }
        Ok(f.pair(t))
    }

    /// `T(u ⊗ v) = v ⊗ u`; both factors must agree.
    pub fn transposition(&self, t: &Tensor2) -> Result<Tensor2> {
        if self.factors.len() != 2 || self.factors[0] != self.factors[1] {
            return Err(Error::SpaceMismatch(
                "transposition needs two equal factors".into(),
            ));
        }
        Ok(transposition_t(t))
    }
}

/// Swap tensor factors. Unchecked; see [`TensorSpace::transposition`].
pub fn transposition_t(t: &Tensor2) -> Tensor2 {
    t.map_keys(|[i, j]| [j, i])
}

/// Pair a functional against a vector of the same space.
pub fn pair(space: &GradedSpace, f: &DualFunctional<Idx>, v: &Vector) -> Result<Scalar> {
    if !space.contains(&f.0) || !space.contains(v) {
        return Err(Error::SpaceMismatch("index outside the space".into()));
    }
    Ok(f.pair(v))
}

/// Homogeneous linear map given by the image of every basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub domain: GradedSpace,
    pub codomain: GradedSpace,
    pub weight_shift: Scalar,
    columns: Vec<Vector>,
}

impl GradedMap {
    /// Build and check that every column has the declared weight.
    pub fn new(
        domain: GradedSpace,
        codomain: GradedSpace,
        weight_shift: Scalar,
        columns: Vec<Vector>,
    ) -> Result<Self> {
        if columns.len() != domain.dim() {
            return Err(Error::SpaceMismatch(format!(
                "{} columns for a {}-dimensional domain",
                columns.len(),
                domain.dim()
            )));
        }
        for (i, col) in columns.iter().enumerate() {
            let want = domain.weight(i as Idx) + &weight_shift;
            for k in col.keys() {
                if *k as usize >= codomain.dim() {
                    return Err(Error::SpaceMismatch(format!("image index {k} out of range")));
                }
                if *codomain.weight(*k) != want {
                    return Err(Error::WeightRule {
                        row: domain.label(i as Idx).to_string(),
                        message: format!(
                            "image has weight {} but {} was declared",
                            scalar::format(codomain.weight(*k)),
                            scalar::format(&want)
                        ),
                    });
                }
            }
        }
        Ok(GradedMap {
            domain,
            codomain,
            weight_shift,
            columns,
        })
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let cols = space.basis().map(Vector::basis).collect();
        GradedMap {
            domain: space.clone(),
            codomain: space.clone(),
            weight_shift: Scalar::zero(),
            columns: cols,
        }
    }

    pub fn column(&self, i: Idx) -> &Vector {
        &self.columns[i as usize]
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        v.apply(|i| self.columns[i as usize].clone())
    }

    /// Adjoint on graded duals: `⟨m^T f, v⟩ = ⟨f, m v⟩`.
    pub fn transpose(&self) -> GradedMap {
        let mut cols = vec![Vector::new(); self.codomain.dim()];
        for (i, col) in self.columns.iter().enumerate() {
            for (j, c) in col.iter() {
                cols[*j as usize].add_term(i as Idx, c.clone());
            }
        }
        GradedMap {
            domain: self.codomain.dual(),
            codomain: self.domain.dual(),
            weight_shift: -self.weight_shift.clone(),
            columns: cols,
        }
    }

    /// Apply the map to a functional viewed on the dual basis.
    pub fn apply_dual(&self, f: &DualFunctional<Idx>) -> DualFunctional<Idx> {
        DualFunctional(self.apply(&f.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn space() -> GradedSpace {
        GradedSpace::from_int_pieces(&[(0, vec!["one"]), (1, vec!["b", "a"]), (2, vec!["c"])]).unwrap()
    }

    fn shift_map() -> GradedMap {
        let s = space();
        let cols = vec![
            Vector::from_iter([(1, int(2))]),
            Vector::from_iter([(3, int(1))]),
            Vector::from_iter([(3, int(-1))]),
            Vector::new(),
        ];
        GradedMap::new(s.clone(), s, int(1), cols).unwrap()
    }

    #[test]
    fn labels_sorted_within_piece() {
        let s = space();
        assert_eq!(s.labels(), &["one", "a", "b", "c"]);
        assert_eq!(s.piece_int(1), 1..3);
        assert_eq!(s.index_of("c").unwrap(), 3);
        assert!(matches!(s.index_of("zz"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(GradedSpace::from_int_pieces(&[(0, vec!["a"]), (1, vec!["a"])]).is_err());
    }

    #[test]
    fn map_weight_checked() {
        let s = space();
        let bad = vec![Vector::basis(0), Vector::new(), Vector::new(), Vector::new()];
        assert!(matches!(
            GradedMap::new(s.clone(), s, int(1), bad),
            Err(Error::WeightRule { .. })
        ));
    }

    #[test]
    fn transpose_is_adjoint_and_involutive() {
        let m = shift_map();
        let t = m.transpose();
        assert_eq!(t.weight_shift, int(-1));
        for i in 0..4 {
            for j in 0..4 {
                let f = DualFunctional::dual_basis(j);
                let v = Vector::basis(i);
                assert_eq!(t.apply_dual(&f).pair(&v), f.pair(&m.apply(&v)));
            }
        }
        let tt = t.transpose();
        assert_eq!(tt.column(0), m.column(0));
        assert_eq!(tt.weight_shift, m.weight_shift);
        let id = GradedMap::identity(&space());
        assert_eq!(id.transpose(), id);
    }

    #[test]
    fn tensor_weights_add() {
        let ts = TensorSpace::new(vec![space(), space()]).unwrap();
        for t in ts.basis() {
            let w = space().weight(t[0]) + space().weight(t[1]);
            assert_eq!(ts.weight(&t), w);
        }
        assert_eq!(ts.basis().len(), 16);
    }

    #[test]
    fn transposition_swaps() {
        let ts = TensorSpace::new(vec![space(), space()]).unwrap();
        let uv = Tensor2::basis([1, 2]);
        assert_eq!(ts.transposition(&uv).unwrap(), Tensor2::basis([2, 1]));
        let uu = Tensor2::basis([1, 1]);
        assert_eq!(ts.transposition(&uu).unwrap(), uu);
        let mixed = Tensor2::from_iter([([0, 1], int(2)), ([3, 2], int(5))]);
        assert_eq!(transposition_t(&transposition_t(&mixed)), mixed);
        let other = TensorSpace::new(vec![space(), GradedSpace::from_int_pieces(&[(0, vec!["z"])]).unwrap()]).unwrap();
        assert!(other.transposition(&uv).is_err());
    }

    #[test]
    fn pairing_checks_space() {
        let s = space();
        let f = DualFunctional::dual_basis(9);
        assert!(pair(&s, &f, &Vector::basis(0)).is_err());
        let g = DualFunctional(Vector::from_iter([(1, int(2)), (2, int(1))]));
        assert_eq!(pair(&s, &g, &Vector::term(1, int(3))).unwrap(), int(6));
    }
}

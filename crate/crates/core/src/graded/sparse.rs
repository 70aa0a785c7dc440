use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::Zero;

use crate::scalar::Scalar;

/// Index of a basis vector inside a [`GradedSpace`](super::GradedSpace).
pub type Idx = u32;

/// Sparse linear combination over an ordered key set. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sparse<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

/// Vector in a graded space.
pub type Vector = Sparse<Idx>;
/// Element of `V ⊗ W`.
pub type Tensor2 = Sparse<[Idx; 2]>;
/// Element of `V ⊗ V ⊗ W`.
pub type Tensor3 = Sparse<[Idx; 3]>;

impl<K: Ord + Copy> Sparse<K> {
    pub fn new() -> Self {
        Sparse {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, crate::scalar::one())
    }

    pub fn term(k: K, c: Scalar) -> Self {
        let mut s = Self::new();
        s.add_term(k, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> Scalar {
        self.terms.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeff(&self, k: &K) -> Option<&Scalar> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(*k, v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(*k, v.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(*k, -v.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Sparse {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Sparse {
            terms: self.terms.iter().map(|(k, v)| (*k, -v.clone())).collect(),
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut d = self.clone();
        d.sub_assign(other);
        d
    }

    /// Re-key every term; colliding keys are summed.
    pub fn map_keys<L: Ord + Copy>(&self, f: impl Fn(K) -> L) -> Sparse<L> {
        let mut out = Sparse::new();
        for (k, v) in &self.terms {
            out.add_term(f(*k), v.clone());
        }
        out
    }

    /// Keep only the terms whose key satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(&K) -> bool) -> Self {
        Sparse {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Apply a linear map given on keys.
    pub fn apply<L: Ord + Copy>(&self, f: impl Fn(K) -> Sparse<L>) -> Sparse<L> {
        let mut out = Sparse::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(*k), v);
        }
        out
    }

    /// Same as [`Sparse::apply`] for fallible maps.
    pub fn try_apply<L: Ord + Copy, E>(
        &self,
        f: impl Fn(K) -> Result<Sparse<L>, E>,
    ) -> Result<Sparse<L>, E> {
        let mut out = Sparse::new();
        for (k, v) in &self.terms {
            out.add_scaled(&f(*k)?, v);
        }
        Ok(out)
    }

    /// First key at which `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<K> {
        self.difference(other).terms.keys().next().copied()
    }
}

impl<K: Ord + Copy> FromIterator<(K, Scalar)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut s = Sparse::new();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + Debug> Debug for Sparse<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(
                self.terms
                    .iter()
                    .map(|(k, v)| (k, crate::scalar::format(v))),
            )
            .finish()
    }
}

/// Tensor product of two sparse combinations.
pub fn tensor(a: &Vector, b: &Vector) -> Tensor2 {
    let mut out = Tensor2::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add_term([*i, *j], x * y);
        }
    }
    out
}

/// Element of a graded dual, finitely supported on the dual basis.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DualFunctional<K: Ord>(pub Sparse<K>);

impl<K: Ord + Copy> DualFunctional<K> {
    pub fn new() -> Self {
        DualFunctional(Sparse::new())
    }

    pub fn dual_basis(k: K) -> Self {
        DualFunctional(Sparse::basis(k))
    }

    /// `⟨self, v⟩`: bilinear, orthonormal on the dual basis.
    pub fn pair(&self, v: &Sparse<K>) -> Scalar {
        let (small, large) = if self.0.len() <= v.len() {
            (&self.0, v)
        } else {
            (v, &self.0)
        };
        let mut acc = Scalar::zero();
        for (k, a) in small.iter() {
            if let Some(b) = large.coeff(k) {
                acc += a * b;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<K: Ord + Debug> Debug for DualFunctional<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Dual{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn no_stored_zeros() {
        let mut v = Vector::new();
        v.add_term(3, int(2));
        v.add_term(3, int(-2));
        assert!(v.is_zero());
        v.add_term(1, int(0));
        assert_eq!(v.len(), 0);
    }

    #[test]
    fn pairing_is_dual_basis_orthonormal() {
        let e = DualFunctional::<Idx>::dual_basis(0);
        assert_eq!(e.pair(&Vector::basis(0)), int(1));
        assert_eq!(e.pair(&Vector::basis(1)), int(0));
        let f = DualFunctional(Vector::from_iter([(0, int(2)), (2, int(1))]));
        assert_eq!(f.pair(&Vector::term(0, int(3))), int(6));
    }
}

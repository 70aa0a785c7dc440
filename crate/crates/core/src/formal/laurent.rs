use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::Zero;

use super::{mono_mul, Mono, VarId, Window, ONE};
use crate::graded::Sparse;
use crate::scalar::{int, Scalar};

/// Coefficient domain of a [`LaurentPoly`]: scalars or sparse vectors.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn scaled(&self, c: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn scaled(&self, c: &Scalar) -> Self {
        self * c
    }
}

impl<K: Ord + Copy + Debug> Coefficient for Sparse<K> {
    fn zero() -> Self {
        Sparse::new()
    }
    fn is_zero(&self) -> bool {
        Sparse::is_zero(self)
    }
    fn add_assign(&mut self, other: &Self) {
        Sparse::add_assign(self, other)
    }
    fn scaled(&self, c: &Scalar) -> Self {
        Sparse::scaled(self, c)
    }
}

/// Sparse Laurent polynomial in the formal variables with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C: Coefficient = Scalar> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(ONE, c)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    /// Coefficient at `m`, zero if absent.
    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scaled(&int(-1))
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        if Zero::is_zero(s) {
            return out;
        }
        for (m, c) in &self.terms {
            out.add_term(*m, c.scaled(s));
        }
        out
    }

    /// Multiply by the monomial `m`.
    pub fn shifted(&self, m: &Mono) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (mono_mul(k, m), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `v^{-1}`, as a polynomial in the remaining variables.
    pub fn residue(&self, v: VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m[v.index()] == -1 {
                let mut m2 = *m;
                m2[v.index()] = 0;
                out.add_term(m2, c.clone());
            }
        }
        out
    }

    /// Formal partial derivative by exponent multiplication.
    pub fn derivative(&self, v: VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m[v.index()];
            if e != 0 {
                let mut m2 = *m;
                m2[v.index()] = e - 1;
                out.add_term(m2, c.scaled(&int(e as i64)));
            }
        }
        out
    }

    /// Keep only the terms inside `w`.
    pub fn truncate(&self, w: &Window) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| w.contains(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Replace `from` by `to` (pure renaming; `to` must not occur).
    pub fn rename(&self, from: VarId, to: VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut m2 = *m;
            m2[to.index()] += m2[from.index()];
            m2[from.index()] = 0;
            out.add_term(m2, c.clone());
        }
        out
    }

    /// `f(x) ↦ f(-x)` in the variable `v`.
    pub fn negate_var(&self, v: VarId) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if m[v.index()].rem_euclid(2) == 1 {
                out.add_term(*m, c.scaled(&int(-1)));
            } else {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Apply a linear map to every coefficient.
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Smallest and largest exponent of `v` among the terms.
    pub fn degree_range(&self, v: VarId) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m[v.index()]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// True when no term involves `v`.
    pub fn free_of(&self, v: VarId) -> bool {
        self.terms.keys().all(|m| m[v.index()] == 0)
    }

    /// First monomial where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<Mono> {
        self.sub(other).terms.keys().next().copied()
    }
}

impl LaurentPoly<Scalar> {
    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(super::mono(v, 1), int(1))
    }

    /// Product with a polynomial whose coefficients may be vectors.
    pub fn mul<C: Coefficient>(&self, other: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(mono_mul(m1, m2), c2.scaled(c1));
            }
        }
        out
    }

    /// Product truncated to `w`, skipping terms outside while accumulating.
    pub fn mul_truncated<C: Coefficient>(&self, other: &LaurentPoly<C>, w: &Window) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = mono_mul(m1, m2);
                if w.contains(&m) {
                    out.add_term(m, c2.scaled(c1));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Substitute a polynomial for `v`. Only nonnegative powers of `v` may
    /// occur in `self`.
    pub fn substitute(&self, v: VarId, value: &Self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m[v.index()];
            assert!(e >= 0, "substitution needs nonnegative powers of {v}");
            let mut rest = *m;
            rest[v.index()] = 0;
            let term = value.pow(e as u32).shifted(&rest).scaled(c);
            out = out.add(&term);
        }
        out
    }

    /// Exact division by the monomial-free polynomial `d`, if it divides.
    pub fn divide_exact(&self, d: &Self) -> Option<Self> {
        super::rational::poly_divide(self, d)
    }
}

impl<C: Coefficient> Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (super::format_mono(m), c)))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{mono, mono_of};

    fn x1() -> LaurentPoly {
        LaurentPoly::var(VarId::X1)
    }
    fn x2() -> LaurentPoly {
        LaurentPoly::var(VarId::X2)
    }

    #[test]
    fn coeff_examples() {
        let p = x1().add(&x2()).pow(3);
        assert_eq!(p.coeff(&mono_of(&[(VarId::X1, 2), (VarId::X2, 1)])), int(3));
        let five = LaurentPoly::constant(int(5));
        assert_eq!(five.coeff(&ONE), int(5));
        let sq = x1().pow(2);
        assert_eq!(sq.coeff(&mono(VarId::X1, 3)), int(0));
    }

    #[test]
    fn residue_examples() {
        let x = VarId::X;
        let p = LaurentPoly::monomial(mono(x, -1), int(1));
        assert_eq!(p.residue(x), LaurentPoly::one());
        let q = LaurentPoly::monomial(mono(x, -2), int(3))
            .add(&LaurentPoly::monomial(mono(x, -1), int(2)))
            .add(&LaurentPoly::var(x));
        assert_eq!(q.residue(x), LaurentPoly::constant(int(2)));
    }

    #[test]
    fn derivative_multiplies_exponent() {
        let x = VarId::X;
        let p = LaurentPoly::monomial(mono(x, -3), int(2));
        assert_eq!(p.derivative(x), LaurentPoly::monomial(mono(x, -4), int(-6)));
        assert!(LaurentPoly::constant(int(4)).derivative(x).is_zero());
    }
}

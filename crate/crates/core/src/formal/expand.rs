use super::laurent::{Coefficient, LaurentPoly};
use super::rational::RationalExpr;
use super::{mono, mono_of, VarId, Window};
use crate::scalar::{binomial, int, sign};
use crate::{Error, Result};

/// Sign of the second variable in a linear factor `x_a ± x_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum LinearSign {
    Minus,
    Plus,
}

impl LinearSign {
    pub fn factor(self) -> i64 {
        match self {
            LinearSign::Minus => -1,
            LinearSign::Plus => 1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            LinearSign::Minus => '-',
            LinearSign::Plus => '+',
        }
    }
}

/// `(x_a ± x_b)^n` expanded in nonnegative powers of `x_b`.
///
/// For `n >= 0` this is the exact polynomial. For `n < 0` the series is cut at
/// the bounds of `b` in `w`; every coefficient with `b`-exponent inside those
/// bounds is exact.
pub fn binom_expand(a: VarId, b: VarId, s: LinearSign, n: i64, w: &Window) -> Result<LaurentPoly> {
    if a == b {
        return Err(Error::SameVariable(a.to_string()));
    }
    let (jlo, jhi) = if n >= 0 {
        (0, n)
    } else {
        let (lo, hi) = w.require(b)?;
        (lo.max(0) as i64, hi as i64)
    };
    let mut out = LaurentPoly::zero();
    for j in jlo..=jhi {
        let c = binomial(n, j) * int(if s == LinearSign::Minus { sign(j) } else { 1 });
        out.add_term(mono_of(&[(a, (n - j) as i32), (b, j as i32)]), c);
    }
    Ok(out)
}

/// Windowed expansion of `x_d^{-1} δ((x_a ± x_b)/(σ x_d))` with `σ = -1` when
/// `negate_den` is set. Each binomial power is expanded in nonnegative powers
/// of `x_b`. All coefficients inside `w` are exact; `d` and `b` must be bounded.
pub fn delta_expansion(
    d: VarId,
    negate_den: bool,
    a: VarId,
    b: VarId,
    s: LinearSign,
    w: &Window,
) -> Result<LaurentPoly> {
    let (dlo, dhi) = w.require(d)?;
    let mut out = LaurentPoly::zero();
    for n in (-(dhi as i64) - 1)..=(-(dlo as i64) - 1) {
        let p = binom_expand(a, b, s, n, w)?;
        let c = if negate_den { int(sign(n)) } else { int(1) };
        let term = p.shifted(&mono(d, (-n - 1) as i32)).scaled(&c);
        out = out.add(&term.truncate(w));
    }
    Ok(out)
}

/// ι-expansion of a rational function. `orient = (p, q)` expands the linear
/// factor in nonnegative powers of `q`; every coefficient inside `w` is exact.
pub fn iota_expand(f: &RationalExpr, orient: (VarId, VarId), w: &Window) -> Result<LaurentPoly> {
    let (a, b) = (f.a, f.b);
    let (p, q) = orient;
    if p == q {
        return Err(Error::SameVariable(p.to_string()));
    }
    if !((p == a && q == b) || (p == b && q == a)) {
        return Err(Error::Unsupported(format!(
            "orientation ({p},{q}) does not match variables ({a},{b})"
        )));
    }
    let prefactor = f
        .g
        .shifted(&mono_of(&[(a, -(f.r as i32)), (b, -(f.s as i32))]));
    if f.t == 0 {
        return Ok(prefactor.truncate(w));
    }
    // Lowest q-exponent the prefactor contributes.
    let (qlo_pref, _) = prefactor
        .degree_range(q)
        .ok_or_else(|| Error::WindowTooSmall("zero numerator".into()))?;
    let (_, qhi) = w.require(q)?;
    if qhi < qlo_pref {
        // Every term has a q-exponent above the window.
        return Ok(LaurentPoly::zero());
    }
    let inner = Window::unbounded().with(q, 0, qhi - qlo_pref);
    // (x_a - x_b)^{-t} = (-1)^t (x_b - x_a)^{-t}; the plus sign is symmetric.
    let series = if q == b {
        binom_expand(a, b, f.sign, -(f.t as i64), &inner)?
    } else {
        let flip = if f.sign == LinearSign::Minus {
            int(sign(f.t as i64))
        } else {
            int(1)
        };
        binom_expand(b, a, f.sign, -(f.t as i64), &inner)?.scaled(&flip)
    };
    let out = prefactor.mul_truncated(&series, w);
    Ok(out)
}

/// Replace `v` by `v + h`, expanding negative powers in nonnegative powers of
/// `h`. Coefficients with `h`-exponent inside the bounds of `h` are exact.
pub fn taylor_shift<C: Coefficient>(
    f: &LaurentPoly<C>,
    v: VarId,
    h: VarId,
    w: &Window,
) -> Result<LaurentPoly<C>> {
    if v == h {
        return Err(Error::SameVariable(v.to_string()));
    }
    if !f.free_of(h) {
        return Err(Error::Unsupported(format!(
            "taylor shift by {h} of a series already involving {h}"
        )));
    }
    let hw = match w.bounds(h) {
        Some((lo, hi)) => Window::unbounded().with(h, lo, hi),
        None => Window::unbounded(),
    };
    let mut out = LaurentPoly::zero();
    for (m, c) in f.terms() {
        let e = m[v.index()];
        let mut rest = *m;
        rest[v.index()] = 0;
        let expansion = binom_expand(v, h, LinearSign::Plus, e as i64, &hw)?
            .truncate(&hw)
            .shifted(&rest);
        out = out.add(&expansion.mul(&LaurentPoly::constant(c.clone())));
    }
    Ok(out)
}

/// Equality of principal parts: coefficients agree at every multidegree that
/// is strictly negative in all of `vars`.
pub fn principal_part_eq<C: Coefficient>(f: &LaurentPoly<C>, g: &LaurentPoly<C>, vars: &[VarId]) -> bool {
    f.sub(g)
        .terms()
        .all(|(m, _)| vars.iter().any(|v| m[v.index()] >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::RationalShape;
    use crate::scalar::int;

    const X: VarId = VarId::X;
    const X0: VarId = VarId::X0;
    const X1: VarId = VarId::X1;
    const X2: VarId = VarId::X2;

    fn var(v: VarId) -> LaurentPoly {
        LaurentPoly::var(v)
    }

    #[test]
    fn binom_positive_power() {
        let p = binom_expand(X1, X2, LinearSign::Minus, 2, &Window::unbounded()).unwrap();
        let expected = var(X1).sub(&var(X2)).pow(2);
        assert_eq!(p, expected);
    }

    #[test]
    fn binom_negative_power_back_multiplies_to_one() {
        let w = Window::unbounded().with(X2, 0, 2);
        let p = binom_expand(X1, X2, LinearSign::Minus, -1, &w).unwrap();
        let expected = LaurentPoly::monomial(mono(X1, -1), int(1))
            .add(&LaurentPoly::monomial(mono_of(&[(X1, -2), (X2, 1)]), int(1)))
            .add(&LaurentPoly::monomial(mono_of(&[(X1, -3), (X2, 2)]), int(1)));
        assert_eq!(p, expected);
        // Oracle: (x1 - x2) * p = 1 - x2^3 x1^{-3}.
        let back = var(X1).sub(&var(X2)).mul(&p);
        let tail = LaurentPoly::monomial(mono_of(&[(X1, -3), (X2, 3)]), int(-1));
        assert_eq!(back, LaurentPoly::one().add(&tail));
    }

    #[test]
    fn binom_other_orientation_differs() {
        let w = Window::unbounded().with(X1, 0, 1);
        let p = binom_expand(X2, X1, LinearSign::Minus, -1, &w).unwrap();
        let expected = LaurentPoly::monomial(mono(X2, -1), int(1))
            .add(&LaurentPoly::monomial(mono_of(&[(X2, -2), (X1, 1)]), int(1)));
        assert_eq!(p, expected);
    }

    #[test]
    fn binom_rejects_same_variable() {
        assert!(matches!(
            binom_expand(X1, X1, LinearSign::Plus, 2, &Window::default()),
            Err(Error::SameVariable(_))
        ));
    }

    #[test]
    fn iota_difference_is_delta_coefficient() {
        let w = Window::cube(&[X1, X2], -8, 8);
        let f = RationalExpr::new(LaurentPoly::one(), 0, 0, 1, RationalShape::iota12());
        let a = iota_expand(&f, (X1, X2), &w).unwrap();
        let b = iota_expand(&f, (X2, X1), &w).unwrap();
        let m = mono_of(&[(X1, 3), (X2, -4)]);
        assert_eq!(a.sub(&b).coeff(&m), int(1));
    }

    #[test]
    fn iota_square_pole() {
        let w = Window::cube(&[X1, X2], -8, 8);
        let f = RationalExpr::new(LaurentPoly::one(), 0, 0, 2, RationalShape::iota12());
        let a = iota_expand(&f, (X1, X2), &w).unwrap();
        assert_eq!(a.coeff(&mono_of(&[(X1, -3), (X2, 1)])), int(2));
    }

    #[test]
    fn iota_below_the_window_is_zero() {
        let w = Window::unbounded().with(X1, -8, 8).with(X2, -5, -1);
        let f = RationalExpr::new(LaurentPoly::one(), 0, 0, 1, RationalShape::iota12());
        assert!(iota_expand(&f, (X1, X2), &w).unwrap().is_zero());
    }

    #[test]
    fn iota_of_polynomial_is_itself() {
        let g = var(X1).add(&var(X2).scaled(&int(3)));
        let f = RationalExpr::new(g.clone(), 0, 0, 0, RationalShape::iota12());
        assert_eq!(iota_expand(&f, (X1, X2), &Window::default()).unwrap(), g);
    }

    #[test]
    fn residue_of_iota_kernel() {
        let w = Window::unbounded().with(X2, 0, 8);
        let f = RationalExpr::new(LaurentPoly::one(), 0, 0, 1, RationalShape::iota12());
        let s = iota_expand(&f, (X1, X2), &w).unwrap();
        assert_eq!(s.residue(X1), LaurentPoly::one());
    }

    #[test]
    fn taylor_examples() {
        let w = Window::unbounded().with(X0, 0, 3);
        let sq = var(X).pow(2);
        let shifted = taylor_shift(&sq, X, X0, &Window::unbounded()).unwrap();
        assert_eq!(shifted, var(X).add(&var(X0)).pow(2));

        let inv = LaurentPoly::monomial(mono(X, -1), int(1));
        let s = taylor_shift(&inv, X, X0, &w).unwrap();
        let mut expected = LaurentPoly::zero();
        for j in 0..4 {
            expected.add_term(mono_of(&[(X, -1 - j), (X0, j)]), int(sign(j as i64)));
        }
        assert_eq!(s, expected);

        let c = LaurentPoly::constant(int(7));
        assert_eq!(taylor_shift(&c, X, X0, &w).unwrap(), c);
    }

    #[test]
    fn principal_parts() {
        let a = LaurentPoly::monomial(mono(X, -2), int(1)).add(&var(X));
        let b = LaurentPoly::monomial(mono(X, -2), int(1));
        assert!(principal_part_eq(&a, &b, &[X]));
        let c = LaurentPoly::monomial(mono(X, -1), int(1));
        assert!(!principal_part_eq(&c, &LaurentPoly::zero(), &[X]));
        assert!(principal_part_eq(&LaurentPoly::constant(int(1)), &LaurentPoly::zero(), &[X]));
    }
}

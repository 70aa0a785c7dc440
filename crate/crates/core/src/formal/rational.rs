use std::fmt;

use super::expand::{iota_expand, LinearSign};
use super::laurent::LaurentPoly;
use super::{mono, mono_of, Mono, VarId, Window};
use crate::scalar::int;
use crate::{Error, Result};

/// Variables, linear-factor sign and expansion variable of a rational
/// function `g / (x_a^r x_b^s (x_a ∓ x_b)^t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalShape {
    pub a: VarId,
    pub b: VarId,
    pub sign: LinearSign,
    /// Variable whose nonnegative powers the linear factor is expanded in.
    pub expand_in: VarId,
}

impl RationalShape {
    pub fn new(a: VarId, b: VarId, sign: LinearSign, expand_in: VarId) -> Self {
        assert!(a != b && (expand_in == a || expand_in == b));
        RationalShape {
            a,
            b,
            sign,
            expand_in,
        }
    }

    /// `x1 - x2`, expanded in nonnegative powers of `x2`.
    pub fn iota12() -> Self {
        Self::new(VarId::X1, VarId::X2, LinearSign::Minus, VarId::X2)
    }

    /// `x1 - x2`, expanded in nonnegative powers of `x1`.
    pub fn iota21() -> Self {
        Self::new(VarId::X1, VarId::X2, LinearSign::Minus, VarId::X1)
    }

    /// `x0 + x2`, expanded in nonnegative powers of `x0`.
    pub fn iota20() -> Self {
        Self::new(VarId::X0, VarId::X2, LinearSign::Plus, VarId::X0)
    }

    /// `x0 + x2`, expanded in nonnegative powers of `x2`.
    pub fn iota02() -> Self {
        Self::new(VarId::X0, VarId::X2, LinearSign::Plus, VarId::X2)
    }

    pub fn orientation(&self) -> (VarId, VarId) {
        if self.expand_in == self.b {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        }
    }

    fn linear(&self) -> LaurentPoly {
        LaurentPoly::var(self.a).add(&LaurentPoly::var(self.b).scaled(&int(self.sign.factor())))
    }
}

/// Rational function `g(x_a, x_b) / (x_a^r x_b^s (x_a ∓ x_b)^t)` with `g` a
/// polynomial. Constructed values are canonical: `g` is not divisible by
/// `x_a` while `r > 0`, by `x_b` while `s > 0`, or by the linear factor while
/// `t > 0`.
#[derive(Clone, PartialEq)]
pub struct RationalExpr {
    pub g: LaurentPoly,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub a: VarId,
    pub b: VarId,
    pub sign: LinearSign,
}

impl RationalExpr {
    pub fn new(g: LaurentPoly, r: u32, s: u32, t: u32, shape: RationalShape) -> Self {
        let mut e = RationalExpr {
            g,
            r,
            s,
            t,
            a: shape.a,
            b: shape.b,
            sign: shape.sign,
        };
        e.canonicalize();
        e
    }

    /// Build from a Laurent polynomial numerator, absorbing negative powers
    /// into `r` and `s`.
    pub fn from_laurent(num: &LaurentPoly, t: u32, shape: RationalShape) -> Self {
        let ra = num.degree_range(shape.a).map_or(0, |(lo, _)| (-lo).max(0));
        let sb = num.degree_range(shape.b).map_or(0, |(lo, _)| (-lo).max(0));
        let g = num.shifted(&mono_of(&[(shape.a, ra), (shape.b, sb)]));
        Self::new(g, ra as u32, sb as u32, t, shape)
    }

    fn linear(&self) -> LaurentPoly {
        LaurentPoly::var(self.a).add(&LaurentPoly::var(self.b).scaled(&int(self.sign.factor())))
    }

    fn canonicalize(&mut self) {
        if self.g.is_zero() {
            self.r = 0;
            self.s = 0;
            self.t = 0;
            return;
        }
        while self.r > 0 && self.g.degree_range(self.a).is_some_and(|(lo, _)| lo > 0) {
            self.g = self.g.shifted(&mono(self.a, -1));
            self.r -= 1;
        }
        while self.s > 0 && self.g.degree_range(self.b).is_some_and(|(lo, _)| lo > 0) {
            self.g = self.g.shifted(&mono(self.b, -1));
            self.s -= 1;
        }
        let lin = self.linear();
        while self.t > 0 {
            match poly_divide(&self.g, &lin) {
                Some(q) => {
                    self.g = q;
                    self.t -= 1;
                }
                None => break,
            }
        }
    }

    pub fn shape(&self, expand_in: VarId) -> RationalShape {
        RationalShape::new(self.a, self.b, self.sign, expand_in)
    }

    /// Numerator and denominator as polynomials.
    pub fn as_fraction(&self) -> (LaurentPoly, LaurentPoly) {
        let den = self
            .linear()
            .pow(self.t)
            .shifted(&mono_of(&[(self.a, self.r as i32), (self.b, self.s as i32)]));
        (self.g.clone(), den)
    }

    /// Equality as rational functions, by cross multiplication.
    pub fn same_function(&self, other: &RationalExpr) -> bool {
        fraction_eq(&self.as_fraction(), &other.as_fraction())
    }

    /// Substitute a polynomial for one variable, returning numerator and
    /// denominator.
    pub fn substitute(&self, v: VarId, value: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let (n, d) = self.as_fraction();
        (n.substitute(v, value), d.substitute(v, value))
    }
}

/// `n1/d1 == n2/d2` as rational functions.
pub fn fraction_eq(x: &(LaurentPoly, LaurentPoly), y: &(LaurentPoly, LaurentPoly)) -> bool {
    x.0.mul(&y.1) == y.0.mul(&x.1)
}

impl fmt::Debug for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .g
            .terms()
            .map(|(m, c)| format!("{}*{}", crate::scalar::format(c), super::format_mono(m)))
            .collect();
        let num = if num.is_empty() {
            "0".to_string()
        } else {
            num.join(" + ")
        };
        write!(
            f,
            "({num}) / ({}^{} {}^{} ({} {} {})^{})",
            self.a,
            self.r,
            self.b,
            self.s,
            self.a,
            self.sign.symbol(),
            self.b,
            self.t
        )
    }
}

/// Exact polynomial division; `None` when `d` does not divide `p`.
pub(crate) fn poly_divide(p: &LaurentPoly, d: &LaurentPoly) -> Option<LaurentPoly> {
    let (dlead, dc) = d.terms().last().map(|(m, c)| (*m, c.clone()))?;
    let mut rem = p.clone();
    let mut quot = LaurentPoly::zero();
    while let Some((m, c)) = rem.terms().last().map(|(m, c)| (*m, c.clone())) {
        let mut qm: Mono = m;
        for i in 0..qm.len() {
            qm[i] -= dlead[i];
            if qm[i] < 0 {
                return None;
            }
        }
        let qc = c / &dc;
        let step = LaurentPoly::monomial(qm, qc);
        rem = rem.sub(&step.mul(d));
        quot = quot.add(&step);
    }
    Some(quot)
}

/// Recover the rational function whose ι-expansion (linear factor expanded in
/// `shape.expand_in`) is `s` on the window `w`.
///
/// For `t = 0, 1, …, t_bound` the series is multiplied by the linear factor
/// to the `t`. The product is exact only on the sub-box where every shifted
/// input coefficient lies inside `w`; the first `t` whose product has support
/// strictly inside that sub-box, and whose re-expansion reproduces `s`, wins.
pub fn match_rational(
    s: &LaurentPoly,
    shape: RationalShape,
    t_bound: u32,
    w: &Window,
) -> Result<RationalExpr> {
    let (a, b) = (shape.a, shape.b);
    check_vars(s, a, b)?;
    let (alo, ahi) = w.require(a)?;
    let (blo, bhi) = w.require(b)?;
    let s = s.truncate(w);
    let lin = shape.linear();
    let mut product = s.clone();
    let mut rows_at_bound = 0;
    for t in 0..=t_bound {
        if t > 0 {
            product = lin.mul(&product);
        }
        let ti = t as i32;
        let (ra_lo, rb_lo) = (alo + ti, blo + ti);
        if ra_lo > ahi || rb_lo > bhi {
            break;
        }
        rows_at_bound = (bhi - rb_lo + 1).min(ahi - ra_lo + 1);
        let reliable = Window::unbounded().with(a, ra_lo, ahi).with(b, rb_lo, bhi);
        let inside = product.truncate(&reliable);
        let touches = inside.terms().any(|(m, _)| {
            let (x, y) = (m[a.index()], m[b.index()]);
            x == ra_lo || x == ahi || y == rb_lo || y == bhi
        });
        if touches {
            continue;
        }
        let candidate = RationalExpr::from_laurent(&inside, t, shape);
        let back = iota_expand(&candidate, shape.orientation(), w)?;
        if back == s {
            return Ok(candidate);
        }
    }
    if rows_at_bound >= t_bound as i32 + 2 {
        Err(Error::NotRational(t_bound))
    } else {
        Err(Error::Inconclusive(format!(
            "window too small to certify a linear-factor exponent up to {t_bound}"
        )))
    }
}

/// One ι-expansion of a rational function, known exactly on `window`.
pub struct Expansion<'s> {
    pub series: &'s LaurentPoly,
    pub window: &'s Window,
    /// Variable whose nonnegative powers the linear factor is expanded in.
    pub expand_in: VarId,
    /// Exponents `(e_a, e_b)` below which the series is known to vanish.
    pub vanishes_below: (Option<i32>, Option<i32>),
    /// Exponents `(e_a, e_b)` above which the data is truncated, whatever
    /// the window.
    pub truncated_above: (Option<i32>, Option<i32>),
}

/// What grading says about the numerator `(linear factor)^t · series`: its
/// support lies on the lines `e_a + e_b = c + t` for `c` in `sums`, with
/// `e_a >= lower.0` and `e_b >= lower.1`.
pub struct GradedSupport {
    pub sums: Vec<i64>,
    pub lower: (Option<i32>, Option<i32>),
}

/// Recover a rational function from one or more of its ι-expansions of a
/// graded series, given an exponent `t` of the linear factor for which the
/// weak property holds.
///
/// Each expansion times the linear factor to the `t` gives the numerator
/// exactly on a sub-box of its window; overlapping sub-boxes must agree, and
/// every known coefficient must lie where grading allows the numerator.
/// Once the sub-boxes cover every monomial the grading allows, the numerator
/// is known and the first expansion must be its re-expansion. An allowed
/// monomial that no sub-box reaches is put down to the truncation of the data
/// when no expansion could reach it on any window, and to the window otherwise.
pub fn match_rational_graded(
    parts: &[Expansion],
    shape: RationalShape,
    support: &GradedSupport,
    t: u32,
) -> Result<RationalExpr> {
    let (a, b) = (shape.a, shape.b);
    let lin = shape.linear().pow(t);
    let ti = t as i32;
    let refute = Err(Error::NotRational(t));
    let mut regions = vec![];
    let mut products = vec![];
    for p in parts {
        check_vars(p.series, a, b)?;
        let (alo, ahi) = p.window.require(a)?;
        let (blo, bhi) = p.window.require(b)?;
        // Below a bound where the series vanishes the product needs no margin.
        let lift = |lo: i32, below: Option<i32>| match below {
            Some(l) if lo <= l => lo,
            _ => lo + ti,
        };
        let (alo, blo) = (lift(alo, p.vanishes_below.0), lift(blo, p.vanishes_below.1));
        if alo <= ahi && blo <= bhi {
            regions.push(Window::unbounded().with(a, alo, ahi).with(b, blo, bhi));
            products.push(lin.mul(&p.series.truncate(p.window)));
        }
    }
    let mut numerator = LaurentPoly::zero();
    for (i, (pr, reg)) in products.iter().zip(&regions).enumerate() {
        let known = numerator.truncate(reg);
        for (m, c) in pr.truncate(reg).terms() {
            if !regions[..i].iter().any(|r| r.contains(m)) {
                numerator.add_term(*m, c.clone());
            } else if known.coeff(m) != *c {
                return refute;
            }
        }
        if known.terms().any(|(m, c)| pr.coeff(m) != *c) {
            return refute;
        }
    }
    let (Some(la), Some(lb)) = support.lower else {
        return Err(Error::Inconclusive("numerator support is not bounded by grading".into()));
    };
    let allowed = |m: &Mono| {
        let (x, y) = (m[a.index()], m[b.index()]);
        x >= la && y >= lb && support.sums.contains(&(x as i64 + y as i64 - t as i64))
    };
    if numerator.terms().any(|(m, _)| !allowed(m)) {
        return refute;
    }
    for &c in &support.sums {
        let total = c + t as i64;
        for ea in la as i64..=total - lb as i64 {
            let m = mono_of(&[(a, ea as i32), (b, (total - ea) as i32)]);
            if !regions.iter().any(|r| r.contains(&m)) {
                let at = super::format_mono(&m);
                let below = |e: i32, cap: Option<i32>| cap.is_none_or(|c| e <= c);
                let reachable = parts.iter().any(|p| {
                    below(m[a.index()], p.truncated_above.0) && below(m[b.index()], p.truncated_above.1)
                });
                return Err(if !reachable {
                    Error::Truncated(format!("the numerator at {at} is not determined by exact coefficients"))
                } else {
                    Error::Inconclusive(format!("window too small: the numerator may reach {at}"))
                });
            }
        }
    }
    let candidate = RationalExpr::from_laurent(&numerator, t, shape);
    let first = &parts[0];
    let orient = RationalShape::new(a, b, shape.sign, first.expand_in).orientation();
    if iota_expand(&candidate, orient, first.window)? == first.series.truncate(first.window) {
        Ok(candidate)
    } else {
        refute
    }
}

fn check_vars(s: &LaurentPoly, a: VarId, b: VarId) -> Result<()> {
    for (m, _) in s.terms() {
        for v in VarId::ALL {
            if v != a && v != b && m[v.index()] != 0 {
                return Err(Error::Unsupported(format!(
                    "series involves {v} outside ({a},{b})"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const X1: VarId = VarId::X1;
    const X2: VarId = VarId::X2;

    fn w() -> Window {
        Window::cube(&[X1, X2], -8, 8)
    }

    #[test]
    fn recovers_simple_pole() {
        let f = RationalExpr::new(LaurentPoly::one(), 0, 0, 1, RationalShape::iota12());
        let s = iota_expand(&f, (X1, X2), &w()).unwrap();
        let m = match_rational(&s, RationalShape::iota12(), 4, &w()).unwrap();
        assert_eq!(m.g, LaurentPoly::one());
        assert_eq!((m.r, m.s, m.t), (0, 0, 1));
    }

    #[test]
    fn recovers_monomial() {
        let s = LaurentPoly::monomial(mono(X1, -1), int(1));
        let m = match_rational(&s, RationalShape::iota12(), 4, &w()).unwrap();
        assert_eq!(m.g, LaurentPoly::one());
        assert_eq!((m.r, m.s, m.t), (1, 0, 0));
    }

    #[test]
    fn recovers_numerator() {
        let g = LaurentPoly::var(X1).add(&LaurentPoly::var(X2));
        let f = RationalExpr::new(g.clone(), 0, 0, 1, RationalShape::iota12());
        let s = iota_expand(&f, (X1, X2), &w()).unwrap();
        let m = match_rational(&s, RationalShape::iota12(), 4, &w()).unwrap();
        assert_eq!(m.g, g);
        assert_eq!(m.t, 1);
    }

    #[test]
    fn canonical_form_strips_common_factors() {
        let lin = LaurentPoly::var(X1).sub(&LaurentPoly::var(X2));
        let g = lin.shifted(&mono(X1, 1));
        let f = RationalExpr::new(g, 2, 0, 3, RationalShape::iota12());
        assert_eq!(f.g, LaurentPoly::one());
        assert_eq!((f.r, f.s, f.t), (1, 0, 2));
    }

    #[test]
    fn non_rational_series_is_rejected() {
        // Coefficients 1/(j+1) along the antidiagonal are not rational.
        let mut s = LaurentPoly::zero();
        for j in 0..8 {
            s.add_term(mono_of(&[(X1, -1 - j), (X2, j)]), crate::scalar::ratio(1, j as i64 + 1));
        }
        let r = match_rational(&s, RationalShape::iota12(), 2, &w());
        assert!(matches!(r, Err(Error::NotRational(2))));
    }

    fn box2(a: (i32, i32), b: (i32, i32)) -> Window {
        Window::unbounded().with(X1, a.0, a.1).with(X2, b.0, b.1)
    }

    /// `1/(x1 - x2)^2` expanded both ways on the given boxes, with caps.
    fn graded(wa: &Window, wb: &Window, caps: (Option<i32>, Option<i32>), t: u32) -> Result<RationalExpr> {
        let f = RationalExpr::new(LaurentPoly::one(), 0, 0, 2, RationalShape::iota12());
        let sa = iota_expand(&f, (X1, X2), wa).unwrap();
        let sb = iota_expand(&f, (X2, X1), wb).unwrap();
        let parts = [
            Expansion {
                series: &sa,
                window: wa,
                expand_in: X2,
                vanishes_below: (None, Some(0)),
                truncated_above: (None, caps.1),
            },
            Expansion {
                series: &sb,
                window: wb,
                expand_in: X1,
                vanishes_below: (Some(0), None),
                truncated_above: (caps.0, None),
            },
        ];
        let support = GradedSupport {
            sums: vec![-2],
            lower: (Some(0), Some(0)),
        };
        match_rational_graded(&parts, RationalShape::iota12(), &support, t)
    }

    #[test]
    fn graded_recovers_from_capped_expansions() {
        let wa = box2((-8, 8), (-8, 2));
        let wb = box2((-8, 0), (-8, 8));
        for t in [2, 3, 5] {
            let m = graded(&wa, &wb, (Some(0), Some(2)), t).unwrap();
            assert_eq!(m.g, LaurentPoly::one());
            assert_eq!((m.r, m.s, m.t), (0, 0, 2));
        }
    }

    #[test]
    fn graded_distinguishes_truncation_from_window() {
        let wa = box2((-8, 8), (-8, -1));
        let wb = box2((-8, -1), (-8, 8));
        assert!(matches!(graded(&wa, &wb, (Some(-1), Some(-1)), 2), Err(Error::Truncated(_))));
        assert!(matches!(graded(&wa, &wb, (None, None), 2), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn graded_rejects_disagreeing_expansions() {
        let w = box2((-8, 8), (-8, 8));
        let f = RationalExpr::new(LaurentPoly::one(), 0, 0, 2, RationalShape::iota12());
        let g = RationalExpr::new(LaurentPoly::var(X1), 0, 0, 3, RationalShape::iota12());
        let sa = iota_expand(&f, (X1, X2), &w).unwrap();
        let sb = iota_expand(&g, (X2, X1), &w).unwrap();
        let parts = [
            Expansion {
                series: &sa,
                window: &w,
                expand_in: X2,
                vanishes_below: (None, Some(0)),
                truncated_above: (None, None),
            },
            Expansion {
                series: &sb,
                window: &w,
                expand_in: X1,
                vanishes_below: (Some(0), None),
                truncated_above: (None, None),
            },
        ];
        let support = GradedSupport {
            sums: vec![-2],
            lower: (Some(0), Some(0)),
        };
        let r = match_rational_graded(&parts, RationalShape::iota12(), &support, 3);
        assert!(matches!(r, Err(Error::NotRational(3))));
    }

    proptest::proptest! {
        #[test]
        fn match_inverts_iota(
            coeffs in proptest::collection::vec(-3i64..=3, 1..4),
            r in 0u32..3,
            s in 0u32..3,
            t in 0u32..3,
        ) {
            let mut g = LaurentPoly::zero();
            for (j, c) in coeffs.iter().enumerate() {
                g.add_term(mono_of(&[(X1, j as i32), (X2, 2 - j as i32)]), int(*c));
            }
            proptest::prop_assume!(!g.is_zero());
            let f = RationalExpr::new(g, r, s, t, RationalShape::iota12());
            let wide = Window::cube(&[X1, X2], -12, 12);
            let series = iota_expand(&f, (X1, X2), &wide).unwrap();
            let m = match_rational(&series, RationalShape::iota12(), 4, &wide).unwrap();
            proptest::prop_assert_eq!(m, f);
        }
    }
}

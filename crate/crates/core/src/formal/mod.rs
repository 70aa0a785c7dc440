//! Formal-variable calculus over exact rationals.
//!
//! Formal distributions such as `δ(x)` are never materialized. Every series is
//! handled as a [`LaurentPoly`] truncated to a [`Window`], and each operation
//! states which coefficients inside the window are exact.

mod expand;
mod laurent;
mod rational;

pub use expand::{
    binom_expand, delta_expansion, iota_expand, principal_part_eq, taylor_shift, LinearSign,
};
pub use laurent::{Coefficient, LaurentPoly};
pub use rational::{
    fraction_eq, match_rational, match_rational_graded, Expansion, GradedSupport, RationalExpr, RationalShape,
};

use serde::{Deserialize, Serialize};
use std::fmt;

/// A commuting formal variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarId {
    X,
    X0,
    X1,
    X2,
}

pub const NUM_VARS: usize = 4;

impl VarId {
    pub const ALL: [VarId; NUM_VARS] = [VarId::X, VarId::X0, VarId::X1, VarId::X2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            VarId::X => "x",
            VarId::X0 => "x0",
            VarId::X1 => "x1",
            VarId::X2 => "x2",
        }
    }

    pub fn parse(s: &str) -> Option<VarId> {
        VarId::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`VarId::index`].
pub type Mono = [i32; NUM_VARS];

pub const ONE: Mono = [0; NUM_VARS];

/// Monomial `v^e`.
pub fn mono(v: VarId, e: i32) -> Mono {
    let mut m = ONE;
    m[v.index()] = e;
    m
}

/// Monomial from `(variable, exponent)` pairs.
pub fn mono_of(pairs: &[(VarId, i32)]) -> Mono {
    let mut m = ONE;
    for &(v, e) in pairs {
        m[v.index()] += e;
    }
    m
}

pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut m = *a;
    for i in 0..NUM_VARS {
        m[i] += b[i];
    }
    m
}

pub fn format_mono(m: &Mono) -> String {
    let parts: Vec<String> = VarId::ALL
        .iter()
        .filter(|v| m[v.index()] != 0)
        .map(|v| format!("{}^{}", v.name(), m[v.index()]))
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// Per-variable inclusive exponent bounds. Variables without bounds are
/// unrestricted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    bounds: [Option<(i32, i32)>; NUM_VARS],
}

/// Default exponent bound per variable.
pub const DEFAULT_WINDOW: (i32, i32) = (-8, 8);

impl Default for Window {
    fn default() -> Self {
        Window::cube(&VarId::ALL, DEFAULT_WINDOW.0, DEFAULT_WINDOW.1)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = VarId::ALL
            .iter()
            .filter_map(|v| self.bounds(*v).map(|(lo, hi)| format!("{v}:[{lo},{hi}]")))
            .collect();
        if parts.is_empty() {
            write!(f, "unbounded")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl Window {
    pub fn unbounded() -> Self {
        Window {
            bounds: [None; NUM_VARS],
        }
    }

    /// Same bounds on every listed variable.
    pub fn cube(vars: &[VarId], lo: i32, hi: i32) -> Self {
        assert!(lo <= hi, "window needs lo <= hi");
        let mut w = Window::unbounded();
        for v in vars {
            w.bounds[v.index()] = Some((lo, hi));
        }
        w
    }

    pub fn with(mut self, v: VarId, lo: i32, hi: i32) -> Self {
        assert!(lo <= hi, "window needs lo <= hi");
        self.bounds[v.index()] = Some((lo, hi));
        self
    }

    pub fn without(mut self, v: VarId) -> Self {
        self.bounds[v.index()] = None;
        self
    }

    pub fn bounds(&self, v: VarId) -> Option<(i32, i32)> {
        self.bounds[v.index()]
    }

    /// Bounds of `v`, or an error naming the missing variable.
    pub fn require(&self, v: VarId) -> crate::Result<(i32, i32)> {
        self.bounds(v).ok_or_else(|| {
            crate::Error::WindowTooSmall(format!("no exponent bounds for {v}"))
        })
    }

    pub fn contains(&self, m: &Mono) -> bool {
        self.bounds.iter().zip(m.iter()).all(|(b, e)| match b {
            Some((lo, hi)) => lo <= e && e <= hi,
            None => true,
        })
    }

    /// Shrink the bounds of `v` by `lo_by` from below and `hi_by` from above.
    /// Returns `None` if the range becomes empty.
    pub fn shrunk(&self, v: VarId, lo_by: i32, hi_by: i32) -> Option<Window> {
        let mut w = *self;
        if let Some((lo, hi)) = self.bounds(v) {
            let (nlo, nhi) = (lo + lo_by, hi - hi_by);
            if nlo > nhi {
                return None;
            }
            w.bounds[v.index()] = Some((nlo, nhi));
        }
        Some(w)
    }

    /// Widen the bounds of `v`.
    pub fn widened(&self, v: VarId, lo_by: i32, hi_by: i32) -> Window {
        let mut w = *self;
        if let Some((lo, hi)) = self.bounds(v) {
            w.bounds[v.index()] = Some((lo - lo_by, hi + hi_by));
        }
        w
    }

    /// Enumerate every monomial over `vars` inside the window.
    pub fn monomials(&self, vars: &[VarId]) -> crate::Result<Vec<Mono>> {
        let mut out = vec![ONE];
        for &v in vars {
            let (lo, hi) = self.require(v)?;
            let mut next = Vec::with_capacity(out.len() * (hi - lo + 1) as usize);
            for m in &out {
                for e in lo..=hi {
                    let mut m2 = *m;
                    m2[v.index()] = e;
                    next.push(m2);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

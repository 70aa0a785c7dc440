use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::formal::{mono_of, LaurentPoly, VarId, Window};
use crate::graded::{DualFunctional, Idx, Tensor3};
use crate::scalar::{self, Scalar};
use crate::structures::Comodule;
use crate::{Error, Result};

use super::coaction::{key_weights, Composites};
use super::{CheckResult, Witness};

/// Functional on `V ⊗ V ⊗ M`, a finite combination of dual basis tensors.
pub type Functional = DualFunctional<[Idx; 3]>;

/// Extra exponents tried beyond the proof bound before giving up.
pub const DEFAULT_SLACK: u32 = 4;

/// Largest component weight used by the exhaustive functional sweeps.
pub const DEFAULT_SWEEP_WEIGHT: i64 = 5;

/// Which weak property is being searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    /// `(x1 - x2)^k ⟨v', (Id ⊗ Y(x2)) Y(x1) w - (T ⊗ Id)(Id ⊗ Y(x1)) Y(x2) w⟩`.
    Cocomm,
    /// `(x0 + x2)^k ⟨v', (Y(x0) ⊗ Id) Y(x2) w - (Id ⊗ Y(x2)) Y(x0 + x2) w⟩`.
    Coassoc,
}

impl Kind {
    pub fn vars(self) -> (VarId, VarId) {
        match self {
            Kind::Cocomm => (VarId::X1, VarId::X2),
            Kind::Coassoc => (VarId::X0, VarId::X2),
        }
    }

    fn linear(self) -> LaurentPoly {
        let (a, b) = self.vars();
        let sign = if self == Kind::Cocomm { -1 } else { 1 };
        LaurentPoly::var(a).add(&LaurentPoly::var(b).scaled(&scalar::int(sign)))
    }

    fn name(self) -> &'static str {
        match self {
            Kind::Cocomm => "weak-cocommutativity",
            Kind::Coassoc => "weak-coassociativity",
        }
    }
}

/// Result of a minimal-exponent search for one functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalK {
    /// Smallest exponent that works for every basis vector, if one was found
    /// within `bound + slack`.
    pub k: Option<u32>,
    /// Exponent guaranteed by the proof, from the component weights of the
    /// functional (see [`cocomm_bound`] and [`coassoc_bound`]).
    pub bound: i64,
    pub check: CheckResult,
}

/// Weak cocommutativity bound for a functional: the two `V` weights `r, s`
/// of each component give `r + s - minW + 2`, with `minW` the lowest weight
/// of `V`.
pub fn cocomm_bound(m: &Comodule, f: &Functional) -> i64 {
    f.0.keys().map(|k| key_bound(m, Kind::Cocomm, k)).max().unwrap_or(0)
}

/// Weak coassociativity bound for a functional: the weights `r` and `t` of
/// the first and last factor of each component give
/// `floor(r + t - minM) + 2`, with `minM` the lowest weight of `M`.
pub fn coassoc_bound(m: &Comodule, f: &Functional) -> i64 {
    f.0.keys().map(|k| key_bound(m, Kind::Coassoc, k)).max().unwrap_or(0)
}

pub(crate) fn key_bound(m: &Comodule, kind: Kind, key: &[Idx; 3]) -> i64 {
    let (r, s, t) = key_weights(m, key);
    let b = match kind {
        Kind::Cocomm => r + s - m.over.space.min_int_weight() + 2,
        Kind::Coassoc => {
            let min_m = m.space.min_weight().cloned().unwrap_or_default();
            scalar::floor_i64(&(scalar::int(r) + &t - &min_m)) + 2
        }
    };
    b.max(0)
}

/// All dual basis tensors `a' ⊗ b' ⊗ c'` with every component weight at most
/// `max_weight`.
pub fn basis_functionals(m: &Comodule, max_weight: i64) -> Vec<[Idx; 3]> {
    let vs: Vec<Idx> = m
        .over
        .space
        .basis()
        .filter(|i| m.over.space.int_weight(*i) <= max_weight)
        .collect();
    let ms: Vec<Idx> = m
        .space
        .basis()
        .filter(|i| *m.space.weight(*i) <= scalar::int(max_weight))
        .collect();
    let mut out = Vec::with_capacity(vs.len() * vs.len() * ms.len());
    for &a in &vs {
        for &b in &vs {
            for &c in &ms {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Coefficient (as a tensor) of the difference series at exponents
/// `(ea, eb)` of the kind's two variables.
pub(crate) fn difference_at(comp: &mut Composites, kind: Kind, ea: i32, eb: i32) -> Result<Tensor3> {
    match kind {
        Kind::Cocomm => {
            let (k, l) = (-(ea as i64) - 1, -(eb as i64) - 1);
            let mut d = comp.a(k, l)?.clone();
            d.sub_assign(comp.b(k, l)?);
            Ok(d)
        }
        Kind::Coassoc => {
            let mut d = first_coassoc(comp, ea, eb)?;
            d.sub_assign(&second_coassoc(comp, ea, eb)?);
            Ok(d)
        }
    }
}

/// `(Δ_n ⊗ Id) Δ_l w` at `x0^a x2^b`.
pub(crate) fn first_coassoc(comp: &mut Composites, a: i32, b: i32) -> Result<Tensor3> {
    Ok(comp.r(-(a as i64) - 1, -(b as i64) - 1)?.clone())
}

/// `(Id ⊗ Y(x2)) Y(x0 + x2) w` at `x0^a x2^b`:
/// `Σ_j C(a+j, j) (Id ⊗ Δ_{j-b-1}) Δ_{-a-1-j} w`.
pub(crate) fn second_coassoc(comp: &mut Composites, a: i32, b: i32) -> Result<Tensor3> {
    let (a, b) = (a as i64, b as i64);
    let mut out = Tensor3::new();
    let jmax = -a - 1 - comp.kmin();
    for j in 0..=jmax.max(-1) {
        out.add_scaled(comp.a(-a - 1 - j, j - b - 1)?, &scalar::binomial(a + j, j));
    }
    Ok(out)
}

/// Whether the coefficient of `key` at `(ea, eb)` avoids data above the top
/// weight.
pub(crate) fn certified(m: &Comodule, kind: Kind, key: &[Idx; 3], ea: i32, eb: i32) -> bool {
    let (p, q, s) = key_weights(m, key);
    match kind {
        Kind::Cocomm => {
            m.known(&(scalar::int(q + eb as i64) + &s)) && m.known(&(scalar::int(p + ea as i64) + &s))
        }
        Kind::Coassoc => {
            m.over.known(p + q + ea as i64) && m.known(&(scalar::int(q + eb as i64) + &s))
        }
    }
}

/// Exponent ranges `(a, b)` of the window, widened downward by `kmax` so that
/// products with the linear factor to any power `<= kmax` are exact.
fn ranges(kind: Kind, win: &Window, kmax: u32) -> Result<((i32, i32), (i32, i32))> {
    let (va, vb) = kind.vars();
    let ra = win.require(va)?;
    let rb = win.require(vb)?;
    let k = kmax as i32;
    Ok(((ra.0 - k, ra.1), (rb.0 - k, rb.1)))
}

struct Series {
    poly: LaurentPoly,
}

/// Minimal `k <= kmax` with `(linear)^k · series` vanishing at every
/// certified monomial in the window. `Err` carries the offending monomial
/// and value at `kmax`.
fn minimal_k_of(
    kind: Kind,
    s: &Series,
    cert: &dyn Fn(i32, i32) -> bool,
    win: ((i32, i32), (i32, i32)),
    kmax: u32,
) -> (std::result::Result<u32, ([i32; 4], Scalar)>, usize) {
    let (va, vb) = kind.vars();
    let ((alo, ahi), (blo, bhi)) = win;
    let positions: Vec<(i32, i32)> = (alo..=ahi)
        .flat_map(|a| (blo..=bhi).map(move |b| (a, b)))
        .filter(|(a, b)| cert(*a, *b))
        .collect();
    let lin = kind.linear();
    let mut prod = s.poly.clone();
    for k in 0..=kmax {
        if k > 0 {
            prod = lin.mul(&prod);
        }
        let bad = positions.iter().find_map(|(a, b)| {
            let m = mono_of(&[(va, *a), (vb, *b)]);
            let c = prod.coeff(&m);
            (!num_traits::Zero::is_zero(&c)).then_some((m, c))
        });
        match bad {
            None => return (Ok(k), positions.len()),
            Some(b) if k == kmax => return (Err(b), positions.len()),
            Some(_) => {}
        }
    }
    unreachable!("loop returns at kmax")
}

fn label3(m: &Comodule, key: &[Idx; 3]) -> String {
    format!(
        "{}|{}|{}",
        m.over.space.label(key[0]),
        m.over.space.label(key[1]),
        m.space.label(key[2])
    )
}

fn functional_label(m: &Comodule, f: &Functional) -> String {
    crate::graded::format_combination(f.0.iter().map(|(k, c)| (format!("({})'", label3(m, k)), c)))
}

fn search(m: &Comodule, kind: Kind, f: &Functional, win: &Window, slack: u32) -> MinimalK {
    let name = kind.name();
    let bound = f.0.keys().map(|k| key_bound(m, kind, k)).max().unwrap_or(0);
    let kmax = bound as u32 + slack;
    let fail = |e: Error| MinimalK {
        k: None,
        bound,
        check: CheckResult::from_error(name, &e),
    };
    let rng = match ranges(kind, win, kmax) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let inner = {
        let (va, vb) = kind.vars();
        (win.require(va).unwrap(), win.require(vb).unwrap())
    };
    let per_w: Vec<Result<(std::result::Result<u32, Witness>, usize)>> = m
        .space
        .basis()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&w| {
            let mut comp = Composites::new(m, w);
            let mut poly = LaurentPoly::zero();
            let (va, vb) = kind.vars();
            for a in rng.0 .0..=rng.0 .1 {
                for b in rng.1 .0..=rng.1 .1 {
                    let d = difference_at(&mut comp, kind, a, b)?;
                    let c = f.pair(&d);
                    poly.add_term(mono_of(&[(va, a), (vb, b)]), c);
                }
            }
            let cert = |a: i32, b: i32| f.0.keys().all(|key| certified(m, kind, key, a, b));
            let (r, n) = minimal_k_of(kind, &Series { poly }, &cert, inner, kmax);
            Ok((
                r.map_err(|(mono, c)| Witness {
                    vector: format!("{} against {}", m.space.label(w), functional_label(m, f)),
                    multidegree: crate::formal::format_mono(&mono),
                    lhs: scalar::format(&c),
                    rhs: "0".into(),
                }),
                n,
            ))
        })
        .collect();
    let mut kbest = 0;
    let mut compared = 0;
    for r in per_w {
        match r {
            Ok((Ok(k), n)) => {
                kbest = kbest.max(k);
                compared += n;
            }
            Ok((Err(wit), _)) => {
                return MinimalK {
                    k: None,
                    bound,
                    check: CheckResult::fail(name, wit).with_detail(format!(
                        "no exponent <= {kmax} annihilates the series"
                    )),
                }
            }
            Err(e) => return fail(e),
        }
    }
    if compared == 0 {
        return MinimalK {
            k: None,
            bound,
            check: CheckResult::inconclusive(name, "no certified coefficient in the window"),
        };
    }
    MinimalK {
        k: Some(kbest),
        bound,
        check: CheckResult::pass(name, format!("k = {kbest}, proof bound {bound}")),
    }
}

/// Minimal `k` for weak cocommutativity against the functional `f`.
pub fn weak_cocomm_k(m: &Comodule, f: &Functional, win: &Window, slack: u32) -> MinimalK {
    search(m, Kind::Cocomm, f, win, slack)
}

/// Minimal `k` for weak coassociativity against the functional `f`.
pub fn weak_coassoc_k(m: &Comodule, f: &Functional, win: &Window, slack: u32) -> MinimalK {
    search(m, Kind::Coassoc, f, win, slack)
}

/// Exhaustive search over dual basis tensors.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub check: CheckResult,
    /// Minimal exponent for every functional whose series is nonzero
    /// somewhere in the window; all others have exponent 0.
    pub ks: BTreeMap<[Idx; 3], u32>,
    /// Number of functionals swept.
    pub swept: usize,
    /// Functionals whose exponent exceeds the proof bound.
    pub over_bound: Vec<[Idx; 3]>,
}

pub(crate) fn sweep(m: &Comodule, kind: Kind, max_weight: i64, win: &Window, slack: u32) -> Sweep {
    let name = kind.name();
    let keys = basis_functionals(m, max_weight);
    let empty = |check| Sweep {
        check,
        ks: BTreeMap::new(),
        swept: keys.len(),
        over_bound: vec![],
    };
    let bound_of = |key: &[Idx; 3]| key_bound(m, kind, key);
    let kmax_all = keys.iter().map(bound_of).max().unwrap_or(0) as u32 + slack;
    let rng = match ranges(kind, win, kmax_all) {
        Ok(r) => r,
        Err(e) => return empty(CheckResult::from_error(name, &e)),
    };
    let inner = {
        let (va, vb) = kind.vars();
        (win.require(va).unwrap(), win.require(vb).unwrap())
    };
    let cap = scalar::int(max_weight);
    let in_sweep = |key: &[Idx; 3]| {
        let (p, q, s) = key_weights(m, key);
        p <= max_weight && q <= max_weight && s <= cap
    };
    let vtop = m.over.space.max_int_weight().min(max_weight);
    let mtop = m
        .space
        .max_weight()
        .map(|w| if *w < cap { w.clone() } else { cap.clone() });
    type PerW = std::result::Result<Vec<([Idx; 3], std::result::Result<u32, Witness>)>, Error>;
    let per_w: Vec<PerW> = m
        .space
        .basis()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&w| {
            let mut comp = Composites::new(m, w);
            let (va, vb) = kind.vars();
            let wt = m.space.weight(w).clone();
            // Exponent sums for output weights inside the sweep.
            let Some(mtop) = mtop.clone() else {
                return Ok(vec![]);
            };
            let mmin = m.space.min_weight().cloned().unwrap_or_default();
            let vmin = scalar::int(m.over.space.min_int_weight());
            let tmax = scalar::int(2 * vtop) + &mtop;
            let tmin = &vmin + &vmin + &mmin;
            let smin = scalar::ceil_i64(&(&wt - &tmax));
            let smax = scalar::floor_i64(&(&wt - &tmin));
            let mut series: HashMap<[Idx; 3], LaurentPoly> = HashMap::new();
            for a in rng.0 .0..=rng.0 .1 {
                for b in rng.1 .0..=rng.1 .1 {
                    let s = (a + b) as i64;
                    if s < smin || s > smax {
                        continue;
                    }
                    let d = difference_at(&mut comp, kind, a, b)?;
                    for (key, c) in d.iter() {
                        if in_sweep(key) {
                            series
                                .entry(*key)
                                .or_default()
                                .add_term(mono_of(&[(va, a), (vb, b)]), c.clone());
                        }
                    }
                }
            }
            let mut out: Vec<_> = series
                .into_iter()
                .map(|(key, poly)| {
                    let kmax = bound_of(&key) as u32 + slack;
                    let cert = |a: i32, b: i32| certified(m, kind, &key, a, b);
                    let (r, _) = minimal_k_of(kind, &Series { poly }, &cert, inner, kmax);
                    let r = r.map_err(|(mono, c)| Witness {
                        vector: format!("{} against ({})'", m.space.label(w), label3(m, &key)),
                        multidegree: crate::formal::format_mono(&mono),
                        lhs: scalar::format(&c),
                        rhs: "0".into(),
                    });
                    (key, r)
                })
                .collect();
            out.sort_by_key(|(k, _)| *k);
            Ok(out)
        })
        .collect();
    let mut ks: BTreeMap<[Idx; 3], u32> = BTreeMap::new();
    for r in per_w {
        match r {
            Ok(items) => {
                for (key, res) in items {
                    match res {
                        Ok(k) => {
                            let e = ks.entry(key).or_insert(0);
                            *e = (*e).max(k);
                        }
                        Err(wit) => {
                            return Sweep {
                                check: CheckResult::fail(name, wit).with_detail(format!(
                                    "exponent search exceeded the proof bound plus {slack}"
                                )),
                                ks,
                                swept: keys.len(),
                                over_bound: vec![],
                            }
                        }
                    }
                }
            }
            Err(e) => return empty(CheckResult::from_error(name, &e)),
        }
    }
    let over_bound: Vec<[Idx; 3]> = ks
        .iter()
        .filter(|(key, k)| **k as i64 > bound_of(key))
        .map(|(key, _)| *key)
        .collect();
    let kmax_found = ks.values().copied().max().unwrap_or(0);
    let check = CheckResult::pass(
        name,
        format!(
            "{} functionals with component weights <= {max_weight}; max k = {kmax_found}; {} above the proof bound",
            keys.len(),
            over_bound.len()
        ),
    );
    Sweep {
        check,
        ks,
        swept: keys.len(),
        over_bound,
    }
}

pub fn weak_cocomm_sweep(m: &Comodule, max_weight: i64, win: &Window, slack: u32) -> Sweep {
    sweep(m, Kind::Cocomm, max_weight, win, slack)
}

pub fn weak_coassoc_sweep(m: &Comodule, max_weight: i64, win: &Window, slack: u32) -> Sweep {
    sweep(m, Kind::Coassoc, max_weight, win, slack)
}

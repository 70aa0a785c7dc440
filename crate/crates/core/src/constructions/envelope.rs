use std::cell::{Cell, RefCell};
use std::collections::HashMap;

use crate::checks::{CheckResult, Report, Witness};
use crate::graded::{GradedSpace, Idx, Sparse, Vector};
use crate::scalar::{self, Scalar};
use crate::structures::{VertexAlgebra, VertexLieAlgebra};
use crate::{Error, Result};

use super::affine::{virasoro_central, Affinization, Convention, LieVector, Mode};

/// Treatment of weight-zero creation modes such as `K_{-1}`, which must be
/// central. Without one of these the weight zero piece is infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralHandling {
    /// Keep monomials with at most this many weight-zero factors; products
    /// of more vanish.
    Nilpotent(u32),
    /// Every weight-zero creation mode acts as this scalar.
    Specialize(Scalar),
}

impl Default for CentralHandling {
    fn default() -> Self {
        CentralHandling::Nilpotent(1)
    }
}

/// Element of the envelope as a combination of interned PBW monomials.
pub type State = Sparse<u32>;

#[derive(Default)]
struct Interner {
    ids: HashMap<Vec<Mode>, u32>,
    monos: Vec<Vec<Mode>>,
    weights: Vec<i64>,
}

/// Reordering steps allowed before giving up.
const STEP_LIMIT: u64 = 50_000_000;

/// The enveloping vertex algebra `U(L^) ⊗_{U(L^+)} F`, realized on sorted
/// monomials in the reduced creation modes.
///
/// The affinization acts by reordering with its bracket. Modes of a
/// composite state `v_n m` come from
/// `(v_n m)_k = Σ_i C(i-n-1, i) (v_{n-i} m_{k+i} + (-1)^{n+1} m_{n+k-i} v_i)`.
pub struct Envelope {
    pub aff: Affinization,
    pub central: CentralHandling,
    pub cutoff: i64,
    interner: RefCell<Interner>,
    acts: RefCell<HashMap<(Mode, u32), State>>,
    modes: RefCell<HashMap<(u32, i64, u32), State>>,
    steps: Cell<u64>,
}

impl Envelope {
    pub fn new(
        lie: &VertexLieAlgebra,
        cutoff: i64,
        convention: Convention,
        central: CentralHandling,
    ) -> Result<Self> {
        if cutoff < 0 {
            return Err(Error::OutOfRange(format!("weight cutoff {cutoff} is negative")));
        }
        let env = Envelope {
            aff: Affinization::new(lie, convention),
            central,
            cutoff,
            interner: RefCell::new(Interner::default()),
            acts: RefCell::new(HashMap::new()),
            modes: RefCell::new(HashMap::new()),
            steps: Cell::new(0),
        };
        env.intern(Vec::new());
        env.check_zero_modes()?;
        Ok(env)
    }

    fn check_zero_modes(&self) -> Result<()> {
        let zero = self.aff.basis(0, true);
        for &z in &zero {
            for w in -self.cutoff - 1..=self.cutoff + 1 {
                for creation in [true, false] {
                    for y in self.aff.basis(w, creation) {
                        let b = self.aff.bracket(z, y);
                        if matches!(&b, Ok(x) if !x.is_zero()) {
                            return Err(Error::Unsupported(format!(
                                "weight-zero creation mode {} is not central",
                                self.aff.label(z)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn is_zero_mode(&self, m: Mode) -> bool {
        m.1 < 0 && self.aff.weight(m) == 0
    }

    fn intern(&self, mono: Vec<Mode>) -> u32 {
        let mut it = self.interner.borrow_mut();
        if let Some(&id) = it.ids.get(&mono) {
            return id;
        }
        let id = it.monos.len() as u32;
        let w = mono.iter().map(|&m| self.aff.weight(m)).sum();
        it.ids.insert(mono.clone(), id);
        it.monos.push(mono);
        it.weights.push(w);
        id
    }

    fn mono(&self, id: u32) -> Vec<Mode> {
        self.interner.borrow().monos[id as usize].clone()
    }

    /// Weight of an interned monomial.
    pub fn mono_weight(&self, id: u32) -> i64 {
        self.interner.borrow().weights[id as usize]
    }

    /// `v_{n_1} ... v_{n_r} 1`, or `1` for the vacuum.
    pub fn mono_label(&self, id: u32) -> String {
        let mono = self.mono(id);
        let mut s: String = mono.iter().map(|&m| self.aff.label(m)).collect();
        s.push('1');
        s
    }

    pub fn vacuum(&self) -> State {
        State::basis(0)
    }

    pub fn format(&self, s: &State) -> String {
        crate::graded::format_combination(s.iter().map(|(id, c)| (self.mono_label(*id), c)))
    }

    fn tick(&self) -> Result<()> {
        let n = self.steps.get() + 1;
        self.steps.set(n);
        if n > STEP_LIMIT {
            return Err(Error::CutoffExceeded(self.cutoff));
        }
        Ok(())
    }

    /// A reduced basis mode acting on a monomial.
    fn act(&self, x: Mode, id: u32) -> Result<State> {
        if self.aff.weight(x) + self.mono_weight(id) < 0 {
            return Ok(State::new());
        }
        if let Some(s) = self.acts.borrow().get(&(x, id)) {
            return Ok(s.clone());
        }
        self.tick()?;
        let mono = self.mono(id);
        let creation = x.1 < 0;
        let out = if creation && self.is_zero_mode(x) {
            match &self.central {
                CentralHandling::Specialize(k) => State::term(id, k.clone()),
                CentralHandling::Nilpotent(p) => {
                    let count = mono.iter().filter(|&&m| self.is_zero_mode(m)).count();
                    if count as u32 >= *p {
                        State::new()
                    } else {
                        State::basis(self.intern(self.insert_sorted(&mono, x)))
                    }
                }
            }
        } else if mono.is_empty() {
            if creation {
                State::basis(self.intern(vec![x]))
            } else {
                State::new()
            }
        } else if creation && self.aff.key(x) <= self.aff.key(mono[0]) {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push(x);
            m.extend_from_slice(&mono);
            State::basis(self.intern(m))
        } else {
            // x b rest = b (x rest) + [x, b] rest
            let b = mono[0];
            let rest = self.intern(mono[1..].to_vec());
            let mut out = self.act_state(b, &self.act(x, rest)?)?;
            let br = self.aff.bracket(x, b)?;
            out.add_assign(&self.act_lie(&br, &State::basis(rest))?);
            out
        };
        self.acts.borrow_mut().insert((x, id), out.clone());
        Ok(out)
    }

    fn insert_sorted(&self, mono: &[Mode], x: Mode) -> Vec<Mode> {
        let pos = mono
            .iter()
            .position(|&m| self.aff.key(x) <= self.aff.key(m))
            .unwrap_or(mono.len());
        let mut m = mono.to_vec();
        m.insert(pos, x);
        m
    }

    fn act_state(&self, x: Mode, s: &State) -> Result<State> {
        let mut out = State::new();
        for (id, c) in s.iter() {
            out.add_scaled(&self.act(x, *id)?, c);
        }
        Ok(out)
    }

    fn act_lie(&self, x: &LieVector, s: &State) -> Result<State> {
        let mut out = State::new();
        for (m, c) in x.iter() {
            out.add_scaled(&self.act_state(*m, s)?, c);
        }
        Ok(out)
    }

    /// `v_n` acting on a state, for a basis vector `v` of the Lie algebra.
    pub fn apply(&self, v: Idx, n: i64, s: &State) -> Result<State> {
        self.act_lie(&self.aff.reduce(v, n), s)
    }

    /// `a_k w` for interned monomials `a` and `w`.
    fn mode(&self, a: u32, k: i64, w: u32) -> Result<State> {
        let (wa, ww) = (self.mono_weight(a), self.mono_weight(w));
        if wa + ww - k - 1 < 0 {
            return Ok(State::new());
        }
        if let Some(s) = self.modes.borrow().get(&(a, k, w)) {
            return Ok(s.clone());
        }
        self.tick()?;
        let mono = self.mono(a);
        let out = if mono.is_empty() {
            if k == -1 {
                State::basis(w)
            } else {
                State::new()
            }
        } else {
            let (v, n) = mono[0];
            let m = self.intern(mono[1..].to_vec());
            let wm = self.mono_weight(m);
            let wv = self.aff.lie.space.int_weight(v);
            let sign = scalar::int(scalar::sign(n + 1));
            let mut out = State::new();
            let imax = (wm + ww - k - 1).max(wv + ww - 1);
            for i in 0..=imax {
                let c = scalar::binomial(i - n - 1, i);
                if i < wm + ww - k {
                    let inner = self.mode(m, k + i, w)?;
                    if !inner.is_zero() {
                        out.add_scaled(&self.apply(v, n - i, &inner)?, &c);
                    }
                }
                if i < wv + ww {
                    let inner = self.apply(v, i, &State::basis(w))?;
                    if !inner.is_zero() {
                        out.add_scaled(&self.mode_state(m, n + k - i, &inner)?, &(&c * &sign));
                    }
                }
            }
            out
        };
        self.modes.borrow_mut().insert((a, k, w), out.clone());
        Ok(out)
    }

    fn mode_state(&self, a: u32, k: i64, s: &State) -> Result<State> {
        let mut out = State::new();
        for (w, c) in s.iter() {
            out.add_scaled(&self.mode(a, k, *w)?, c);
        }
        Ok(out)
    }

    /// PBW monomials of weight `<= cutoff`, weight by weight.
    pub fn basis(&self) -> Vec<u32> {
        let mut gens: Vec<Mode> = Vec::new();
        for w in 0..=self.cutoff {
            gens.extend(self.aff.basis(w, true));
        }
        gens.sort_by_key(|&m| self.aff.key(m));
        let max_zero = match &self.central {
            CentralHandling::Nilpotent(p) => *p as usize,
            CentralHandling::Specialize(_) => 0,
        };
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(&gens, 0, 0, 0, max_zero, &mut cur, &mut out);
        out.sort_by_key(|&id| (self.mono_weight(id), self.mono_label(id)));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        gens: &[Mode],
        start: usize,
        weight: i64,
        zeros: usize,
        max_zero: usize,
        cur: &mut Vec<Mode>,
        out: &mut Vec<u32>,
    ) {
        out.push(self.intern(cur.clone()));
        for (i, &g) in gens.iter().enumerate().skip(start) {
            let w = self.aff.weight(g);
            let z = self.is_zero_mode(g) as usize;
            if weight + w > self.cutoff || zeros + z > max_zero {
                continue;
            }
            cur.push(g);
            self.enumerate(gens, i, weight + w, zeros + z, max_zero, cur, out);
            cur.pop();
        }
    }

    /// Dimensions of the weight pieces `0..=cutoff`.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut dims = vec![0; self.cutoff as usize + 1];
        for id in self.basis() {
            dims[self.mono_weight(id) as usize] += 1;
        }
        dims
    }

    /// The envelope truncated at the cutoff weight, as a vertex algebra.
    pub fn vertex_algebra(&self) -> Result<VertexAlgebra> {
        let basis = self.basis();
        let space = GradedSpace::new(
            basis
                .iter()
                .map(|&id| (scalar::int(self.mono_weight(id)), vec![self.mono_label(id)])),
        )?;
        let index: HashMap<u32, Idx> = basis
            .iter()
            .map(|&id| (id, space.index_of(&self.mono_label(id)).expect("label present")))
            .collect();
        let to_vector = |s: &State| -> Result<Vector> {
            let mut v = Vector::new();
            for (id, c) in s.iter() {
                let i = index.get(id).ok_or(Error::CutoffExceeded(self.cutoff))?;
                v.add_term(*i, c.clone());
            }
            Ok(v)
        };
        let mut products = Vec::new();
        for &a in &basis {
            for &w in &basis {
                let s = self.mono_weight(a) + self.mono_weight(w) - 1;
                for k in (s - self.cutoff)..=s {
                    let v = to_vector(&self.mode(a, k, w)?)?;
                    if !v.is_zero() {
                        products.push(((index[&a], k, index[&w]), v));
                    }
                }
            }
        }
        VertexAlgebra::new(
            format!("envelope({}, {})", self.aff.lie.name, self.cutoff),
            space,
            Vector::basis(index[&0]),
            products,
            Some(self.cutoff),
            None,
        )
    }

    /// `[L(j), L(k)] = (j-k) L(j+k) + (j^3-j)/12 δ_{j,-k} d K_{-1}` with
    /// `L(j) = ω_{j+1}`, on every monomial of weight `<= cutoff`, for
    /// `|j|, |k| <= bound`.
    pub fn check_virasoro(&self, omega: &str, central: &str, d: &Scalar, bound: i64) -> Report {
        const NAME: &str = "envelope-virasoro";
        let mut r = Report::new(
            format!("envelope({}, {})", self.aff.lie.name, self.cutoff),
            format!("|j|, |k| <= {bound}, weight <= {}", self.cutoff),
        );
        let space = &self.aff.lie.space;
        let (Ok(w), Ok(kc)) = (space.index_of(omega), space.index_of(central)) else {
            r.push(CheckResult::from_error(
                NAME,
                &Error::UnknownLabel(format!("{omega} or {central}")),
            ));
            return r;
        };
        let l = |j: i64, s: &State| self.apply(w, j + 1, s);
        let run = || -> Result<CheckResult> {
            let mut compared = 0usize;
            for id in self.basis() {
                let v = State::basis(id);
                for j in -bound..=bound {
                    for k in -bound..=bound {
                        let mut lhs = l(j, &l(k, &v)?)?;
                        lhs.sub_assign(&l(k, &l(j, &v)?)?);
                        let mut rhs = l(j + k, &v)?.scaled(&scalar::int(j - k));
                        if j + k == 0 {
                            let c = virasoro_central(j) * d;
                            rhs.add_scaled(&self.apply(kc, -1, &v)?, &c);
                        }
                        compared += 1;
                        if lhs != rhs {
                            return Ok(CheckResult::fail(
                                NAME,
                                Witness {
                                    vector: self.mono_label(id),
                                    multidegree: format!("[L({j}), L({k})]"),
                                    lhs: self.format(&lhs),
                                    rhs: self.format(&rhs),
                                },
                            ));
                        }
                    }
                }
            }
            Ok(CheckResult::pass(NAME, format!("{compared} commutators compared")))
        };
        r.push(run().unwrap_or_else(|e| CheckResult::from_error(NAME, &e)));
        r
    }
}

/// Enveloping vertex algebra of `lie` up to weight `cutoff`.
pub fn envelope(
    lie: &VertexLieAlgebra,
    cutoff: i64,
    convention: Convention,
    central: CentralHandling,
) -> Result<VertexAlgebra> {
    Envelope::new(lie, cutoff, convention, central)?.vertex_algebra()
}

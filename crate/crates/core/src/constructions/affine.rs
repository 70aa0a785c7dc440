use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_traits::Zero;

use crate::checks::{CheckResult, Report, Witness};
use crate::graded::{Idx, Sparse, Vector};
use crate::scalar::{self, Scalar};
use crate::structures::VertexLieAlgebra;
use crate::{Error, Result};

/// `v_n`: a basis vector of the vertex Lie algebra together with a mode.
pub type Mode = (Idx, i64);

/// Element of the affinization, in the reduced basis.
pub type LieVector = Sparse<Mode>;

/// Binomial convention in `[u_m, v_n] = Σ_i C(·, i) (u_i v)_{m+n-i}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `C(m, i)`, the usual commutator formula.
    #[default]
    Standard,
    /// `C(n, i)`.
    Alternate,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Standard => "standard",
            Convention::Alternate => "alternate",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Convention::Standard),
            "alternate" => Ok(Convention::Alternate),
            _ => Err(Error::OutOfRange(format!(
                "convention must be `standard` or `alternate`, got `{s}`"
            ))),
        }
    }
}

/// Modes of one weight on one side of the splitting, modulo
/// `(Dv)_n + n v_{n-1}`.
#[derive(Debug)]
struct Group {
    basis: Vec<Mode>,
    reduce: BTreeMap<Mode, LieVector>,
}

/// `(L ⊗ F[t, t^{-1}]) / im(D ⊗ 1 + 1 ⊗ d/dt)` with `wt v_n = wt v - n - 1`.
///
/// Each weight splits into creation modes (`n < 0`) and the rest, and the
/// quotient relation never mixes the two. Within a weight the reduction
/// expresses modes of higher-weight vectors through lower ones, so
/// `(Da)_{-3} = 3 a_{-4}`. Relations `D v` for vectors at the top weight of
/// a truncated `L` are unknown and left out: the construction treats `L` as
/// generated under `D` by its represented part.
pub struct Affinization {
    pub lie: VertexLieAlgebra,
    pub convention: Convention,
    rank: Vec<usize>,
    groups: RefCell<BTreeMap<(i64, bool), Rc<Group>>>,
    brackets: RefCell<HashMap<(Mode, Mode), LieVector>>,
}

impl Affinization {
    pub fn new(lie: &VertexLieAlgebra, convention: Convention) -> Self {
        let mut order: Vec<Idx> = lie.space.basis().collect();
        order.sort_by(|a, b| lie.space.label(*a).cmp(lie.space.label(*b)));
        let mut rank = vec![0; order.len()];
        for (r, i) in order.into_iter().enumerate() {
            rank[i as usize] = r;
        }
        Affinization {
            lie: lie.clone(),
            convention,
            rank,
            groups: RefCell::new(BTreeMap::new()),
            brackets: RefCell::new(HashMap::new()),
        }
    }

    pub fn weight(&self, (v, n): Mode) -> i64 {
        self.lie.space.int_weight(v) - n - 1
    }

    /// Total order on modes: mode ascending, then label ascending.
    pub fn key(&self, (v, n): Mode) -> (i64, usize) {
        (n, self.rank[v as usize])
    }

    pub fn label(&self, (v, n): Mode) -> String {
        format!("{}_{{{}}}", self.lie.space.label(v), n)
    }

    pub fn format(&self, x: &LieVector) -> String {
        crate::graded::format_combination(x.iter().map(|(m, c)| (self.label(*m), c)))
    }

    fn group(&self, w: i64, creation: bool) -> Rc<Group> {
        if let Some(g) = self.groups.borrow().get(&(w, creation)) {
            return g.clone();
        }
        let g = Rc::new(self.build_group(w, creation));
        self.groups.borrow_mut().insert((w, creation), g.clone());
        g
    }

    fn build_group(&self, w: i64, creation: bool) -> Group {
        let space = &self.lie.space;
        let on_side = |n: i64| (n < 0) == creation;
        let mut columns: Vec<Mode> = space
            .basis()
            .map(|v| (v, space.int_weight(v) - w - 1))
            .filter(|&(_, n)| on_side(n))
            .collect();
        let mut rows: Vec<LieVector> = Vec::new();
        for v in space.basis() {
            let n = space.int_weight(v) - w;
            if !on_side(n) {
                continue;
            }
            let Ok(dv) = self.lie.d_basis(v) else {
                continue;
            };
            let mut row: LieVector = dv.iter().map(|(c, x)| ((*c, n), x.clone())).collect();
            if n != 0 {
                row.add_term((v, n - 1), scalar::int(n));
            }
            if !row.is_zero() {
                rows.push(row);
            }
        }
        // Eliminate modes of higher-weight vectors first.
        columns.sort_by_key(|&(v, _)| (std::cmp::Reverse(space.int_weight(v)), std::cmp::Reverse(v)));
        let mut pivots: Vec<(Mode, LieVector)> = Vec::new();
        for &col in &columns {
            let Some(r) = rows.iter().position(|row| row.coeff(&col).is_some()) else {
                continue;
            };
            let row = rows.swap_remove(r);
            let row = row.scaled(&(scalar::one() / row.get(&col)));
            for other in rows.iter_mut().chain(pivots.iter_mut().map(|(_, p)| p)) {
                let c = other.get(&col);
                if !c.is_zero() {
                    other.add_scaled(&row, &-c);
                }
            }
            pivots.push((col, row));
        }
        let mut reduce = BTreeMap::new();
        let mut eliminated = BTreeSet::new();
        for (col, row) in pivots {
            eliminated.insert(col);
            reduce.insert(col, row.filtered(|m| *m != col).neg());
        }
        let mut basis: Vec<Mode> = columns.into_iter().filter(|c| !eliminated.contains(c)).collect();
        basis.sort_by_key(|&m| self.key(m));
        Group { basis, reduce }
    }

    /// Reduced basis of the weight `w` creation modes (`creation`) or of the
    /// remaining modes.
    pub fn basis(&self, w: i64, creation: bool) -> Vec<Mode> {
        self.group(w, creation).basis.clone()
    }

    /// `v_n` in the reduced basis.
    pub fn reduce(&self, v: Idx, n: i64) -> LieVector {
        let g = self.group(self.weight((v, n)), n < 0);
        match g.reduce.get(&(v, n)) {
            Some(x) => x.clone(),
            None => LieVector::basis((v, n)),
        }
    }

    /// `x_n` for a vector `x` of the Lie algebra.
    pub fn reduce_vector(&self, x: &Vector, n: i64) -> LieVector {
        let mut out = LieVector::new();
        for (v, c) in x.iter() {
            out.add_scaled(&self.reduce(*v, n), c);
        }
        out
    }

    /// Bracket of two reduced basis modes.
    pub fn bracket(&self, a: Mode, b: Mode) -> Result<LieVector> {
        if let Some(x) = self.brackets.borrow().get(&(a, b)) {
            return Ok(x.clone());
        }
        let ((u, m), (v, n)) = (a, b);
        let mut out = LieVector::new();
        for i in 0..=self.lie.max_mode(u, v) {
            let c = match self.convention {
                Convention::Standard => scalar::binomial(m, i),
                Convention::Alternate => scalar::binomial(n, i),
            };
            if c.is_zero() {
                continue;
            }
            let p = self.lie.product_basis(u, i, v)?;
            if !p.is_zero() {
                out.add_scaled(&self.reduce_vector(&p, m + n - i), &c);
            }
        }
        self.brackets.borrow_mut().insert((a, b), out.clone());
        Ok(out)
    }

    pub fn bracket_vectors(&self, x: &LieVector, y: &LieVector) -> Result<LieVector> {
        let mut out = LieVector::new();
        for (a, p) in x.iter() {
            for (b, q) in y.iter() {
                out.add_scaled(&self.bracket(*a, *b)?, &(p * q));
            }
        }
        Ok(out)
    }

    /// Reduced basis modes `v_n` with `|n| <= bound`.
    pub fn basis_within(&self, bound: i64) -> Vec<Mode> {
        let mut set = BTreeSet::new();
        for v in self.lie.space.basis() {
            for n in -bound..=bound {
                for m in self.basis(self.weight((v, n)), n < 0) {
                    if m.1.abs() <= bound {
                        set.insert(m);
                    }
                }
            }
        }
        let mut out: Vec<Mode> = set.into_iter().collect();
        out.sort_by_key(|&m| self.key(m));
        out
    }

    /// Antisymmetry and the Jacobi identity by brute force over reduced
    /// basis modes with `|n| <= bound`.
    pub fn check_lie_axioms(&self, bound: i64) -> Report {
        let window = format!("|n| <= {bound}");
        let mut r = Report::new(format!("affine({}, {})", self.lie.name, self.convention), &window);
        let basis = self.basis_within(bound);
        r.push(self.lie_check("antisymmetry", &basis, 2, |t| {
            let lhs = self.bracket(t[0], t[1])?;
            let rhs = self.bracket(t[1], t[0])?.neg();
            Ok((lhs, rhs))
        }));
        r.push(self.lie_check("lie-jacobi", &basis, 3, |t| {
            let (x, y, z) = (LieVector::basis(t[0]), LieVector::basis(t[1]), LieVector::basis(t[2]));
            let mut lhs = self.bracket_vectors(&x, &self.bracket_vectors(&y, &z)?)?;
            lhs.add_assign(&self.bracket_vectors(&y, &self.bracket_vectors(&z, &x)?)?);
            lhs.add_assign(&self.bracket_vectors(&z, &self.bracket_vectors(&x, &y)?)?);
            Ok((lhs, LieVector::new()))
        }));
        r
    }

    fn lie_check(
        &self,
        name: &str,
        basis: &[Mode],
        arity: usize,
        f: impl Fn(&[Mode]) -> Result<(LieVector, LieVector)>,
    ) -> CheckResult {
        let mut tuple = vec![0usize; arity];
        let (mut compared, mut skipped) = (0usize, 0usize);
        if basis.is_empty() {
            return CheckResult::pass(name, "no modes in range");
        }
        loop {
            let modes: Vec<Mode> = tuple.iter().map(|&i| basis[i]).collect();
            match f(&modes) {
                Ok((lhs, rhs)) => {
                    compared += 1;
                    if lhs != rhs {
                        let labels: Vec<String> = modes.iter().map(|m| self.label(*m)).collect();
                        return CheckResult::fail(
                            name,
                            Witness {
                                vector: labels.join(", "),
                                multidegree: "-".into(),
                                lhs: self.format(&lhs),
                                rhs: self.format(&rhs),
                            },
                        );
                    }
                }
                Err(Error::IncompleteData(_)) => skipped += 1,
                Err(e) => return CheckResult::from_error(name, &e),
            }
            let mut i = 0;
            loop {
                if i == arity {
                    let detail = format!("{compared} tuples compared, {skipped} need data above the top weight");
                    return if compared == 0 {
                        CheckResult::inconclusive(name, detail)
                    } else {
                        CheckResult::pass(name, detail)
                    };
                }
                tuple[i] += 1;
                if tuple[i] < basis.len() {
                    break;
                }
                tuple[i] = 0;
                i += 1;
            }
        }
    }
}

/// Affinization of `lie` together with the Lie axiom verdict on modes
/// `|n| <= mode_bound`.
pub fn affinize(lie: &VertexLieAlgebra, mode_bound: i64, convention: Convention) -> (Affinization, Report) {
    let a = Affinization::new(lie, convention);
    let r = a.check_lie_axioms(mode_bound);
    (a, r)
}

/// Scalar helper: `(j^3 - j) / 12`.
pub(crate) fn virasoro_central(j: i64) -> Scalar {
    scalar::ratio(j * j * j - j, 12)
}

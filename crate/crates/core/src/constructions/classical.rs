use std::collections::HashMap;

use serde::Serialize;

use crate::checks::{CheckResult, Report, Status, Witness};
use crate::graded::{DualFunctional, GradedSpace, Idx, Sparse, Tensor2, Tensor3};
use crate::scalar;
use crate::{Error, Result};

/// Universal enveloping algebra of the abelian Lie algebra on `e1, ..., en`
/// up to a degree cutoff, with the comultiplication induced from the
/// multiplication through the dual-basis identification
/// `Φ: u ↦ u'`: `Δ = (Φ ⊗ Φ)^{-1} Δ^* Φ` with `Δ^*(u')(v ⊗ w) = u'(vw)`.
#[derive(Clone, Debug)]
pub struct BialgebraData {
    pub dim: usize,
    pub degree: usize,
    /// Sorted generator multisets, graded by degree.
    pub space: GradedSpace,
    monomials: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, Idx>,
}

/// Induced and multiplicative coproducts of one basis monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaComparison {
    pub monomial: String,
    pub induced: String,
    pub multiplicative: String,
    pub agree: bool,
}

fn monomial_label(m: &[usize]) -> String {
    if m.is_empty() {
        return "1".into();
    }
    let mut s = String::new();
    let mut i = 0;
    while i < m.len() {
        let j = m[i..].iter().take_while(|&&g| g == m[i]).count();
        s.push_str(&format!("e{}", m[i] + 1));
        if j > 1 {
            s.push_str(&format!("^{j}"));
        }
        i += j;
    }
    s
}

fn multisets(dim: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.last().copied().unwrap_or(0);
            for g in start..dim {
                let mut n: Vec<usize> = m.clone();
                n.push(g);
                next.push(n);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl BialgebraData {
    pub fn new(dim: usize, degree: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange("the Lie algebra needs dimension >= 1".into()));
        }
        let monomials = multisets(dim, degree);
        let space = GradedSpace::new(
            monomials
                .iter()
                .map(|m| (scalar::int(m.len() as i64), vec![monomial_label(m)])),
        )?;
        let mut ordered = vec![Vec::new(); monomials.len()];
        let mut index = HashMap::new();
        for m in monomials {
            let i = space.index_of(&monomial_label(&m))?;
            index.insert(m.clone(), i);
            ordered[i as usize] = m;
        }
        Ok(BialgebraData {
            dim,
            degree,
            space,
            monomials: ordered,
            index,
        })
    }

    pub fn unit(&self) -> Idx {
        self.index[&Vec::new()]
    }

    /// Basis index of the generator `e_i`, counting from 1.
    pub fn generator(&self, i: usize) -> Idx {
        self.index[&vec![i - 1]]
    }

    /// Product of basis monomials, `None` above the degree cutoff.
    pub fn multiply(&self, a: Idx, b: Idx) -> Option<Idx> {
        let mut m = self.monomials[a as usize].clone();
        m.extend_from_slice(&self.monomials[b as usize]);
        m.sort_unstable();
        self.index.get(&m).copied()
    }

    /// `Φ(u) = u'`.
    pub fn phi(&self, u: Idx) -> DualFunctional<Idx> {
        DualFunctional::dual_basis(u)
    }

    /// `Δ^*(f)` as a functional on `U ⊗ U`, restricted to pairs whose
    /// product lies below the cutoff.
    pub fn delta_star(&self, f: &DualFunctional<Idx>) -> Sparse<[Idx; 2]> {
        let mut out = Sparse::new();
        for v in self.space.basis() {
            for w in self.space.basis() {
                if let Some(p) = self.multiply(v, w) {
                    if let Some(c) = f.0.coeff(&p) {
                        out.add_term([v, w], c.clone());
                    }
                }
            }
        }
        out
    }

    /// `(Φ ⊗ Φ)^{-1} Δ^* Φ(u)`.
    pub fn delta(&self, u: Idx) -> Tensor2 {
        // Φ ⊗ Φ sends v ⊗ w to v' ⊗ w', so its inverse keeps the keys.
        self.delta_star(&self.phi(u))
    }

    /// `Δ` extended multiplicatively from `Δ(e_i) = e_i ⊗ 1 + 1 ⊗ e_i`.
    pub fn multiplicative_delta(&self, u: Idx) -> Tensor2 {
        let one = self.unit();
        let mut acc = Tensor2::basis([one, one]);
        for &g in &self.monomials[u as usize] {
            let e = self.index[&vec![g]];
            let prim = Tensor2::from_iter([([e, one], scalar::one()), ([one, e], scalar::one())]);
            let mut next = Tensor2::new();
            for ([a, b], x) in acc.iter() {
                for ([c, d], y) in prim.iter() {
                    if let (Some(p), Some(q)) = (self.multiply(*a, *c), self.multiply(*b, *d)) {
                        next.add_term([p, q], x * y);
                    }
                }
            }
            acc = next;
        }
        acc
    }

    fn delta_tensor(&self, t: &Tensor2, left: bool) -> Tensor3 {
        let mut out = Tensor3::new();
        for ([a, b], x) in t.iter() {
            let split = if left { *a } else { *b };
            for ([p, q], y) in self.delta(split).iter() {
                let key = if left { [*p, *q, *b] } else { [*a, *p, *q] };
                out.add_term(key, x * y);
            }
        }
        out
    }

    fn format_coefficient(&self, [a, b, c]: &[Idx; 3], x: &crate::Scalar) -> String {
        format!(
            "{}*{}|{}|{}",
            scalar::format(x),
            self.space.label(*a),
            self.space.label(*b),
            self.space.label(*c)
        )
    }

    pub fn format_tensor(&self, t: &Tensor2) -> String {
        self.space.format_tensor2(&self.space, t)
    }

    /// Unit and primitive rules, coassociativity, cocommutativity and the
    /// counit law for the induced `Δ`, by brute force over the basis.
    pub fn check(&self) -> Report {
        let mut r = Report::new(
            format!("U(abelian, dim {})", self.dim),
            format!("degree <= {}", self.degree),
        );
        let one = self.unit();
        let fail = |name: &str, u: Idx, lhs: String, rhs: String| {
            CheckResult::fail(
                name,
                Witness {
                    vector: self.space.label(u).into(),
                    multidegree: format!("degree {}", self.monomials[u as usize].len()),
                    lhs,
                    rhs,
                },
            )
        };
        let unit = Tensor2::basis([one, one]);
        r.push(if self.delta(one) == unit {
            CheckResult::pass("delta-unit", "Δ(1) = 1⊗1")
        } else {
            fail("delta-unit", one, self.format_tensor(&self.delta(one)), self.format_tensor(&unit))
        });
        let mut prim = CheckResult::pass("delta-primitive", format!("{} generators", self.dim));
        let gens = if self.degree >= 1 { self.dim } else { 0 };
        for i in 1..=gens {
            let e = self.generator(i);
            let want = Tensor2::from_iter([([e, one], scalar::one()), ([one, e], scalar::one())]);
            let got = self.delta(e);
            if got != want {
                prim = fail("delta-primitive", e, self.format_tensor(&got), self.format_tensor(&want));
                break;
            }
        }
        r.push(prim);
        let mut coassoc = CheckResult::pass("coassociativity", format!("{} monomials", self.space.dim()));
        let mut cocomm = CheckResult::pass("cocommutativity", format!("{} monomials", self.space.dim()));
        let mut counit = CheckResult::pass("counit", format!("{} monomials", self.space.dim()));
        for u in self.space.basis() {
            let d = self.delta(u);
            let (l, rr) = (self.delta_tensor(&d, true), self.delta_tensor(&d, false));
            if coassoc.status == Status::Pass && l != rr {
                let m = l.first_difference(&rr).expect("tensors differ");
                coassoc = fail(
                    "coassociativity",
                    u,
                    self.format_coefficient(&m, &l.get(&m)),
                    self.format_coefficient(&m, &rr.get(&m)),
                );
            }
            let t = d.map_keys(|[a, b]| [b, a]);
            if cocomm.status == Status::Pass && t != d {
                cocomm = fail("cocommutativity", u, self.format_tensor(&t), self.format_tensor(&d));
            }
            let mut left = Sparse::<Idx>::new();
            for ([a, b], x) in d.iter() {
                if *a == one {
                    left.add_term(*b, x.clone());
                }
            }
            if counit.status == Status::Pass && left != Sparse::basis(u) {
                counit = fail("counit", u, self.space.format_vector(&left), self.space.label(u).into());
            }
        }
        r.push(counit);
        r.push(coassoc);
        r.push(cocomm);
        r
    }

    /// Induced against multiplicative coproduct on every basis monomial.
    pub fn comparison(&self) -> Vec<DeltaComparison> {
        self.space
            .basis()
            .map(|u| {
                let (a, b) = (self.delta(u), self.multiplicative_delta(u));
                DeltaComparison {
                    monomial: self.space.label(u).into(),
                    induced: self.format_tensor(&a),
                    multiplicative: self.format_tensor(&b),
                    agree: a == b,
                }
            })
            .collect()
    }

    /// `Δ` table rows `u -> Δ(u)`.
    pub fn delta_table(&self) -> Vec<(String, String)> {
        self.space
            .basis()
            .map(|u| (self.space.label(u).to_string(), self.format_tensor(&self.delta(u))))
            .collect()
    }
}

/// Enveloping bialgebra of the abelian Lie algebra of dimension `dim`, up to
/// degree `degree`.
pub fn classical_enveloping(dim: usize, degree: usize) -> Result<BialgebraData> {
    BialgebraData::new(dim, degree)
}

use std::collections::BTreeMap;

use crate::graded::{GradedSpace, Idx, Vector};
use crate::scalar::{self, Scalar};
use crate::structures::{Comodule, VertexAlgebra, VertexCoalgebra, VertexLieAlgebra};
use crate::{Error, Result};

use super::dual::dualize;

/// The one-dimensional vertex algebra spanned by the vacuum.
pub fn trivial_algebra() -> VertexAlgebra {
    let space = GradedSpace::from_int_pieces(&[(0, vec!["1"])]).expect("valid space");
    VertexAlgebra::new(
        "trivial",
        space,
        Vector::basis(0),
        [((0, -1, 0), Vector::basis(0))],
        None,
        None,
    )
    .expect("valid algebra")
}

/// Dual of [`trivial_algebra`]: `Δ_{-1}(1') = 1' ⊗ 1'`.
pub fn trivial_coalgebra() -> VertexCoalgebra {
    let mut c = dualize(&trivial_algebra()).expect("valid coalgebra");
    c.name = "trivial".into();
    c
}

/// Label of `t^k` in [`commutative`].
pub fn power_label(k: i64) -> String {
    match k {
        0 => "1".into(),
        1 => "t".into(),
        _ => format!("t^{k}"),
    }
}

/// `F[t]/(t^{n+1})` with `wt t^k = k`, `D = t^2 d/dt` and
/// `Y(a, x) b = (e^{xD} a) b`, for `1 <= n <= 12`.
///
/// `(t^i)_{-j-1} t^l = C(i+j-1, j) t^{i+j+l}` for `i >= 1`, and the vacuum
/// acts as the identity.
pub fn commutative(n: i64) -> Result<VertexAlgebra> {
    if !(1..=12).contains(&n) {
        return Err(Error::OutOfRange(format!(
            "commutative example needs 1 <= N <= 12, got {n}"
        )));
    }
    let labels: Vec<String> = (0..=n).map(power_label).collect();
    let space = GradedSpace::new(
        labels
            .iter()
            .enumerate()
            .map(|(k, l)| (scalar::int(k as i64), vec![l.clone()])),
    )?;
    let mut products = Vec::new();
    for i in 0..=n {
        for l in 0..=n {
            if i == 0 {
                products.push(((0, -1, l as Idx), Vector::basis(l as Idx)));
                continue;
            }
            for j in 0..=(n - i - l) {
                let c = scalar::binomial(i + j - 1, j);
                products.push((
                    (i as Idx, -j - 1, l as Idx),
                    Vector::term((i + j + l) as Idx, c),
                ));
            }
        }
    }
    VertexAlgebra::new(
        format!("commutative({n})"),
        space,
        Vector::basis(0),
        products,
        None,
        None,
    )
}

/// Generator of a vertex Lie algebra built by [`VlaBuilder`].
#[derive(Clone, Debug)]
struct Generator {
    label: String,
    weight: i64,
    /// Central generators are killed by `D` and by every product.
    central: bool,
}

/// Vertex Lie algebra generated under `D` by finitely many generators, from
/// the products of generators alone. The remaining products follow from
/// `(D^i u)_k v = (-1)^i i! C(k, i) u_{k-i} v` and
/// `u_k (D v) = D(u_k v) + k u_{k-1} v`.
pub struct VlaBuilder {
    name: String,
    top: i64,
    gens: Vec<Generator>,
    /// `(g, k, h) -> Σ c (generator, D power)`.
    products: BTreeMap<(usize, i64, usize), Vec<(usize, u32, Scalar)>>,
}

/// Label of `D^j g`.
pub fn derived_label(g: &str, j: u32) -> String {
    match j {
        0 => g.to_string(),
        1 => format!("D{g}"),
        _ => format!("D^{j}{g}"),
    }
}

impl VlaBuilder {
    pub fn new(name: impl Into<String>, top: i64) -> Self {
        VlaBuilder {
            name: name.into(),
            top,
            gens: Vec::new(),
            products: BTreeMap::new(),
        }
    }

    pub fn generator(mut self, label: &str, weight: i64) -> Self {
        self.gens.push(Generator {
            label: label.into(),
            weight,
            central: false,
        });
        self
    }

    pub fn central(mut self, label: &str, weight: i64) -> Self {
        self.gens.push(Generator {
            label: label.into(),
            weight,
            central: true,
        });
        self
    }

    fn gen_index(&self, label: &str) -> usize {
        self.gens
            .iter()
            .position(|g| g.label == label)
            .unwrap_or_else(|| panic!("unknown generator {label}"))
    }

    /// `g_k h = Σ c D^j(x)` for terms `(x, j, c)`.
    pub fn product(mut self, g: &str, k: i64, h: &str, terms: &[(&str, u32, Scalar)]) -> Self {
        let key = (self.gen_index(g), k, self.gen_index(h));
        let t = terms
            .iter()
            .map(|(x, j, c)| (self.gen_index(x), *j, c.clone()))
            .collect();
        self.products.insert(key, t);
        self
    }

    pub fn build(self) -> Result<VertexLieAlgebra> {
        let mut pieces: Vec<(Scalar, Vec<String>)> = Vec::new();
        let mut max_j = Vec::new();
        for g in &self.gens {
            if g.weight > self.top || g.weight < 0 {
                return Err(Error::OutOfRange(format!(
                    "generator {} of weight {} does not fit below the top weight {}",
                    g.label, g.weight, self.top
                )));
            }
            let jmax = if g.central { 0 } else { (self.top - g.weight) as u32 };
            for j in 0..=jmax {
                pieces.push((
                    scalar::int(g.weight + j as i64),
                    vec![derived_label(&g.label, j)],
                ));
            }
            max_j.push(jmax);
        }
        let space = GradedSpace::new(pieces)?;
        let idx = |g: usize, j: u32| -> Option<Idx> {
            (j <= max_j[g]).then(|| {
                space
                    .index_of(&derived_label(&self.gens[g].label, j))
                    .expect("label present")
            })
        };
        let mut derivation = Vec::new();
        for (g, gen) in self.gens.iter().enumerate() {
            if gen.central {
                continue;
            }
            for j in 0..max_j[g] {
                derivation.push((idx(g, j).unwrap(), Vector::basis(idx(g, j + 1).unwrap())));
            }
        }
        let d = |v: &Vector| -> Vector {
            v.apply(|i| {
                derivation
                    .iter()
                    .find(|(k, _)| *k == i)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_default()
            })
        };
        let weight = |g: usize, j: u32| self.gens[g].weight + j as i64;
        let base = |g: usize, k: i64, h: usize| -> Vector {
            self.products
                .get(&(g, k, h))
                .map(|terms| {
                    terms
                        .iter()
                        .filter_map(|(x, j, c)| idx(*x, *j).map(|i| (i, c.clone())))
                        .collect()
                })
                .unwrap_or_default()
        };
        // g_k (D^j h), memoized by recursion on j.
        let mut memo: BTreeMap<(usize, i64, usize, u32), Vector> = BTreeMap::new();
        fn g_on_dh(
            g: usize,
            k: i64,
            h: usize,
            j: u32,
            memo: &mut BTreeMap<(usize, i64, usize, u32), Vector>,
            base: &dyn Fn(usize, i64, usize) -> Vector,
            d: &dyn Fn(&Vector) -> Vector,
        ) -> Vector {
            if k < 0 {
                return Vector::new();
            }
            if let Some(v) = memo.get(&(g, k, h, j)) {
                return v.clone();
            }
            let v = if j == 0 {
                base(g, k, h)
            } else {
                let mut v = d(&g_on_dh(g, k, h, j - 1, memo, base, d));
                v.add_scaled(&g_on_dh(g, k - 1, h, j - 1, memo, base, d), &scalar::int(k));
                v
            };
            memo.insert((g, k, h, j), v.clone());
            v
        }
        let mut products = Vec::new();
        for g in 0..self.gens.len() {
            for h in 0..self.gens.len() {
                if self.gens[g].central || self.gens[h].central {
                    continue;
                }
                for i in 0..=max_j[g] {
                    for j in 0..=max_j[h] {
                        let total = weight(g, i) + weight(h, j) - 1;
                        for k in 0..=total {
                            if total - k > self.top || k < i as i64 {
                                continue;
                            }
                            let inner = g_on_dh(g, k - i as i64, h, j, &mut memo, &base, &d);
                            let c = scalar::int(scalar::sign(i as i64))
                                * Scalar::from_integer(scalar::factorial(i))
                                * scalar::binomial(k, i as i64);
                            let v = inner.scaled(&c);
                            if !v.is_zero() {
                                products.push(((idx(g, i).unwrap(), k, idx(h, j).unwrap()), v));
                            }
                        }
                    }
                }
            }
        }
        VertexLieAlgebra::new(self.name, space, derivation, products, Some(self.top))
    }
}

/// One generator `a` of weight 1 with all products zero, truncated at `top`.
pub fn abelian_vla(top: i64) -> Result<VertexLieAlgebra> {
    VlaBuilder::new("abelian", top).generator("a", 1).build()
}

/// Generator `a` of weight 1 and central `K` of weight 0 with `a_1 a = K`.
pub fn heisenberg_vla(top: i64) -> Result<VertexLieAlgebra> {
    VlaBuilder::new("heisenberg", top)
        .generator("a", 1)
        .central("K", 0)
        .product("a", 1, "a", &[("K", 0, scalar::one())])
        .build()
}

/// Generator `w` of weight 2 and central `K` with `w_0 w = Dw`,
/// `w_1 w = 2w`, `w_2 w = 0` and `w_3 w = (d/2) K`.
pub fn virasoro_vla(d: &Scalar, top: i64) -> Result<VertexLieAlgebra> {
    VlaBuilder::new(format!("virasoro(d={})", scalar::format(d)), top)
        .generator("w", 2)
        .central("K", 0)
        .product("w", 0, "w", &[("w", 1, scalar::one())])
        .product("w", 1, "w", &[("w", 0, scalar::int(2))])
        .product("w", 3, "w", &[("K", 0, d / scalar::int(2))])
        .build()
}

/// `c` viewed as a comodule over itself with every weight raised by `shift`.
pub fn shifted_comodule(c: &VertexCoalgebra, shift: &Scalar) -> Result<Comodule> {
    let space = GradedSpace::new(
        c.space
            .basis()
            .map(|i| (c.space.weight(i) + shift, vec![c.space.label(i).to_string()])),
    )?;
    Comodule::new(
        format!("{}[+{}]", c.name, scalar::format(shift)),
        space,
        c.clone(),
        c.table().iter().map(|(k, t)| (*k, t.clone())),
        c.top_weight.map(|t| scalar::int(t) + shift),
        c.mode_window,
    )
}

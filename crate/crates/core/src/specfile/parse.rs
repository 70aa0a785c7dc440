use std::collections::{BTreeMap, HashMap};

use crate::constructions::BilinearForm;
use crate::graded::{DualFunctional, GradedSpace, Idx, Sparse, Tensor2, Vector};
use crate::scalar::{self, Scalar};
use crate::structures::{Comodule, VertexAlgebra, VertexCoalgebra, VertexLieAlgebra, VocData};
use crate::{Error, Result};

use super::{Kind, Structure, SECTIONS};

#[derive(Clone, Copy)]
struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Sections<'a> {
    found: BTreeMap<&'a str, (usize, Vec<Line<'a>>)>,
}

impl<'a> Sections<'a> {
    fn split(text: &'a str) -> Result<Self> {
        let mut found: BTreeMap<&'a str, (usize, Vec<Line<'a>>)> = BTreeMap::new();
        let mut current: Option<&'a str> = None;
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let t = raw.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            if let Some(name) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                let name = name.trim();
                if !SECTIONS.contains(&name) {
                    return Err(err(no, format!("unknown section `[{name}]`")));
                }
                if found.contains_key(name) {
                    return Err(err(no, format!("section `[{name}]` appears twice")));
                }
                found.insert(name, (no, Vec::new()));
                current = Some(name);
                continue;
            }
            match current {
                Some(s) => found.get_mut(s).expect("section exists").1.push(Line { no, text: t }),
                None => return Err(err(no, "content before the first section header")),
            }
        }
        Ok(Sections { found })
    }

    fn lines(&self, name: &str) -> &[Line<'a>] {
        self.found.get(name).map_or(&[], |(_, l)| l.as_slice())
    }

    fn require(&self, name: &str) -> Result<&[Line<'a>]> {
        if self.found.contains_key(name) {
            Ok(self.lines(name))
        } else {
            Err(err(0, format!("missing section `[{name}]`")))
        }
    }

    fn only(&self, allowed: &[&str]) -> Result<()> {
        for (name, (no, _)) in &self.found {
            if !allowed.contains(name) {
                return Err(err(*no, format!("section `[{name}]` does not belong to this kind")));
            }
        }
        Ok(())
    }

    fn single(&self, name: &str) -> Result<Line<'a>> {
        let lines = self.require(name)?;
        match lines {
            [l] => Ok(*l),
            [] => Err(err(self.found[name].0, format!("`[{name}]` is empty"))),
            [_, l, ..] => Err(err(l.no, format!("`[{name}]` takes a single line"))),
        }
    }
}

struct Meta {
    values: HashMap<&'static str, (usize, String)>,
}

const META_KEYS: [&str; 8] = ["name", "kind", "rank", "over", "over-top", "over-modes", "modes", "top"];

impl Meta {
    fn parse(lines: &[Line]) -> Result<Self> {
        let mut values = HashMap::new();
        for l in lines {
            let (k, v) = l
                .text
                .split_once('=')
                .ok_or_else(|| err(l.no, "expected `key = value`"))?;
            let k = k.trim();
            let key = META_KEYS
                .iter()
                .find(|m| **m == k)
                .ok_or_else(|| err(l.no, format!("unknown meta key `{k}`")))?;
            if values.insert(*key, (l.no, v.trim().to_string())).is_some() {
                return Err(err(l.no, format!("meta key `{k}` given twice")));
            }
        }
        Ok(Meta { values })
    }

    fn get(&self, k: &str) -> Option<(usize, &str)> {
        self.values.get(k).map(|(n, v)| (*n, v.as_str()))
    }

    fn require(&self, k: &str) -> Result<(usize, &str)> {
        self.get(k).ok_or_else(|| err(0, format!("missing meta key `{k}`")))
    }

    fn forbid(&self, keys: &[&str]) -> Result<()> {
        for k in keys {
            if let Some((no, _)) = self.get(k) {
                return Err(err(no, format!("meta key `{k}` does not belong to this kind")));
            }
        }
        Ok(())
    }

    fn int(&self, k: &str) -> Result<Option<i64>> {
        self.get(k)
            .map(|(no, v)| v.parse::<i64>().map_err(|_| err(no, format!("`{k}` must be an integer"))))
            .transpose()
    }

    fn scalar(&self, k: &str) -> Result<Option<Scalar>> {
        self.get(k)
            .map(|(no, v)| {
                scalar::parse(v).map_err(|_| err(no, format!("`{k}` must be a rational number")))
            })
            .transpose()
    }

    fn modes(&self, k: &str) -> Result<Option<(i64, i64)>> {
        self.get(k)
            .map(|(no, v)| {
                let bad = || err(no, format!("`{k}` must look like `lo:hi`"));
                let (a, b) = v.split_once(':').ok_or_else(bad)?;
                let lo = a.trim().parse::<i64>().map_err(|_| bad())?;
                let hi = b.trim().parse::<i64>().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                Ok((lo, hi))
            })
            .transpose()
    }
}

/// A label is nonempty and free of whitespace and of the characters used by
/// the format itself.
pub(super) fn valid_label(l: &str) -> bool {
    !l.is_empty()
        && !l.starts_with(['-', '+', '['])
        && !l.contains("->")
        && !l.chars().any(|c| c.is_whitespace() || ",|*:#=".contains(c))
}

fn parse_space(lines: &[Line]) -> Result<GradedSpace> {
    let mut pieces = Vec::new();
    for l in lines {
        let parts: Vec<&str> = l.text.splitn(3, ':').map(str::trim).collect();
        let [w, d, labels] = parts[..] else {
            return Err(err(l.no, "expected `weight : dim : labels`"));
        };
        let w = scalar::parse(w).map_err(|_| err(l.no, format!("bad weight `{w}`")))?;
        let d: usize = d.parse().map_err(|_| err(l.no, format!("bad dimension `{d}`")))?;
        let labels: Vec<String> = if labels.is_empty() {
            Vec::new()
        } else {
            labels.split(',').map(|s| s.trim().to_string()).collect()
        };
        if labels.len() != d {
            return Err(err(l.no, format!("dimension {d} but {} labels", labels.len())));
        }
        if let Some(bad) = labels.iter().find(|s| !valid_label(s)) {
            return Err(err(l.no, format!("invalid label `{bad}`")));
        }
        pieces.push((w, labels));
    }
    GradedSpace::new(pieces).map_err(|e| err(lines.first().map_or(0, |l| l.no), e.to_string()))
}

fn lookup(space: &GradedSpace, label: &str, no: usize) -> Result<Idx> {
    space
        .index_of(label)
        .map_err(|_| err(no, format!("unknown basis label `{label}`")))
}

/// `c*label + c*label - label ...`, or `0`.
pub(super) fn parse_combination<K: Ord + Copy>(
    text: &str,
    no: usize,
    term: impl Fn(&str) -> Result<K>,
) -> Result<Sparse<K>> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let mut out = Sparse::new();
    if toks == ["0"] {
        return Ok(out);
    }
    if toks.is_empty() {
        return Err(err(no, "empty combination"));
    }
    let mut sign = scalar::one();
    let mut expect_term = true;
    let mut signed = false;
    for t in toks {
        if expect_term {
            if (t == "+" || t == "-") && !signed {
                if t == "-" {
                    sign = -sign;
                }
                signed = true;
                continue;
            }
            let (c, label) = match t.split_once('*') {
                Some((c, l)) => (
                    scalar::parse(c).map_err(|_| err(no, format!("bad coefficient `{c}`")))?,
                    l,
                ),
                None => (scalar::one(), t),
            };
            out.add_term(term(label)?, c * &sign);
            sign = scalar::one();
            expect_term = false;
            signed = false;
        } else {
            match t {
                "+" => {}
                "-" => sign = -scalar::one(),
                _ => return Err(err(no, format!("expected `+` or `-`, found `{t}`"))),
            }
            expect_term = true;
            signed = true;
        }
    }
    if expect_term {
        return Err(err(no, "combination ends with an operator"));
    }
    Ok(out)
}

fn vector(space: &GradedSpace, text: &str, no: usize) -> Result<Vector> {
    parse_combination(text, no, |l| lookup(space, l, no))
}

fn tensor(left: &GradedSpace, right: &GradedSpace, text: &str, no: usize) -> Result<Tensor2> {
    parse_combination(text, no, |t| {
        let (a, b) = t
            .split_once('|')
            .ok_or_else(|| err(no, format!("tensor term `{t}` needs the form `u|w`")))?;
        Ok([lookup(left, a, no)?, lookup(right, b, no)?])
    })
}

/// `lhs -> rhs` with a comma-separated left side of the given arity.
fn row<'a>(l: &Line<'a>, arity: usize) -> Result<(Vec<&'a str>, &'a str)> {
    let (lhs, rhs) = l
        .text
        .split_once("->")
        .ok_or_else(|| err(l.no, "expected `... -> ...`"))?;
    let parts: Vec<&str> = lhs.split(',').map(str::trim).collect();
    if parts.len() != arity || parts.iter().any(|p| p.is_empty()) {
        return Err(err(l.no, format!("expected {arity} comma-separated entries before `->`")));
    }
    Ok((parts, rhs.trim()))
}

fn mode(s: &str, no: usize) -> Result<i64> {
    s.parse().map_err(|_| err(no, format!("bad mode `{s}`")))
}

/// Rows keyed by their normalized text, to locate weight-rule errors.
#[derive(Default)]
struct RowLines(HashMap<String, usize>);

impl RowLines {
    fn record(&mut self, key: String, no: usize) -> Result<()> {
        if self.0.insert(key.clone(), no).is_some() {
            return Err(err(no, format!("row `{key}` given twice")));
        }
        Ok(())
    }

    fn locate(&self, e: Error) -> Error {
        match e {
            Error::WeightRule { row, message } => match self.0.get(&row) {
                Some(no) => Error::WeightRule {
                    row: format!("{row} (line {no})"),
                    message,
                },
                None => Error::WeightRule { row, message },
            },
            other => other,
        }
    }
}

type CoproductRows = Vec<((Idx, i64), Tensor2)>;

fn coproducts(
    lines: &[Line],
    space: &GradedSpace,
    left: &GradedSpace,
    rows: &mut RowLines,
) -> Result<CoproductRows> {
    let mut out = Vec::new();
    for l in lines {
        let (p, rhs) = row(l, 2)?;
        let v = lookup(space, p[0], l.no)?;
        let k = mode(p[1], l.no)?;
        rows.record(format!("{}, {}", space.label(v), k), l.no)?;
        out.push(((v, k), tensor(left, space, rhs, l.no)?));
    }
    Ok(out)
}

type ProductRows = Vec<((Idx, i64, Idx), Vector)>;

fn products(lines: &[Line], space: &GradedSpace, rows: &mut RowLines) -> Result<ProductRows> {
    let mut out = Vec::new();
    for l in lines {
        let (p, rhs) = row(l, 3)?;
        let u = lookup(space, p[0], l.no)?;
        let n = mode(p[1], l.no)?;
        let v = lookup(space, p[2], l.no)?;
        rows.record(format!("{}, {}, {}", space.label(u), n, space.label(v)), l.no)?;
        out.push(((u, n, v), vector(space, rhs, l.no)?));
    }
    Ok(out)
}

fn coalgebra_parts(
    s: &Sections,
    prefix: &str,
    name: String,
    top: Option<i64>,
    modes: Option<(i64, i64)>,
) -> Result<VertexCoalgebra> {
    let space = parse_space(s.require(&format!("{prefix}space"))?)?;
    let cv = s.single(&format!("{prefix}covacuum"))?;
    let covacuum = DualFunctional(vector(&space, cv.text, cv.no)?);
    let mut rows = RowLines::default();
    let table = coproducts(s.lines(&format!("{prefix}coproducts")), &space, &space, &mut rows)?;
    VertexCoalgebra::new(name, space, covacuum, table, top, modes).map_err(|e| rows.locate(e))
}

/// Parse a spec file into a validated structure.
pub fn parse(text: &str) -> Result<Structure> {
    let s = Sections::split(text)?;
    let meta = Meta::parse(s.require("meta")?)?;
    let name = meta.require("name")?.1.to_string();
    let (kno, kind) = meta.require("kind")?;
    let kind: Kind = kind.parse().map_err(|_| err(kno, format!("unknown kind `{kind}`")))?;
    match kind {
        Kind::VertexAlgebra => {
            s.only(&["meta", "space", "vacuum", "products", "form"])?;
            meta.forbid(&["rank", "over", "over-top", "over-modes"])?;
            let space = parse_space(s.require("space")?)?;
            let vl = s.single("vacuum")?;
            let vacuum = vector(&space, vl.text, vl.no)?;
            let mut rows = RowLines::default();
            let table = products(s.lines("products"), &space, &mut rows)?;
            let form = match s.found.get("form") {
                None => None,
                Some((_, lines)) => {
                    let mut f = BilinearForm::default();
                    let mut seen = RowLines::default();
                    for l in lines {
                        let (p, rhs) = row(l, 2)?;
                        let a = lookup(&space, p[0], l.no)?;
                        let b = lookup(&space, p[1], l.no)?;
                        seen.record(format!("{}, {}", p[0], p[1]), l.no)?;
                        let c = scalar::parse(rhs).map_err(|_| err(l.no, format!("bad entry `{rhs}`")))?;
                        f.entries.insert((a, b), c);
                    }
                    Some(f)
                }
            };
            let algebra = VertexAlgebra::new(name, space, vacuum, table, meta.int("top")?, meta.modes("modes")?)
                .map_err(|e| rows.locate(e))?;
            Ok(Structure::Algebra { algebra, form })
        }
        Kind::VertexCoalgebra => {
            s.only(&["meta", "space", "covacuum", "coproducts"])?;
            meta.forbid(&["rank", "over", "over-top", "over-modes"])?;
            let c = coalgebra_parts(&s, "", name, meta.int("top")?, meta.modes("modes")?)?;
            Ok(Structure::Coalgebra(c))
        }
        Kind::Voc => {
            s.only(&["meta", "space", "covacuum", "coproducts", "rho"])?;
            meta.forbid(&["over", "over-top", "over-modes"])?;
            let c = coalgebra_parts(&s, "", name, meta.int("top")?, meta.modes("modes")?)?;
            let rank = meta.scalar("rank")?.ok_or_else(|| err(0, "missing meta key `rank`"))?;
            let rl = s.single("rho")?;
            let rho = DualFunctional(vector(&c.space, rl.text, rl.no)?);
            Ok(Structure::Voc(VocData::new(c, rank, rho)?))
        }
        Kind::VertexLie => {
            s.only(&["meta", "space", "derivation", "products"])?;
            meta.forbid(&["rank", "over", "over-top", "over-modes", "modes"])?;
            let space = parse_space(s.require("space")?)?;
            let mut rows = RowLines::default();
            let mut derivation = Vec::new();
            for l in s.lines("derivation") {
                let (p, rhs) = row(l, 1)?;
                let u = lookup(&space, p[0], l.no)?;
                rows.record(format!("D {}", space.label(u)), l.no)?;
                derivation.push((u, vector(&space, rhs, l.no)?));
            }
            let table = products(s.lines("products"), &space, &mut rows)?;
            let lie = VertexLieAlgebra::new(name, space, derivation, table, meta.int("top")?)
                .map_err(|e| rows.locate(e))?;
            Ok(Structure::Lie(lie))
        }
        Kind::Comodule => {
            s.only(&["meta", "space", "coproducts", "base-space", "base-covacuum", "base-coproducts"])?;
            meta.forbid(&["rank"])?;
            let over_name = meta.require("over")?.1.to_string();
            let base = coalgebra_parts(&s, "base-", over_name, meta.int("over-top")?, meta.modes("over-modes")?)?;
            let space = parse_space(s.require("space")?)?;
            let mut rows = RowLines::default();
            let table = coproducts(s.lines("coproducts"), &space, &base.space, &mut rows)?;
            let m = Comodule::new(name, space, base, table, meta.scalar("top")?, meta.modes("modes")?)
                .map_err(|e| rows.locate(e))?;
            Ok(Structure::Comodule(m))
        }
    }
}

/// A functional on `V ⊗ V ⊗ M` written `c*u|v|w + ...`, the first two labels
/// in the base coalgebra and the last in the comodule.
pub fn parse_functional(m: &Comodule, text: &str) -> Result<crate::checks::Functional> {
    let f = parse_combination(text, 1, |t| {
        let parts: Vec<&str> = t.split('|').collect();
        let [a, b, c] = parts[..] else {
            return Err(err(1, format!("functional term `{t}` needs the form `u|v|w`")));
        };
        Ok([lookup(&m.over.space, a, 1)?, lookup(&m.over.space, b, 1)?, lookup(&m.space, c, 1)?])
    })?;
    Ok(DualFunctional(f))
}

//! Kaplansky graphs `K(alpha, beta)` over concrete group models.
//!
//! Vertices are the elements `g_j` of `supp(beta)`; `g_i ~ g_j` when
//! `h g_i = h' g_j` for some `h, h'` in `supp(alpha)`. Equivalently the graph
//! is induced on `supp(beta)` by the Cayley graph with connection set
//! `S = { h^-1 h' : h != h' }`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use serde::Deserialize;

use crate::graph::Graph;
use crate::patterns::contains_subgraph;
use crate::words::{Gen, Word};
use crate::{Error, Result};

pub trait GroupModel {
    type Elem: Clone + Ord + Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
}

/// `Z/m` written multiplicatively with generator `x`.
#[derive(Clone, Copy, Debug)]
pub struct Cyclic(pub u64);

impl GroupModel for Cyclic {
    type Elem = u64;
    fn identity(&self) -> u64 {
        0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let e: i64 = match s {
            "1" => 0,
            "x" => 1,
            _ => s
                .strip_prefix("x^")
                .and_then(|t| t.trim_matches(|c| c == '{' || c == '}').parse().ok())
                .ok_or_else(|| Error::Parse(format!("Z/{} element {s:?}", self.0)))?,
        };
        Ok(e.rem_euclid(self.0 as i64) as u64)
    }
    fn format(&self, a: &u64) -> String {
        match a {
            0 => "1".into(),
            1 => "x".into(),
            _ => format!("x^{a}"),
        }
    }
}

/// Free group on `a`, `b` (stored as reduced words in `h2`, `h3`).
#[derive(Clone, Copy, Debug)]
pub struct Free;

impl GroupModel for Free {
    type Elem = Word;
    fn identity(&self) -> Word {
        Word::identity()
    }
    fn mul(&self, a: &Word, b: &Word) -> Word {
        a.mul(b)
    }
    fn inv(&self, a: &Word) -> Word {
        a.inverse()
    }
    fn parse(&self, s: &str) -> Result<Word> {
        let t: String = s
            .chars()
            .flat_map(|c| match c {
                'a' => vec!['h', '2'],
                'b' => vec!['h', '3'],
                _ => vec![c],
            })
            .collect();
        t.parse()
    }
    fn format(&self, a: &Word) -> String {
        if a.is_identity() {
            return "1".into();
        }
        a.syllables()
            .iter()
            .map(|&(g, e)| {
                let x = if g == Gen::H2 { "a" } else { "b" };
                if e == 1 {
                    x.to_string()
                } else {
                    format!("{x}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Free abelian group `Z^2`, written additively as integer pairs.
#[derive(Clone, Copy, Debug)]
pub struct Z2;

impl GroupModel for Z2 {
    type Elem = (i64, i64);
    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }
    fn mul(&self, a: &(i64, i64), b: &(i64, i64)) -> (i64, i64) {
        (a.0 + b.0, a.1 + b.1)
    }
    fn inv(&self, a: &(i64, i64)) -> (i64, i64) {
        (-a.0, -a.1)
    }
    fn parse(&self, s: &str) -> Result<(i64, i64)> {
        let bad = || Error::Parse(format!("Z^2 element {s:?}"));
        let t = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let (x, y) = t.split_once(',').ok_or_else(bad)?;
        Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
    }
    fn format(&self, a: &(i64, i64)) -> String {
        format!("({},{})", a.0, a.1)
    }
}

fn check_distinct<E: Ord>(xs: &[E], what: &str) -> Result<()> {
    let set: BTreeSet<&E> = xs.iter().collect();
    if set.len() != xs.len() {
        return Err(Error::Domain(format!("{what} has repeated elements")));
    }
    Ok(())
}

/// Edge `i ~ j` iff `h g_i = h' g_j` for some `h, h'` in `alpha`.
pub fn kaplansky_graph<G: GroupModel>(gm: &G, alpha: &[G::Elem], beta: &[G::Elem]) -> Result<Graph> {
    check_distinct(alpha, "alpha")?;
    check_distinct(beta, "beta")?;
    // product -> beta indices producing it
    let mut cells: BTreeMap<G::Elem, Vec<usize>> = BTreeMap::new();
    for (j, g) in beta.iter().enumerate() {
        for h in alpha {
            cells.entry(gm.mul(h, g)).or_default().push(j);
        }
    }
    let mut out = Graph::new(beta.len());
    for js in cells.values() {
        for (x, &i) in js.iter().enumerate() {
            for &j in &js[x + 1..] {
                if i != j {
                    out.add_edge(i, j);
                }
            }
        }
    }
    Ok(out)
}

/// `S = { h^-1 h' : h != h' in alpha }`.
pub fn connection_set<G: GroupModel>(gm: &G, alpha: &[G::Elem]) -> BTreeSet<G::Elem> {
    let mut s = BTreeSet::new();
    for (i, h) in alpha.iter().enumerate() {
        for (j, k) in alpha.iter().enumerate() {
            if i != j {
                s.insert(gm.mul(&gm.inv(h), k));
            }
        }
    }
    s
}

/// Induced subgraph of `Cay(G, S)` on `beta`: `i ~ j` iff `g_i g_j^-1` lies in `S`.
pub fn cayley_induced<G: GroupModel>(gm: &G, alpha: &[G::Elem], beta: &[G::Elem]) -> Result<Graph> {
    check_distinct(alpha, "alpha")?;
    check_distinct(beta, "beta")?;
    let s = connection_set(gm, alpha);
    let mut out = Graph::new(beta.len());
    for i in 0..beta.len() {
        for j in i + 1..beta.len() {
            if s.contains(&gm.mul(&beta[i], &gm.inv(&beta[j]))) {
                out.add_edge(i, j);
            }
        }
    }
    Ok(out)
}

/// Support of `alpha * beta` over `F_2`, all coefficients 1: products that
/// occur an odd number of times.
pub fn f2_product_support<G: GroupModel>(gm: &G, alpha: &[G::Elem], beta: &[G::Elem]) -> Vec<G::Elem> {
    let mut parity: BTreeMap<G::Elem, bool> = BTreeMap::new();
    for h in alpha {
        for g in beta {
            *parity.entry(gm.mul(h, g)).or_default() ^= true;
        }
    }
    parity.into_iter().filter(|e| e.1).map(|e| e.0).collect()
}

/// True when `alpha * beta = 0` over `F_2`.
pub fn f2_zero_product<G: GroupModel>(gm: &G, alpha: &[G::Elem], beta: &[G::Elem]) -> bool {
    f2_product_support(gm, alpha, beta).is_empty()
}

/// Every product cell `h_i g_j` coincides with exactly one other cell.
pub fn matched_rectangle<G: GroupModel>(gm: &G, alpha: &[G::Elem], beta: &[G::Elem]) -> bool {
    let mut count: BTreeMap<G::Elem, usize> = BTreeMap::new();
    for h in alpha {
        for g in beta {
            *count.entry(gm.mul(h, g)).or_default() += 1;
        }
    }
    count.values().all(|&c| c == 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Zero divisor over `F_2` with `|supp(alpha)| = 3`.
    ZeroDivisorF2,
    /// Unit graph over an arbitrary field.
    UnitF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    NotCubic,
    Disconnected,
    Triangle,
    K3K3,
    K23,
}

pub fn k3k3() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
}

pub fn k23() -> Graph {
    Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
}

/// Structural conditions that a genuine Kaplansky graph satisfies, with the
/// ones that `g` violates.
pub fn check_structure(g: &Graph, mode: Mode) -> Vec<Violation> {
    let mut v = Vec::new();
    if mode == Mode::ZeroDivisorF2 {
        if !g.is_regular(3) {
            v.push(Violation::NotCubic);
        }
        if !g.is_connected() {
            v.push(Violation::Disconnected);
        }
        if !g.is_triangle_free() {
            v.push(Violation::Triangle);
        }
    }
    if contains_subgraph(g, &k3k3()) {
        v.push(Violation::K3K3);
    }
    if contains_subgraph(g, &k23()) {
        v.push(Violation::K23);
    }
    v
}

/// JSON support description: `{"model": "Z/3" | "free" | "Z2", "alpha": [...], "beta": [...]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct SupportSpec {
    pub model: String,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
}

/// Result of evaluating a [`SupportSpec`].
#[derive(Clone, Debug)]
pub struct SupportReport {
    pub graph: Graph,
    pub cayley: Graph,
    pub connection_set_size: usize,
    pub f2_zero_product: bool,
}

fn run<G: GroupModel>(gm: &G, spec: &SupportSpec) -> Result<SupportReport> {
    let alpha = spec.alpha.iter().map(|s| gm.parse(s)).collect::<Result<Vec<_>>>()?;
    let beta = spec.beta.iter().map(|s| gm.parse(s)).collect::<Result<Vec<_>>>()?;
    Ok(SupportReport {
        graph: kaplansky_graph(gm, &alpha, &beta)?,
        cayley: cayley_induced(gm, &alpha, &beta)?,
        connection_set_size: connection_set(gm, &alpha).len(),
        f2_zero_product: f2_zero_product(gm, &alpha, &beta),
    })
}

pub fn evaluate(spec: &SupportSpec) -> Result<SupportReport> {
    let m = spec.model.trim();
    if let Some(k) = m.strip_prefix("Z/") {
        let k: u64 = k.parse().map_err(|_| Error::Parse(format!("model {m:?}")))?;
        if k == 0 {
            return Err(Error::Domain("Z/0".into()));
        }
        return run(&Cyclic(k), spec);
    }
    match m {
        "free" | "F2" => run(&Free, spec),
        "Z2" | "Z^2" => run(&Z2, spec),
        _ => Err(Error::Parse(format!("unknown group model {m:?}"))),
    }
}

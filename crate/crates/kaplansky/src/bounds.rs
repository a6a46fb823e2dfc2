//! Counting arguments for small supports and the chained lower bounds.
//!
//! With `|supp(alpha)| = 3` and `|supp(beta)| = n` the `3n` products
//! `h_i g_j` fall into classes of equal products. A zero product forces every
//! class to have at least two members; a unit product allows one class (the
//! one containing the identity) to be a singleton. Comparing the number of
//! classes against a product-set lower bound rules out most small `n` by
//! arithmetic alone; the rest reduce to statements over `F_2`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::graph::{canonical_form, Graph};
use crate::kgraph::{k23, k3k3};
use crate::patterns::contains_subgraph;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `|BC| >= |B| + |C| + 1` in a nonabelian torsion-free group
    /// (`|B| >= 3`, `|C| >= 4`, `C` generating with `1 in C`).
    NonabelianHamidoune,
    /// `|BC| >= |B| + |C| - 1` in a torsion-free group.
    TorsionfreeKemperman,
}

/// Lower bound on `|supp(alpha) supp(beta)|` for sizes `(3, n)`.
pub fn product_bound(kind: BoundKind, n: usize) -> Result<usize> {
    match kind {
        BoundKind::NonabelianHamidoune if n >= 3 => Ok(n + 4),
        BoundKind::NonabelianHamidoune => Err(Error::Domain(format!("Hamidoune bound needs n >= 3, got {n}"))),
        BoundKind::TorsionfreeKemperman if n >= 1 => Ok(n + 2),
        BoundKind::TorsionfreeKemperman => Err(Error::Domain("Kemperman bound needs n >= 1".into())),
    }
}

/// Sizes of the product classes: the identity class (unit case only) and
/// the others in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CellProfile {
    pub identity_class: Option<usize>,
    pub others: Vec<usize>,
}

impl CellProfile {
    pub fn classes(&self) -> usize {
        self.others.len() + usize::from(self.identity_class.is_some())
    }
}

/// All class-size profiles of `cells` products with at least `min_classes`
/// classes, non-identity classes of size `>= 2`, and (if `unit`) an
/// identity class of size `>= 1`.
pub fn cell_profiles(cells: usize, min_classes: usize, unit: bool) -> Vec<CellProfile> {
    let mut out = Vec::new();
    let firsts: Vec<Option<usize>> = if unit { (1..=cells).map(Some).collect() } else { vec![None] };
    for first in firsts {
        let rest = cells - first.unwrap_or(0);
        let need = min_classes.saturating_sub(usize::from(first.is_some()));
        let mut parts = Vec::new();
        partitions(rest, rest, &mut parts, &mut |p| {
            if p.len() >= need {
                out.push(CellProfile { identity_class: first, others: p.to_vec() });
            }
        });
    }
    out
}

// partitions of `left` into parts in [2, max], non-increasing
fn partitions(left: usize, max: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if left == 0 {
        f(cur);
        return;
    }
    for p in (2..=max.min(left)).rev() {
        cur.push(p);
        partitions(left - p, p, cur, f);
        cur.pop();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "n", rename_all = "snake_case")]
pub enum Reduction {
    /// `alpha' beta' = 0` over `F_2` with `|supp(beta')| = n`.
    F2ZeroDivisor(usize),
    /// `gamma' delta' = 1` over `F_2` with `|supp(delta')| = n`.
    F2Unit(usize),
    /// One singleton identity class and one class of size 3: the unit graph
    /// has exactly one triangle (settled by [`unit_n8_search`] for `n = 8`).
    UnitGraphOneTriangle(usize),
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reduction::F2ZeroDivisor(n) => write!(f, "F2 zero divisor with n={n}"),
            Reduction::F2Unit(n) => write!(f, "F2 unit with n={n}"),
            Reduction::UnitGraphOneTriangle(n) => write!(f, "unit graph with one triangle, n={n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Infeasible { reason: String },
    ReducesTo { cases: Vec<Reduction> },
    /// Some profile admits none of the known reductions.
    Feasible,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
    pub constraints: String,
    pub profiles: Vec<CellProfile>,
    pub verdict: Verdict,
}

fn reduce(n: usize, p: &CellProfile) -> Option<Reduction> {
    let twos = |xs: &[usize]| xs.iter().all(|&s| s == 2);
    let (head, tail) = match p.others.split_first() {
        Some((&h, t)) => (h, t),
        None => return None,
    };
    match p.identity_class {
        None if twos(&p.others) => Some(Reduction::F2ZeroDivisor(n)),
        None if head == 3 && twos(tail) => Some(Reduction::F2Unit(n)),
        Some(2) if twos(&p.others) => Some(Reduction::F2ZeroDivisor(n)),
        Some(1) if twos(&p.others) => Some(Reduction::F2Unit(n)),
        Some(1) if head == 3 && twos(tail) => Some(Reduction::UnitGraphOneTriangle(n)),
        _ => None,
    }
}

fn case(n: usize, lower: usize, unit: bool) -> CaseReport {
    let cells = 3 * n;
    let profiles = cell_profiles(cells, lower, unit);
    let constraints = if unit {
        format!("{cells} products, >= {lower} classes, identity class >= 1, others >= 2")
    } else {
        format!("{cells} products, >= {lower} classes, every class >= 2")
    };
    let verdict = if profiles.is_empty() {
        // the cheapest witness: too few spare products to pair up the classes
        let spare = cells - lower;
        let need = if unit { lower - 1 } else { lower };
        Verdict::Infeasible { reason: format!("{cells}-{lower}={spare} < {need} classes needing a second product") }
    } else {
        let mut cases: Vec<Reduction> = Vec::new();
        let mut open = false;
        for p in &profiles {
            match reduce(n, p) {
                Some(r) if !cases.contains(&r) => cases.push(r),
                Some(_) => {}
                None => open = true,
            }
        }
        if open { Verdict::Feasible } else { Verdict::ReducesTo { cases } }
    };
    CaseReport { n, lower, upper: cells, constraints, profiles, verdict }
}

/// Zero divisor `alpha beta = 0` with `|supp(alpha)| = 3`, `|supp(beta)| = n`.
pub fn zero_divisor_case(n: usize) -> Result<CaseReport> {
    if !(3..=9).contains(&n) {
        return Err(Error::Domain(format!("zero divisor case needs 3 <= n <= 9, got {n}")));
    }
    if n == 3 {
        // h_1 g_1, h_2 g_1, h_3 g_1 each need a partner g_j, j != 1, and the
        // three partners are distinct because |S| = 6
        return Ok(CaseReport {
            n,
            lower: 3,
            upper: 9,
            constraints: "three products h_i g_1 need three distinct partners g_j, j != 1".into(),
            profiles: Vec::new(),
            verdict: Verdict::Infeasible { reason: "a fourth support element is forced".into() },
        });
    }
    Ok(case(n, product_bound(BoundKind::NonabelianHamidoune, n)?, false))
}

/// Unit `gamma delta = 1` with `|supp(gamma)| = 3`, `|supp(delta)| = n`.
pub fn unit_case(n: usize) -> Result<CaseReport> {
    if !(2..=8).contains(&n) {
        return Err(Error::Domain(format!("unit case needs 2 <= n <= 8, got {n}")));
    }
    let lower = if n < 4 {
        product_bound(BoundKind::TorsionfreeKemperman, n)?
    } else {
        product_bound(BoundKind::NonabelianHamidoune, n)?
    };
    Ok(case(n, lower, true))
}

/// Constraints on the unit graph for `n = 8`; vertex `0` is `g_1`, the
/// triangle is `{0, 2, 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct N8Constraints {
    /// Exactly one triangle (otherwise at least one).
    pub single_triangle: bool,
    pub no_k3k3: bool,
    pub no_k23: bool,
    pub connected: bool,
}

impl N8Constraints {
    pub const ALL: Self = Self { single_triangle: true, no_k3k3: true, no_k23: true, connected: true };
}

const N8_DEGREES: [usize; 8] = [3, 3, 4, 4, 3, 3, 3, 3];

fn triangles(g: &Graph) -> usize {
    g.edges().iter().map(|&(u, v)| (g.neighbors(u) & g.neighbors(v)).count_ones() as usize).sum::<usize>() / 3
}

/// Survivors of the `n = 8` unit-graph search, up to isomorphism.
pub fn unit_n8_search() -> Vec<Graph> {
    unit_n8_search_with(N8Constraints::ALL)
}

pub fn unit_n8_search_with(c: N8Constraints) -> Vec<Graph> {
    use rayon::prelude::*;
    // shard by the third neighbour of g_1
    let shards: Vec<usize> = vec![1, 4, 5, 6, 7];
    let found: Vec<Graph> = shards
        .par_iter()
        .flat_map_iter(|&w| {
            let mut g = Graph::from_edges(8, &[(0, 2), (0, 3), (2, 3), (0, w)]);
            let mut out = Vec::new();
            fill(&mut g, 1, &mut out);
            out.into_iter().filter(|g| admissible(g, c))
        })
        .collect();
    let mut seen: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for g in found {
        seen.entry(canonical_form(&g)).or_insert(g);
    }
    seen.into_values().collect()
}

// complete vertices in order 1..8 to their target degrees
fn fill(g: &mut Graph, v: usize, out: &mut Vec<Graph>) {
    if v == 8 {
        out.push(g.clone());
        return;
    }
    let need = N8_DEGREES[v] as isize - g.degree(v) as isize;
    if need < 0 {
        return;
    }
    let cands: Vec<usize> = (v + 1..8).filter(|&w| !g.has_edge(v, w) && g.degree(w) < N8_DEGREES[w]).collect();
    choose(g, v, &cands, 0, need as usize, out);
}

fn choose(g: &mut Graph, v: usize, cands: &[usize], from: usize, left: usize, out: &mut Vec<Graph>) {
    if left == 0 {
        fill(g, v + 1, out);
        return;
    }
    for i in from..cands.len() {
        let w = cands[i];
        g.add_edge(v, w);
        choose(g, v, cands, i + 1, left - 1, out);
        g.remove_edge(v, w);
    }
}

fn admissible(g: &Graph, c: N8Constraints) -> bool {
    let t = triangles(g);
    if t == 0 || (c.single_triangle && t != 1) {
        return false;
    }
    if c.connected && !g.is_connected() {
        return false;
    }
    if c.no_k3k3 && contains_subgraph(g, &k3k3()) {
        return false;
    }
    !(c.no_k23 && contains_subgraph(g, &k23()))
}

/// Where the evidence that census row `Remains` is zero came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Computed,
    Table,
}

#[derive(Clone, Debug, Default)]
pub struct BoundInputs {
    /// `n -> evidence` for even `n` whose census leaves no candidate graph.
    pub census_clear: BTreeMap<usize, Evidence>,
    /// The external `F_2` unit result (support sizes 3 and 7 and 9), taken as given.
    pub dyk_flag: bool,
}

impl BoundInputs {
    /// Census computed through `verified_max`, table columns accepted above it
    /// up to 18.
    pub fn standard(verified_max: usize, dyk_flag: bool) -> Self {
        let census_clear = (4..=18)
            .step_by(2)
            .map(|n| (n, if n <= verified_max { Evidence::Computed } else { Evidence::Table }))
            .collect();
        Self { census_clear, dyk_flag }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bound {
    pub value: usize,
    /// True when some step rests on table values not recomputed here.
    pub conditional: bool,
    /// One line per excluded support size.
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinalBounds {
    pub zero_divisor_general: Bound,
    pub zero_divisor_f2: Bound,
    pub unit_general: Bound,
}

impl FinalBounds {
    pub fn values(&self) -> (usize, usize, usize) {
        (self.zero_divisor_general.value, self.zero_divisor_f2.value, self.unit_general.value)
    }
}

fn f2_bound(inp: &BoundInputs) -> Bound {
    let mut b = Bound { value: 4, conditional: false, trace: Vec::new() };
    b.trace.push("n<4 and odd n: the graph is cubic and triangle-free".into());
    loop {
        match inp.census_clear.get(&b.value) {
            Some(ev) => {
                b.conditional |= *ev == Evidence::Table;
                let src = if *ev == Evidence::Computed { "computed" } else { "table" };
                b.trace.push(format!("n={}: census leaves no graph ({src})", b.value));
                b.value += 2;
            }
            None => return b,
        }
    }
}

fn n8_settled() -> bool {
    static SETTLED: std::sync::OnceLock<bool> = std::sync::OnceLock::new();
    *SETTLED.get_or_init(|| unit_n8_search().is_empty())
}

// whether a reduction is refuted by the inputs, with the reason
fn refute(r: Reduction, f2: &Bound, inp: &BoundInputs) -> Option<(String, bool)> {
    match r {
        Reduction::F2ZeroDivisor(n) if n < f2.value => Some((format!("{r}: below F2 bound {}", f2.value), f2.conditional)),
        Reduction::F2Unit(_) if inp.dyk_flag => Some((format!("{r}: external F2 unit result"), false)),
        Reduction::UnitGraphOneTriangle(8) if n8_settled() => {
            Some((format!("{r}: exhaustive search finds no graph"), false))
        }
        _ => None,
    }
}

fn chain(first: usize, last: usize, case_of: impl Fn(usize) -> Result<CaseReport>, f2: &Bound, inp: &BoundInputs) -> Bound {
    let mut b = Bound { value: first, conditional: false, trace: Vec::new() };
    while b.value <= last {
        let Ok(rep) = case_of(b.value) else { break };
        let n = b.value;
        match rep.verdict {
            Verdict::Infeasible { reason } => b.trace.push(format!("n={n}: {reason}")),
            Verdict::ReducesTo { cases } => {
                let mut parts = Vec::new();
                for r in cases {
                    match refute(r, f2, inp) {
                        Some((why, cond)) => {
                            b.conditional |= cond;
                            parts.push(why);
                        }
                        None => {
                            b.trace.push(format!("n={n}: {r} unresolved"));
                            return b;
                        }
                    }
                }
                b.trace.push(format!("n={n}: {}", parts.join("; ")));
            }
            Verdict::Feasible => {
                b.trace.push(format!("n={n}: class profile not excluded"));
                return b;
            }
        }
        b.value += 1;
    }
    b
}

/// Chain the small cases into the three lower bounds.
pub fn final_bounds(inp: &BoundInputs) -> FinalBounds {
    let zero_divisor_f2 = f2_bound(inp);
    let zero_divisor_general = chain(3, 9, zero_divisor_case, &zero_divisor_f2, inp);
    let mut unit_general = chain(2, 8, unit_case, &zero_divisor_f2, inp);
    unit_general.trace.insert(0, "n=1: a single product cannot cancel".into());
    FinalBounds { zero_divisor_general, zero_divisor_f2, unit_general }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_bounds() {
        assert_eq!(product_bound(BoundKind::NonabelianHamidoune, 8).unwrap(), 12);
        assert_eq!(product_bound(BoundKind::TorsionfreeKemperman, 2).unwrap(), 4);
        assert_eq!(product_bound(BoundKind::TorsionfreeKemperman, 1).unwrap(), 3);
        assert!(product_bound(BoundKind::NonabelianHamidoune, 2).is_err());
        assert!(product_bound(BoundKind::TorsionfreeKemperman, 0).is_err());
    }

    // brute-force oracle: all compositions of `cells` as multisets with the size rules
    fn count_profiles(cells: usize, min: usize, unit: bool) -> usize {
        fn parts(left: usize, max: usize) -> Vec<Vec<usize>> {
            if left == 0 {
                return vec![vec![]];
            }
            let mut v = Vec::new();
            for p in 1..=max.min(left) {
                for mut rest in parts(left - p, p) {
                    rest.insert(0, p);
                    v.push(rest);
                }
            }
            v
        }
        let mut k = 0;
        if unit {
            for first in 1..=cells {
                k += parts(cells - first, cells - first)
                    .iter()
                    .filter(|p| p.iter().all(|&s| s >= 2) && p.len() + 1 >= min)
                    .count();
            }
        } else {
            k = parts(cells, cells).iter().filter(|p| p.iter().all(|&s| s >= 2) && p.len() >= min).count();
        }
        k
    }

    #[test]
    fn profiles_match_bruteforce() {
        for n in 2..=9 {
            for unit in [false, true] {
                let min = n + 2;
                assert_eq!(cell_profiles(3 * n, min, unit).len(), count_profiles(3 * n, min, unit), "n={n}");
            }
        }
    }

    #[test]
    fn zero_divisor_cases() {
        for n in 3..=7 {
            assert!(matches!(zero_divisor_case(n).unwrap().verdict, Verdict::Infeasible { .. }), "n={n}");
        }
        match zero_divisor_case(4).unwrap().verdict {
            Verdict::Infeasible { reason } => assert!(reason.starts_with("12-8=4")),
            v => panic!("{v:?}"),
        }
        assert_eq!(
            zero_divisor_case(8).unwrap().verdict,
            Verdict::ReducesTo { cases: vec![Reduction::F2ZeroDivisor(8)] }
        );
        assert_eq!(zero_divisor_case(9).unwrap().verdict, Verdict::ReducesTo { cases: vec![Reduction::F2Unit(9)] });
        assert!(zero_divisor_case(2).is_err() && zero_divisor_case(10).is_err());
    }

    #[test]
    fn unit_cases() {
        for n in [2, 4, 5, 6] {
            assert!(matches!(unit_case(n).unwrap().verdict, Verdict::Infeasible { .. }), "n={n}");
        }
        match unit_case(5).unwrap().verdict {
            Verdict::Infeasible { reason } => assert!(reason.starts_with("15-9=6")),
            v => panic!("{v:?}"),
        }
        assert_eq!(unit_case(3).unwrap().verdict, Verdict::ReducesTo { cases: vec![Reduction::F2Unit(3)] });
        assert_eq!(unit_case(7).unwrap().verdict, Verdict::ReducesTo { cases: vec![Reduction::F2Unit(7)] });
        let Verdict::ReducesTo { mut cases } = unit_case(8).unwrap().verdict else { panic!() };
        cases.sort();
        assert_eq!(cases, vec![Reduction::F2ZeroDivisor(8), Reduction::UnitGraphOneTriangle(8)]);
    }

    #[test]
    fn n8_search() {
        assert!(unit_n8_search().is_empty());
        let no_k23 = unit_n8_search_with(N8Constraints { no_k23: false, ..N8Constraints::ALL });
        assert!(!no_k23.is_empty());
        let many = unit_n8_search_with(N8Constraints { single_triangle: false, ..N8Constraints::ALL });
        assert_eq!((no_k23.len(), many.len()), (1, 1));
        for g in no_k23.iter().chain(&many) {
            let deg: Vec<usize> = (0..8).map(|v| g.degree(v)).collect();
            let mut d = deg.clone();
            d.sort();
            assert_eq!(d, vec![3, 3, 3, 3, 3, 3, 4, 4]);
        }
    }

    #[test]
    fn chained_bounds() {
        let b = final_bounds(&BoundInputs::standard(18, true));
        assert_eq!(b.values(), (10, 20, 9));
        assert!(!b.zero_divisor_f2.conditional);
        let b = final_bounds(&BoundInputs::standard(14, true));
        assert_eq!(b.values(), (10, 20, 9));
        assert!(b.zero_divisor_f2.conditional);
        let b = final_bounds(&BoundInputs::standard(18, false));
        assert_eq!(b.zero_divisor_general.value, 9);
        // the F2 unit result is also what excludes n = 3
        assert_eq!(b.unit_general.value, 3);
    }
}

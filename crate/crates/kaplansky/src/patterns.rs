//! Forbidden-subgraph catalog, subgraph containment and the census sieve.

use serde::Serialize;

use crate::gen;
use crate::graph::{bits, canonical_form, decode_graph6, Graph};
use crate::{Error, Result};

pub const PATTERNS: &str = include_str!("../data/patterns.tsv");
pub const CENSUS_EXPECTED: &str = include_str!("../data/census_expected.tsv");

#[derive(Clone, Debug)]
pub struct PatternEntry {
    /// Position in the catalog, starting at 1.
    pub row: usize,
    pub name: String,
    pub graph: Graph,
}

/// Parse `name<TAB>graph6` lines; blank lines and `#` comments are skipped.
pub fn load_patterns(text: &str) -> Result<Vec<PatternEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, g6) = line
            .split_once('\t')
            .ok_or_else(|| Error::Catalog(format!("line {}: expected name<TAB>graph6", i + 1)))?;
        let graph = decode_graph6(g6)?;
        if graph.max_degree() > 3 || !graph.is_connected() {
            return Err(Error::Catalog(format!("pattern {name}: must be connected with degree <= 3")));
        }
        out.push(PatternEntry { row: out.len() + 1, name: name.to_string(), graph });
    }
    Ok(out)
}

pub fn builtin_patterns() -> Vec<PatternEntry> {
    load_patterns(PATTERNS).expect("bundled catalog")
}

/// True when some injective map sends every pattern edge to a host edge.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    find_embedding(host, pattern, false).is_some()
}

/// Like [`contains_subgraph`] but non-edges must map to non-edges.
pub fn contains_induced(host: &Graph, pattern: &Graph) -> bool {
    find_embedding(host, pattern, true).is_some()
}

/// An embedding `map[p] = host vertex`, if one exists.
pub fn find_embedding(host: &Graph, pattern: &Graph, induced: bool) -> Option<Vec<usize>> {
    let (n, k) = (host.n(), pattern.n());
    if k > n || pattern.edge_count() > host.edge_count() {
        return None;
    }
    if k == 0 {
        return Some(Vec::new());
    }
    let order = match_order(pattern);
    let mut map = vec![usize::MAX; k];
    let mut used = 0u64;
    if extend(host, pattern, induced, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Pattern vertices in an order where each one after the first of its
/// component touches an earlier one: greedy by most mapped neighbours, then
/// degree, then index.
fn match_order(p: &Graph) -> Vec<usize> {
    let k = p.n();
    let mut order = Vec::with_capacity(k);
    let mut placed = 0u64;
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((p.neighbors(v) & placed).count_ones(), p.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    order
}

fn extend(
    host: &Graph,
    pat: &Graph,
    induced: bool,
    order: &[usize],
    i: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if i == order.len() {
        return true;
    }
    let p = order[i];
    let need = pat.degree(p);
    // host vertices adjacent to the images of all mapped pattern neighbours
    let mut cand = if host.n() == 64 { u64::MAX } else { (1u64 << host.n()) - 1 };
    let mut mapped_nbrs = 0u64;
    for q in bits(pat.neighbors(p)) {
        if map[q] != usize::MAX {
            cand &= host.neighbors(map[q]);
            mapped_nbrs |= 1 << q;
        }
    }
    cand &= !*used;
    if induced {
        for &q in &order[..i] {
            if mapped_nbrs >> q & 1 == 0 {
                cand &= !host.neighbors(map[q]);
            }
        }
    }
    for h in bits(cand) {
        if host.degree(h) < need {
            continue;
        }
        map[p] = h;
        *used |= 1 << h;
        if extend(host, pat, induced, order, i + 1, map, used) {
            return true;
        }
        *used &= !(1 << h);
        map[p] = usize::MAX;
    }
    false
}

/// Prism over an `n/2`-cycle: a closed band of `n/2` squares.
pub fn ladder(n: usize) -> Graph {
    assert!(n >= 6 && n % 2 == 0);
    let m = n / 2;
    let mut g = Graph::new(n);
    for i in 0..m {
        g.add_edge(i, (i + 1) % m);
        g.add_edge(m + i, m + (i + 1) % m);
        g.add_edge(i, m + i);
    }
    g
}

/// Möbius ladder: an `n`-cycle with its antipodal chords.
pub fn mobius(n: usize) -> Graph {
    assert!(n >= 6 && n % 2 == 0);
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n);
    }
    for i in 0..n / 2 {
        g.add_edge(i, i + n / 2);
    }
    g
}

pub fn is_ln(g: &Graph) -> bool {
    g.n() >= 6 && g.n() % 2 == 0 && canonical_form(g) == canonical_form(&ladder(g.n()))
}

pub fn is_mn(g: &Graph) -> bool {
    g.n() >= 6 && g.n() % 2 == 0 && canonical_form(g) == canonical_form(&mobius(g.n()))
}

/// One column of the census table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub total: usize,
    /// `(pattern name, graphs charged to it)` in catalog order.
    pub removed: Vec<(String, usize)>,
    pub ln: usize,
    pub mn: usize,
    pub remains: usize,
    /// graph6 of the graphs left over.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub remaining: Vec<String>,
}

impl CensusRow {
    pub fn conserved(&self) -> bool {
        self.removed.iter().map(|r| r.1).sum::<usize>() + self.ln + self.mn + self.remains == self.total
    }
}

/// Index of the first pattern contained in `g`, if any.
pub fn first_match(g: &Graph, catalog: &[PatternEntry]) -> Option<usize> {
    catalog.iter().position(|p| contains_subgraph(g, &p.graph))
}

/// Sequential sieve: each graph is charged to the first pattern it
/// contains, otherwise to `L_n`, `M_n` or the remainder.
pub fn sieve(n: usize, graphs: &[Graph], catalog: &[PatternEntry]) -> CensusRow {
    use rayon::prelude::*;
    let hits: Vec<Option<usize>> = graphs.par_iter().map(|g| first_match(g, catalog)).collect();
    let mut removed: Vec<(String, usize)> = catalog.iter().map(|p| (p.name.clone(), 0)).collect();
    let (mut ln, mut mn) = (0, 0);
    let mut remaining = Vec::new();
    for (g, h) in graphs.iter().zip(&hits) {
        match h {
            Some(i) => removed[*i].1 += 1,
            None if is_ln(g) => ln += 1,
            None if is_mn(g) => mn += 1,
            None => remaining.push(g.to_graph6()),
        }
    }
    CensusRow { n, total: graphs.len(), removed, ln, mn, remains: remaining.len(), remaining }
}

/// Generate the graphs of order `n` and sieve them.
pub fn census(n: usize, catalog: &[PatternEntry]) -> Result<CensusRow> {
    let graphs = gen::generate(n)?;
    Ok(sieve(n, &graphs, catalog))
}

/// The reference table: row label -> counts for `n = 4, 6, ..., 20`.
#[derive(Clone, Debug)]
pub struct ExpectedCensus {
    pub orders: Vec<usize>,
    pub rows: Vec<(String, Vec<usize>)>,
}

impl ExpectedCensus {
    pub fn parse(text: &str) -> Result<ExpectedCensus> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head = lines.next().ok_or_else(|| Error::Catalog("empty census table".into()))?;
        let orders = head
            .split('\t')
            .skip(1)
            .map(|c| c.trim_start_matches("n=").parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Catalog(format!("census header: {e}")))?;
        let mut rows = Vec::new();
        for l in lines {
            let mut cells = l.split('\t');
            let name = cells.next().unwrap().to_string();
            let vals = cells
                .map(str::parse::<usize>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Catalog(format!("census row {name}: {e}")))?;
            if vals.len() != orders.len() {
                return Err(Error::Catalog(format!("census row {name}: wrong width")));
            }
            rows.push((name, vals));
        }
        Ok(ExpectedCensus { orders, rows })
    }

    pub fn builtin() -> ExpectedCensus {
        ExpectedCensus::parse(CENSUS_EXPECTED).expect("bundled census table")
    }

    pub fn get(&self, row: &str, n: usize) -> Option<usize> {
        let j = self.orders.iter().position(|&o| o == n)?;
        self.rows.iter().find(|r| r.0 == row).map(|r| r.1[j])
    }

    /// The expected column for order `n` in [`CensusRow`] shape.
    pub fn column(&self, n: usize, catalog: &[PatternEntry]) -> Option<CensusRow> {
        let removed = catalog
            .iter()
            .map(|p| Some((p.name.clone(), self.get(&p.name, n)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(CensusRow {
            n,
            total: self.get("Total", n)?,
            removed,
            ln: self.get("Ln", n)?,
            mn: self.get("Mn", n)?,
            remains: self.get("Remains", n)?,
            remaining: Vec::new(),
        })
    }
}

/// Column differences between a computed row and the expected one.
pub fn census_mismatches(got: &CensusRow, want: &CensusRow) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |name: &str, a: usize, b: usize| {
        if a != b {
            out.push(format!("{name}: got {a}, expected {b}"));
        }
    };
    check("Total", got.total, want.total);
    for (g, w) in got.removed.iter().zip(&want.removed) {
        check(&g.0, g.1, w.1);
    }
    check("Ln", got.ln, want.ln);
    check("Mn", got.mn, want.mn);
    check("Remains", got.remains, want.remains);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k23() -> Graph {
        Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    }

    #[test]
    fn catalog_sanity() {
        let cat = builtin_patterns();
        assert_eq!(cat.len(), 44);
        assert_eq!(cat[0].name, "K2,3");
        assert!(cat.iter().all(|p| p.graph.is_triangle_free() && p.graph.max_degree() <= 3));
        assert!(contains_subgraph(&cat[0].graph, &k23()) && contains_subgraph(&k23(), &cat[0].graph));
    }

    #[test]
    fn triangle_never_in_triangle_free() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        for n in [6, 8, 10] {
            for g in gen::generate(n).unwrap() {
                assert!(!contains_subgraph(&g, &tri));
            }
        }
    }

    #[test]
    fn induced_is_stricter() {
        // a 4-path sits in C4 as a subgraph but not as an induced subgraph
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(contains_subgraph(&c4, &p4));
        assert!(!contains_induced(&c4, &p4));
    }

    #[test]
    fn ladders() {
        assert!(is_ln(&ladder(16)) && !is_mn(&ladder(16)));
        assert!(is_mn(&mobius(14)) && !is_ln(&mobius(14)));
        let k33 = &gen::generate(6).unwrap()[0];
        // M_6 is K_{3,3}; for n = 6 the families are degenerate
        assert!(is_mn(k33));
        assert!(!is_ln(k33));
    }

    #[test]
    fn census_six_and_ten() {
        let cat = builtin_patterns();
        let want = ExpectedCensus::builtin();
        for n in [6, 10] {
            let got = census(n, &cat).unwrap();
            assert!(got.conserved());
            assert_eq!(census_mismatches(&got, &want.column(n, &cat).unwrap()), Vec::<String>::new());
        }
    }
}

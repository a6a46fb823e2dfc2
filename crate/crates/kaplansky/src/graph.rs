//! Small simple graphs as bit rows, graph6 text and canonical forms.

use std::fmt;

use crate::{Error, Result};

/// Simple undirected graph on at most 64 vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        assert!(n <= 64, "at most 64 vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Append an isolated vertex and return its index.
    pub fn add_vertex(&mut self) -> usize {
        assert!(self.n < 64);
        self.adj.push(0);
        self.n += 1;
        self.n - 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u] >> u >> 1) {
                e.push((u, u + 1 + v));
            }
        }
        e
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == all
    }

    pub fn is_triangle_free(&self) -> bool {
        (0..self.n).all(|u| bits(self.adj[u]).all(|v| self.adj[u] & self.adj[v] == 0))
    }

    /// The graph relabeled so that vertex `perm[i]` becomes `i`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        let mut pos = vec![0; self.n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Graph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(pos[u], pos[v]);
        }
        g
    }

    pub fn to_graph6(&self) -> String {
        encode_graph6(self)
    }
}

/// Indices of set bits, ascending.
pub fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

/// graph6 for graphs with at most 62 vertices: one size byte, then the
/// upper triangle column by column, six bits per printable byte.
pub fn encode_graph6(g: &Graph) -> String {
    assert!(g.n <= 62, "graph6 short form needs n <= 62");
    let mut out = vec![(g.n as u8) + 63];
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..g.n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).unwrap()
}

pub fn decode_graph6(s: &str) -> Result<Graph> {
    let b = s.trim_end().as_bytes();
    let bad = |m: &str| Error::Parse(format!("graph6 {s:?}: {m}"));
    let (&first, body) = b.split_first().ok_or_else(|| bad("empty"))?;
    if !(63..=125).contains(&first) {
        return Err(bad("unsupported size byte"));
    }
    let n = (first - 63) as usize;
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != need {
        return Err(bad("wrong length"));
    }
    if body.iter().any(|c| !(63..=126).contains(c)) {
        return Err(bad("byte out of range"));
    }
    let mut g = Graph::new(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            idx += 1;
        }
    }
    Ok(g)
}

// ---- canonical form -------------------------------------------------------

/// Ordered partition of the vertex set.
type Partition = Vec<Vec<usize>>;

/// Split cells by neighbour counts into every cell until nothing changes.
/// Every step depends only on the cell order and adjacency, so the result
/// commutes with relabeling.
fn refine(g: &Graph, mut p: Partition) -> Partition {
    loop {
        let masks: Vec<u64> = p.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(p.len());
        for cell in &p {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let sig = |v: usize| -> Vec<u32> { masks.iter().map(|m| (g.adj[v] & m).count_ones()).collect() };
            let mut keyed: Vec<(Vec<u32>, usize)> = cell.iter().map(|&v| (sig(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let changed = next.len() != p.len();
        p = next;
        if !changed {
            return p;
        }
    }
}

fn individualize(p: &Partition, cell: usize, v: usize) -> Partition {
    let mut q = Vec::with_capacity(p.len() + 1);
    for (i, c) in p.iter().enumerate() {
        if i == cell {
            q.push(vec![v]);
            q.push(c.iter().copied().filter(|&w| w != v).collect());
        } else {
            q.push(c.clone());
        }
    }
    q
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf_rows(&self, order: &[usize]) -> Vec<u64> {
        let mut pos = vec![0usize; self.g.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order.iter().map(|&v| bits(self.g.adj[v]).fold(0u64, |m, w| m | 1 << pos[w])).collect()
    }

    fn go(&mut self, p: Partition, fixed: &mut Vec<usize>) {
        let Some(ci) = target_cell(&p) else {
            let order: Vec<usize> = p.iter().map(|c| c[0]).collect();
            let rows = self.leaf_rows(&order);
            match &self.best {
                None => self.best = Some((rows, order)),
                Some((b, border)) => {
                    if rows == *b {
                        // two leaves with equal graphs differ by an automorphism
                        let mut auto = vec![0; self.g.n];
                        for (i, &v) in border.iter().enumerate() {
                            auto[v] = order[i];
                        }
                        self.autos.push(auto);
                    } else if rows < *b {
                        self.best = Some((rows, order));
                    }
                }
            }
            return;
        };
        let cell = p[ci].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            // skip v when an automorphism fixing the path maps a tried vertex to it
            if !tried.is_empty() && self.same_orbit(fixed, &tried, v) {
                continue;
            }
            tried.push(v);
            fixed.push(v);
            let q = refine(self.g, individualize(&p, ci, v));
            self.go(q, fixed);
            fixed.pop();
        }
    }

    fn same_orbit(&self, fixed: &[usize], tried: &[usize], v: usize) -> bool {
        let gens: Vec<&Vec<usize>> = self.autos.iter().filter(|a| fixed.iter().all(|&x| a[x] == x)).collect();
        if gens.is_empty() {
            return false;
        }
        let mut seen = 1u64 << v;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for a in &gens {
                let y = a[x];
                if seen >> y & 1 == 0 {
                    if tried.contains(&y) {
                        return true;
                    }
                    seen |= 1 << y;
                    stack.push(y);
                }
            }
        }
        false
    }
}

/// First smallest non-singleton cell.
fn target_cell(p: &Partition) -> Option<usize> {
    p.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i)
}

/// Canonical labeling: `perm[i]` is the vertex placed at position `i`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    if g.n == 0 {
        return Vec::new();
    }
    // start from the degree partition, cells in increasing degree
    let mut by_deg: Vec<Vec<usize>> = vec![Vec::new(); 65];
    for v in 0..g.n {
        by_deg[g.degree(v)].push(v);
    }
    let p: Partition = by_deg.into_iter().filter(|c| !c.is_empty()).collect();
    let p = refine(g, p);
    let mut s = Search { g, best: None, autos: Vec::new() };
    s.go(p, &mut Vec::new());
    s.best.unwrap().1
}

/// The canonically relabeled graph; equal for isomorphic inputs.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.permute(&canonical_labeling(g))
}

/// Canonical form as bytes: vertex count, then the relabeled adjacency rows.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let c = canonical_graph(g);
    let mut out = vec![c.n as u8];
    for r in &c.adj {
        out.extend_from_slice(&r.to_le_bytes()[..c.n.div_ceil(8)]);
    }
    out
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n == b.n && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn k33() -> Graph {
        Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
    }

    #[test]
    fn graph6_hand_packed() {
        // C5 upper triangle by columns: 1 0 1 0 0 1 1 0 0 1 -> 101001 100100 -> 41, 36
        assert_eq!(encode_graph6(&cycle(5)), format!("D{}{}", (41 + 63) as u8 as char, (36 + 63) as u8 as char));
        assert_eq!(encode_graph6(&cycle(5)), "Dhc");
        assert_eq!(encode_graph6(&Graph::new(1)), "@");
        assert_eq!(encode_graph6(&Graph::new(0)), "?");
        assert_eq!(decode_graph6("Dhc").unwrap(), cycle(5));
        // the string quoted as a pentagon elsewhere is a 4-edge path
        assert_eq!(decode_graph6("DQc").unwrap().edge_count(), 4);
        assert!(decode_graph6("Dh").is_err());
        assert!(decode_graph6("").is_err());
    }

    #[test]
    fn basic_predicates() {
        let g = k33();
        assert!(g.is_regular(3) && g.is_connected() && g.is_triangle_free());
        assert!(!Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).is_triangle_free());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).is_connected());
        assert_eq!(g.edges().len(), 9);
    }

    // all permutations of 0..n
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    // brute-force canonical form: least row vector over all relabelings
    fn brute(g: &Graph) -> Vec<u64> {
        perms(g.n).iter().map(|p| g.permute(p).adj).min().unwrap()
    }

    #[test]
    fn canonical_matches_brute_force_isomorphism() {
        // all graphs on 5 vertices: canonical equality == brute-force equality
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let graphs: Vec<Graph> = (0..1u32 << pairs.len())
            .map(|m| Graph::from_edges(5, &bits(m as u64).map(|b| pairs[b]).collect::<Vec<_>>()))
            .collect();
        let mut by_brute = std::collections::HashMap::new();
        let mut by_canon = std::collections::HashMap::new();
        for g in &graphs {
            let nb = by_brute.len();
            let bid = *by_brute.entry(brute(g)).or_insert(nb);
            let nc = by_canon.len();
            let cid = *by_canon.entry(canonical_form(g)).or_insert(nc);
            assert_eq!(bid, cid);
        }
        assert_eq!(by_brute.len(), 34);
    }

    #[test]
    fn permuted_copies_agree() {
        let g = k33();
        for p in perms(6).iter().step_by(37) {
            assert_eq!(canonical_form(&g.permute(p)), canonical_form(&g));
        }
        let petersen = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        );
        let p: Vec<usize> = vec![3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        assert_eq!(canonical_form(&petersen.permute(&p)), canonical_form(&petersen));
    }
}

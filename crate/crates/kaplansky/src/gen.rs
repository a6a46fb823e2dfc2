//! Connected cubic triangle-free graphs on `n` vertices, up to isomorphism.
//!
//! Graphs grow from a single vertex. A step picks one unfinished vertex `v`
//! (degree below 3) and gives it all its remaining edges at once: some to
//! existing unfinished vertices, the rest to fresh vertices. Every
//! intermediate graph is a subgraph of each cubic graph it can grow into, so
//! any choice of `v` reaches every target; isomorphic intermediates are
//! merged through their canonical form.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::graph::{bits, canonical_graph, encode_graph6, Graph};
use crate::{Error, Result};

/// Largest order accepted by [`generate`]. Orders up to 16 run at desk scale.
pub const MAX_ORDER: usize = 22;

/// All connected cubic triangle-free graphs on `n` vertices, canonically
/// labeled and sorted by graph6.
pub fn generate(n: usize) -> Result<Vec<Graph>> {
    if n % 2 == 1 {
        return Err(Error::Domain(format!("cubic graphs need an even order, got {n}")));
    }
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("order {n} exceeds {MAX_ORDER}")));
    }
    if n < 4 {
        return Ok(Vec::new());
    }
    let max_edges = 3 * n / 2;
    let mut levels: Vec<HashSet<Graph>> = vec![HashSet::new(); max_edges + 1];
    levels[0].insert(Graph::new(1));
    let mut done: HashSet<Graph> = HashSet::new();
    for e in 0..=max_edges {
        let level: Vec<Graph> = std::mem::take(&mut levels[e]).into_iter().collect();
        let children: Vec<Graph> = level.par_iter().flat_map_iter(|g| close_one(g, n)).collect();
        for c in children {
            if c.n() == n && c.is_regular(3) {
                done.insert(c);
            } else {
                levels[c.edge_count()].insert(c);
            }
        }
    }
    let mut out: Vec<Graph> = done.into_iter().filter(|g| g.is_connected()).collect();
    out.sort_by_cached_key(encode_graph6);
    Ok(out)
}

/// Count only.
pub fn count(n: usize) -> Result<usize> {
    generate(n).map(|v| v.len())
}

/// Children of `g`: the unfinished vertex of largest degree (lowest index
/// among ties) receives all its remaining edges. Children are canonical.
fn close_one(g: &Graph, n: usize) -> Vec<Graph> {
    let m = g.n();
    let open: Vec<usize> = (0..m).filter(|&v| g.degree(v) < 3).collect();
    let Some(&v) = open.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))) else {
        return Vec::new();
    };
    let need = 3 - g.degree(v);
    // existing partners: unfinished, not adjacent, no common neighbour
    let cands: Vec<usize> = open
        .iter()
        .copied()
        .filter(|&w| w != v && !g.has_edge(v, w) && g.neighbors(v) & g.neighbors(w) == 0)
        .collect();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = Vec::new();
    subsets(&cands, 0, need, &mut pick, &mut |chosen| {
        // chosen partners must be pairwise non-adjacent
        for (i, &a) in chosen.iter().enumerate() {
            if chosen[i + 1..].iter().any(|&b| g.has_edge(a, b)) {
                return;
            }
        }
        let fresh = need - chosen.len();
        if m + fresh > n {
            return;
        }
        let mut h = g.clone();
        for &w in chosen {
            h.add_edge(v, w);
        }
        for _ in 0..fresh {
            let u = h.add_vertex();
            h.add_edge(v, u);
        }
        if completable(&h, n) {
            out.push(canonical_graph(&h));
        }
    });
    out
}

fn subsets(c: &[usize], from: usize, left: usize, pick: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    f(pick);
    if left == 0 {
        return;
    }
    for i in from..c.len() {
        pick.push(c[i]);
        subsets(c, i + 1, left - 1, pick, f);
        pick.pop();
    }
}

/// Cheap necessary condition: with no room for fresh vertices, every
/// unfinished vertex needs enough admissible partners among the others.
fn completable(g: &Graph, n: usize) -> bool {
    if g.n() < n {
        return true;
    }
    let open: u64 = (0..g.n()).filter(|&v| g.degree(v) < 3).fold(0, |m, v| m | 1 << v);
    bits(open).all(|v| {
        let avail = bits(open & !g.neighbors(v) & !(1 << v)).filter(|&w| g.neighbors(v) & g.neighbors(w) == 0).count();
        avail >= 3 - g.degree(v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;

    #[test]
    fn small_counts() {
        assert!(generate(7).is_err());
        assert_eq!(count(4).unwrap(), 0);
        assert_eq!(count(6).unwrap(), 1);
        assert_eq!(count(8).unwrap(), 2);
        assert_eq!(count(10).unwrap(), 6);
    }

    #[test]
    fn outputs_are_valid_and_distinct() {
        let gs = generate(10).unwrap();
        let forms: HashSet<Vec<u8>> = gs.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), gs.len());
        for g in &gs {
            assert!(g.is_regular(3) && g.is_connected() && g.is_triangle_free());
        }
    }

    #[test]
    fn six_is_k33() {
        let g = &generate(6).unwrap()[0];
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        assert_eq!(canonical_form(g), canonical_form(&k33));
    }
}

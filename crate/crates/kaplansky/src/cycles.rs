//! Letter assignments on edge-ends of cycles and cycle complexes, their
//! dihedral classes and the relators they force.
//!
//! An edge `(u, v)` labelled `(a, b)` encodes `a g_u = b g_v`. Walking a cycle
//! `v1 -> v2 -> ... -> vk -> v1` gives the tuple `[a1, b1, ..., ak, bk]` and
//! the relator `a1^-1 b1 a2^-1 b2 ... ak^-1 bk`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::quotient::{bs_normalize, classify, classify_finite_first, Budget, Verdict, VerdictKind};
use crate::words::{Letter, Presentation, Word};
use crate::{Error, Result};

/// A graph whose edge-ends carry letters, with an ordered list of cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleComplex {
    pub name: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    /// Each cycle as a closed vertex sequence (first vertex not repeated).
    pub cycles: Vec<Vec<usize>>,
    /// The edge whose first end is normalized to the identity.
    #[serde(default)]
    pub normalized_edge: usize,
}

/// Letters at the two ends of every edge: `(at edge.0, at edge.1)`.
pub type EndLabeling = Vec<(Letter, Letter)>;

impl CycleComplex {
    pub fn cycle(k: usize) -> CycleComplex {
        CycleComplex {
            name: format!("C{k}"),
            vertices: k,
            edges: (0..k).map(|i| (i, (i + 1) % k)).collect(),
            cycles: vec![(0..k).collect()],
            normalized_edge: 0,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Structural checks: simple edges, degree at most 3, cycles are simple closed walks.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Catalog(format!("{}: {m}", self.name)));
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u == v || u >= self.vertices || v >= self.vertices {
                return bad(format!("bad edge ({u}, {v})"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return bad(format!("repeated edge ({u}, {v})"));
            }
        }
        if let Some(v) = self.degrees().iter().position(|&d| d > 3) {
            return bad(format!("vertex {v} has degree > 3"));
        }
        for c in &self.cycles {
            let distinct: BTreeSet<_> = c.iter().collect();
            if c.len() < 3 || distinct.len() != c.len() {
                return bad(format!("cycle {c:?} is not simple"));
            }
            for i in 0..c.len() {
                if self.edge_index(c[i], c[(i + 1) % c.len()]).is_none() {
                    return bad(format!("cycle {c:?} uses a missing edge"));
                }
            }
        }
        if self.normalized_edge >= self.edges.len() {
            return bad("normalized edge out of range".into());
        }
        Ok(())
    }

    /// Index of the edge joining `u` and `v`, with `true` when stored as `(u, v)`.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<(usize, bool)> {
        self.edges.iter().enumerate().find_map(|(i, &(a, b))| {
            if (a, b) == (u, v) {
                Some((i, true))
            } else if (a, b) == (v, u) {
                Some((i, false))
            } else {
                None
            }
        })
    }

    /// The `2k`-tuple read along cycle `c`.
    pub fn tuple(&self, l: &EndLabeling, c: usize) -> Vec<Letter> {
        let cyc = &self.cycles[c];
        let k = cyc.len();
        let mut t = Vec::with_capacity(2 * k);
        for i in 0..k {
            let (e, fwd) = self.edge_index(cyc[i], cyc[(i + 1) % k]).unwrap();
            let (x, y) = l[e];
            if fwd {
                t.extend([x, y]);
            } else {
                t.extend([y, x]);
            }
        }
        t
    }
}

/// `r(T) = a1^-1 b1 ... ak^-1 bk`, freely reduced.
pub fn relator_of_tuple(t: &[Letter]) -> Word {
    let mut w = Word::identity();
    for pair in t.chunks(2) {
        w = w.mul(&pair[0].word().inverse()).mul(&pair[1].word());
    }
    w
}

/// Relator of cycle `c` of a labelled complex.
pub fn relator_of(cx: &CycleComplex, l: &EndLabeling, c: usize) -> Word {
    relator_of_tuple(&cx.tuple(l, c))
}

/// All labelings satisfying E1 (distinct letters on an edge) and V1 (distinct
/// letters around a vertex). With `normalize_first_end`, the first end of the
/// normalized edge is fixed to the identity.
pub fn enumerate_labelings(cx: &CycleComplex, normalize_first_end: bool) -> Vec<EndLabeling> {
    if cx.degrees().iter().any(|&d| d > 3) {
        return Vec::new();
    }
    let m = cx.edges.len();
    // edge order: normalized edge first so the fixed letter prunes early
    let mut order: Vec<usize> = (0..m).collect();
    order.swap(0, cx.normalized_edge);
    let mut used = vec![[false; 3]; cx.vertices];
    let mut cur = vec![(Letter::Identity, Letter::Identity); m];
    let mut out = Vec::new();
    fn rec(
        cx: &CycleComplex,
        order: &[usize],
        i: usize,
        norm: bool,
        used: &mut Vec<[bool; 3]>,
        cur: &mut EndLabeling,
        out: &mut Vec<EndLabeling>,
    ) {
        if i == order.len() {
            out.push(cur.clone());
            return;
        }
        let e = order[i];
        let (u, v) = cx.edges[e];
        for a in Letter::ALL {
            if norm && i == 0 && a != Letter::Identity {
                continue;
            }
            if used[u][a as usize] {
                continue;
            }
            for b in Letter::ALL {
                if a == b || used[v][b as usize] {
                    continue;
                }
                used[u][a as usize] = true;
                used[v][b as usize] = true;
                cur[e] = (a, b);
                rec(cx, order, i + 1, norm, used, cur, out);
                used[u][a as usize] = false;
                used[v][b as usize] = false;
            }
        }
    }
    rec(cx, &order, 0, normalize_first_end, &mut used, &mut cur, &mut out);
    out
}

/// Orbit of a single-cycle tuple under rotation by whole edges and reversal.
pub fn orbit(t: &[Letter]) -> Vec<Vec<Letter>> {
    let k = t.len() / 2;
    let mut out = Vec::with_capacity(2 * k);
    let rev: Vec<Letter> = (0..k).flat_map(|i| {
        let j = (k - i) % k;
        [t[2 * j + 1], t[2 * j]]
    })
    .collect();
    for base in [t, &rev[..]] {
        for r in 0..k {
            out.push((0..2 * k).map(|i| base[(2 * r + i) % (2 * k)]).collect());
        }
    }
    out
}

/// A dihedral class of single-cycle tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleClass {
    /// Position in the sorted list of canonical tuples, starting at 1.
    pub row: usize,
    pub tuple: Vec<Letter>,
    pub orbit_size: usize,
    pub relator: Word,
}

/// Classes of `k`-cycle tuples, sorted by their least orbit member.
pub fn tuple_classes(k: usize) -> Vec<TupleClass> {
    let cx = CycleComplex::cycle(k);
    let mut reps: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
    for l in enumerate_labelings(&cx, false) {
        let t = cx.tuple(&l, 0);
        let orb = orbit(&t);
        let least = orb.iter().min().unwrap().clone();
        let distinct: BTreeSet<_> = orb.into_iter().collect();
        reps.insert(least, distinct.len());
    }
    reps.into_iter()
        .enumerate()
        .map(|(i, (tuple, orbit_size))| TupleClass {
            row: i + 1,
            relator: relator_of_tuple(&tuple).relation_key(),
            tuple,
            orbit_size,
        })
        .collect()
}

/// A classified single-cycle class.
#[derive(Clone, Debug, Serialize)]
pub struct ClassifiedClass {
    #[serde(flatten)]
    pub class: TupleClass,
    pub verdict: Verdict,
}

pub fn classify_cycle(k: usize, budget: &Budget) -> Vec<ClassifiedClass> {
    tuple_classes(k)
        .into_par_iter()
        .map(|c| {
            let verdict = classify(&Presentation::new([c.relator.clone()]), budget);
            ClassifiedClass { class: c, verdict }
        })
        .collect()
}

/// Relation keys of a cycle length that no detector resolves.
pub fn survivors(k: usize, budget: &Budget) -> BTreeSet<Word> {
    classify_cycle(k, budget)
        .into_iter()
        .filter(|c| !c.verdict.kind.resolves())
        .map(|c| c.class.relator)
        .collect()
}

/// Column `E` of the square table: row number and detector letter.
pub const C4_TABLE: &str = include_str!("../data/c4_table.tsv");

pub fn c4_table() -> Vec<(usize, String)> {
    C4_TABLE
        .lines()
        .skip(1)
        .filter_map(|l| l.split_once('\t'))
        .map(|(r, e)| (r.parse().expect("row number"), e.to_string()))
        .collect()
}

/// Whether a table letter (`A`, `T`, `BS(m,n)`, `*`) agrees with a verdict.
/// Baumslag-Solitar parameters are compared up to `bs_normalize`.
pub fn table_label_matches(label: &str, v: &VerdictKind) -> bool {
    match (label, v) {
        ("A", VerdictKind::Abelian | VerdictKind::Cyclic) => true,
        ("T", VerdictKind::TorsionWitness { .. }) => true,
        ("*", VerdictKind::Unresolved) => true,
        (l, VerdictKind::BsQuotient { m, n }) => l
            .strip_prefix("BS(")
            .and_then(|t| t.strip_suffix(')'))
            .and_then(|t| t.split_once(','))
            .and_then(|(a, b)| Some((a.trim().parse::<i32>().ok()?, b.trim().parse::<i32>().ok()?)))
            .is_some_and(|(a, b)| bs_normalize(a, b) == bs_normalize(*m, *n)),
        _ => false,
    }
}

/// Per-cycle relation keys admitted in each composite position.
pub type SurvivorSets = HashMap<usize, BTreeSet<Word>>;

/// Bundled catalog of composite structures.
pub const CATALOG: &str = include_str!("../data/complexes.json");

/// Parse and validate a catalog: a JSON array of complexes.
pub fn load_catalog(json: &str) -> Result<Vec<CycleComplex>> {
    let list: Vec<CycleComplex> = serde_json::from_str(json)?;
    for cx in &list {
        cx.validate()?;
    }
    Ok(list)
}

pub fn builtin_catalog() -> Vec<CycleComplex> {
    load_catalog(CATALOG).expect("bundled catalog")
}

/// Look a structure up by name.
pub fn find_complex(catalog: &[CycleComplex], name: &str) -> Result<CycleComplex> {
    catalog
        .iter()
        .find(|c| c.name == name)
        .cloned()
        .ok_or_else(|| Error::Catalog(format!("unknown structure {name:?}")))
}

/// Rows of the single-cycle tables that the hand analysis disproves, keyed by cycle length.
pub const TABLE_DISPROVED: &str = include_str!("../data/disproved_rows.json");

/// Admitted relations per cycle length: the classes whose rows are not listed as disproved.
pub fn survivor_sets_from_disproved(disproved: &BTreeMap<usize, Vec<usize>>) -> SurvivorSets {
    disproved
        .iter()
        .map(|(&k, rows)| {
            let set = tuple_classes(k)
                .into_iter()
                .filter(|c| !rows.contains(&c.row))
                .map(|c| c.relator)
                .collect();
            (k, set)
        })
        .collect()
}

/// Survivor sets of the hand analysis for lengths 4, 5 and 6; length 7 is unfiltered.
pub fn table_survivor_sets() -> SurvivorSets {
    let rows: BTreeMap<usize, Vec<usize>> = serde_json::from_str(TABLE_DISPROVED).expect("bundled table");
    survivor_sets_from_disproved(&rows)
}

/// Survivor sets computed by the single-relator classifier for the given lengths.
pub fn computed_survivor_sets(lengths: &[usize], budget: &Budget) -> SurvivorSets {
    lengths.iter().map(|&k| (k, survivors(k, budget))).collect()
}

/// Distinct tuples of per-cycle relations over normalized labelings in which
/// every cycle's relation lies in the admitted set for its length (all
/// relations are admitted for a length absent from `allowed`).
pub fn relation_cases(cx: &CycleComplex, allowed: &SurvivorSets) -> (usize, Vec<Vec<Word>>) {
    let labelings = enumerate_labelings(cx, true);
    let mut cases: BTreeSet<Vec<Word>> = BTreeSet::new();
    let mut kept = 0;
    'lab: for l in &labelings {
        let mut rels = Vec::with_capacity(cx.cycles.len());
        for c in 0..cx.cycles.len() {
            let r = relator_of(cx, l, c).relation_key();
            if let Some(set) = allowed.get(&cx.cycles[c].len()) {
                if !set.contains(&r) {
                    continue 'lab;
                }
            }
            rels.push(r);
        }
        kept += 1;
        cases.insert(rels);
    }
    (kept, cases.into_iter().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexCase {
    pub relations: Vec<Word>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ResolvedBy {
    pub torsion: usize,
    pub bs: usize,
    pub abelian: usize,
    pub finite_solvable: usize,
    /// Finite but not solvable: still a contradiction, since a nontrivial finite group has torsion.
    pub finite_unsolvable: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexReport {
    pub name: String,
    /// Labelings that passed the per-cycle filter, before merging equal relation tuples.
    pub labelings: usize,
    pub total: usize,
    pub finite_solvable: usize,
    pub resolved_by: ResolvedBy,
    /// Cases whose group is not shown finite, each with the verdict of the remaining detectors.
    pub survivors: Vec<ComplexCase>,
}

impl ComplexReport {
    pub fn unresolved(&self) -> usize {
        self.survivors.iter().filter(|c| !c.verdict.kind.resolves()).count()
    }
}

/// Classify every relation case of a complex. Coset enumeration runs first
/// so the finite-and-solvable count is independent of the Tietze budget.
pub fn classify_complex(cx: &CycleComplex, allowed: &SurvivorSets, budget: &Budget) -> ComplexReport {
    let (labelings, cases) = relation_cases(cx, allowed);
    let verdicts: Vec<ComplexCase> = cases
        .into_par_iter()
        .map(|relations| {
            let verdict = classify_finite_first(&Presentation::new(relations.clone()), budget);
            ComplexCase { relations, verdict }
        })
        .collect();
    let mut rb = ResolvedBy::default();
    let mut survivors = Vec::new();
    for c in &verdicts {
        match c.verdict.kind {
            VerdictKind::Finite { solvable: true, .. } => {
                rb.finite_solvable += 1;
                continue;
            }
            VerdictKind::Finite { solvable: false, .. } => {
                rb.finite_unsolvable += 1;
                continue;
            }
            VerdictKind::TorsionWitness { .. } => rb.torsion += 1,
            VerdictKind::BsQuotient { .. } => rb.bs += 1,
            VerdictKind::Abelian | VerdictKind::Cyclic => rb.abelian += 1,
            _ => {}
        }
        survivors.push(c.clone());
    }
    ComplexReport {
        name: cx.name.clone(),
        labelings,
        total: verdicts.len(),
        finite_solvable: rb.finite_solvable,
        resolved_by: rb,
        survivors,
    }
}

/// Every unordered pair of distinct relations, classified with coset
/// enumeration first.
pub fn classify_pairs(rels: &[Word], budget: &Budget) -> Vec<ComplexCase> {
    let mut pairs = Vec::new();
    for i in 0..rels.len() {
        for j in i + 1..rels.len() {
            pairs.push(vec![rels[i].clone(), rels[j].clone()]);
        }
    }
    pairs
        .into_par_iter()
        .map(|relations| {
            let verdict = classify_finite_first(&Presentation::new(relations.clone()), budget);
            ComplexCase { relations, verdict }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{Identity as I, H2, H3};

    #[test]
    fn raw_counts_match_brute_force() {
        for k in 3..=6 {
            let cx = CycleComplex::cycle(k);
            let fast = enumerate_labelings(&cx, false).len();
            // brute force: all 3^(2k) assignments filtered by the chain inequality
            let mut brute = 0;
            for code in 0..3usize.pow(2 * k as u32) {
                let mut c = code;
                let t: Vec<usize> = (0..2 * k)
                    .map(|_| {
                        let d = c % 3;
                        c /= 3;
                        d
                    })
                    .collect();
                if (0..2 * k).all(|i| t[i] != t[(i + 1) % (2 * k)]) {
                    brute += 1;
                }
            }
            assert_eq!(fast, brute);
            assert_eq!(fast, (1 << (2 * k)) + 2);
        }
    }

    #[test]
    fn orbit_sizes_sum_to_raw_count() {
        for k in 4..=6 {
            let cl = tuple_classes(k);
            let total: usize = cl.iter().map(|c| c.orbit_size).sum();
            assert_eq!(total, (1 << (2 * k)) + 2);
            assert!(cl.iter().all(|c| (2 * k) % c.orbit_size == 0));
        }
    }

    #[test]
    fn orbit_members_share_relation() {
        for c in tuple_classes(5) {
            for t in orbit(&c.tuple) {
                assert_eq!(relator_of_tuple(&t).relation_key(), c.relator);
            }
        }
    }

    #[test]
    fn remark_tuple_gives_row_14() {
        let t = [H2, I, H2, H3, I, H2, I, H3];
        let r = relator_of_tuple(&t).relation_key();
        assert_eq!(r, "h2 h3 h2^-2 h3".parse::<Word>().unwrap().relation_key());
        assert_eq!(tuple_classes(4)[13].relator, r);
    }

    #[test]
    fn double_traversal_squares_relator() {
        let t = [H2, I, H2, H3, I, H2, I, H3];
        let twice: Vec<Letter> = t.iter().chain(&t).copied().collect();
        assert_eq!(relator_of_tuple(&twice), relator_of_tuple(&t).pow(2));
    }

    #[test]
    fn reversal_inverts_relator() {
        let t = [H2, I, H3, H2, I, H3, H2, H3];
        let rev = &orbit(&t)[4];
        assert_eq!(relator_of_tuple(rev).cyclic_canonical(), relator_of_tuple(&t).inverse().cyclic_canonical());
    }

    #[test]
    fn triangle_relator() {
        // a g_i = b g_j, c g_j = d g_k, e g_k = f g_i
        let t = [I, H2, I, H3, H2, H3];
        assert_eq!(relator_of_tuple(&t).to_string(), "h2 h3 h2^-1 h3");
    }

    #[test]
    fn degree_four_is_infeasible() {
        let cx = CycleComplex {
            name: "star".into(),
            vertices: 5,
            edges: vec![(0, 1), (0, 2), (0, 3), (0, 4)],
            cycles: vec![],
            normalized_edge: 0,
        };
        assert!(cx.validate().is_err());
        assert!(enumerate_labelings(&cx, false).is_empty());
    }
}

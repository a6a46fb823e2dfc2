//! Detectors that rule out a two-generator relation set: torsion, a
//! Baumslag-Solitar shaped relator, a finite solvable group, or a cyclic group.

pub mod abelian;
pub mod coset;
pub mod solvable;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

pub use abelian::{abelian_invariants, has_free_factor};
pub use coset::{coset_enumerate, enumerate_with, CosetOutcome, CosetTable, Strategy};
pub use solvable::{derived_series, finite_solvable};

use crate::words::{Gen, Presentation, TietzeMove, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Maximum number of elementary substitutions in the Tietze search.
    pub depth: usize,
    pub max_cosets: usize,
    /// Relators may grow by at most this many letters over the start.
    pub len_slack: usize,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { depth: 6, max_cosets: 200_000, len_slack: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum VerdictKind {
    Abelian,
    Cyclic,
    TorsionWitness { root: Word, exponent: u32 },
    BsQuotient { m: i32, n: i32 },
    Finite { order: usize, solvable: bool },
    Unresolved,
}

impl VerdictKind {
    /// Single-letter table label for this verdict.
    pub fn label(&self) -> String {
        match self {
            VerdictKind::Abelian | VerdictKind::Cyclic => "A".into(),
            VerdictKind::TorsionWitness { .. } => "T".into(),
            VerdictKind::BsQuotient { m, n } => format!("BS({m},{n})"),
            VerdictKind::Finite { solvable: true, .. } => "F".into(),
            VerdictKind::Finite { solvable: false, .. } => "F*".into(),
            VerdictKind::Unresolved => "*".into(),
        }
    }

    /// True when the verdict contradicts the torsion-free zero-divisor
    /// hypothesis. Every finite group does: it has torsion or is trivial.
    pub fn resolves(&self) -> bool {
        !matches!(self, VerdictKind::Unresolved)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub kind: VerdictKind,
    pub evidence: Vec<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind.label())
    }
}

/// Normalize `BS(m, n)` under `(m,n) ~ (n,m) ~ (-m,-n)`: first entry positive,
/// smaller magnitude first.
pub fn bs_normalize(m: i32, n: i32) -> (i32, i32) {
    let cands = [(m, n), (n, m), (-m, -n), (-n, -m)];
    cands
        .into_iter()
        .filter(|&(a, _)| a > 0)
        .min_by_key(|&(a, b)| (a.abs().max(b.abs()) != b.abs(), a, b.abs(), b < 0))
        .unwrap_or((m, n))
}

/// Cyclic reduction equals `root^k` with `k >= 2`, largest such `k`.
pub fn proper_power(w: &Word) -> Option<(Word, u32)> {
    let c = w.cyclic_reduce();
    let l = c.letters();
    let n = l.len();
    (1..n).filter(|p| n % p == 0).find_map(|p| {
        let periodic = (p..n).all(|i| l[i] == l[i - p]);
        (periodic && n / p >= 2).then(|| (Word::from_letters(&l[..p]), (n / p) as u32))
    })
}

/// First relator that is a proper power.
pub fn torsion_witness(p: &Presentation) -> Option<(Word, u32)> {
    p.relators.iter().find_map(proper_power)
}

/// True when the abelianization is a finite group (no free factor).
pub fn finite_abelianization(p: &Presentation) -> bool {
    !has_free_factor(p)
}

/// Match `y^-1 x^a y x^-b` up to rotation, inversion, generator swap and
/// generator inversion. Returns the normalized `(a, b)`.
pub fn bs_shape(w: &Word) -> Option<(i32, i32)> {
    let c = w.cyclic_reduce();
    let s = c.syllables();
    if s.len() != 4 {
        return None;
    }
    // syllables alternate generators around the cycle: x^p y^q x^r y^t
    for off in 0..2 {
        let (_, p) = s[off];
        let (_, q) = s[off + 1];
        let (_, r) = s[(off + 2) % 4];
        let (_, t) = s[(off + 3) % 4];
        if q.abs() == 1 && t == -q {
            // x^p y' x^r y'^-1 with y' = y^q, i.e. y'^-1 x^p y' = x^-r
            return Some(bs_normalize(p, -r));
        }
    }
    None
}

/// A relator in which some generator occurs exactly once writes that
/// generator as a word in the other, so the group is cyclic.
pub fn cyclic_relator(p: &Presentation) -> Option<(Word, Gen)> {
    p.relators.iter().find_map(|r| {
        [Gen::H2, Gen::H3].into_iter().find(|&g| r.occurrences(g) == 1).map(|g| (r.clone(), g))
    })
}

/// Two relators `x^a y^b` and `s` where, writing `z = x^a = y^-b` (central,
/// being a power of each generator), `s` collapses to `z^e` with `e != 0`.
/// Then `x^(a e) = 1`. Returns `(x, a e)`.
pub fn central_power_torsion(p: &Presentation) -> Option<(Word, u32)> {
    for r in &p.relators {
        let c = r.cyclic_reduce();
        let &[(x, a), (y, b)] = c.syllables() else { continue };
        for s in &p.relators {
            if s == r {
                continue;
            }
            if let Some(e) = collapse_to_center(s, x, a, y, -b) {
                if e != 0 {
                    return Some((Word::gen(x, 1), (a * e).unsigned_abs()));
                }
            }
        }
    }
    None
}

/// Rewrite `w` modulo the central element `z = x^a = y^c`; `Some(e)` when
/// `w = z^e` exactly.
fn collapse_to_center(w: &Word, x: Gen, a: i32, y: Gen, c: i32) -> Option<i32> {
    let mut cur = w.cyclic_reduce();
    let mut e = 0;
    loop {
        let mut rest = Vec::new();
        let mut moved = false;
        for &(g, m) in cur.syllables() {
            let d = if g == x { a } else { c };
            debug_assert!(g == x || g == y);
            let q = m.div_euclid(d);
            if q != 0 {
                moved = true;
                e += q;
            }
            rest.push((g, m - q * d));
        }
        cur = crate::words::reduce(&rest).cyclic_reduce();
        if cur.is_identity() {
            return Some(e);
        }
        if !moved {
            return None;
        }
    }
}

/// Current generators after `moves`, written in the original ones.
pub fn generator_images(moves: &[TietzeMove]) -> (Word, Word) {
    let mut e = (Word::gen(Gen::H2, 1), Word::gen(Gen::H3, 1));
    for mv in moves {
        let (a, b) = mv.inverse().images();
        e = (a.substitute(&e.0, &e.1), b.substitute(&e.0, &e.1));
    }
    e
}

/// The 8 symmetries generated by swapping and inverting generators.
fn symmetry_key(p: &Presentation) -> Vec<Vec<u8>> {
    let h2 = Word::gen(Gen::H2, 1);
    let h3 = Word::gen(Gen::H3, 1);
    let mut best: Option<Vec<Vec<u8>>> = None;
    for swap in [false, true] {
        for e2 in [1, -1] {
            for e3 in [1, -1] {
                let (a, b) = (h2.pow(e2), h3.pow(e3));
                let q = p.map(|w| {
                    let v = w.substitute(&a, &b);
                    if swap {
                        v.swap()
                    } else {
                        v
                    }
                });
                let key: Vec<Vec<u8>> = q.relators.iter().map(|r| r.letters()).collect();
                if best.as_ref().map_or(true, |b| key < *b) {
                    best = Some(key);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// A node reached by the Tietze search.
#[derive(Clone, Debug)]
pub struct SearchHit<T> {
    pub presentation: Presentation,
    pub moves: Vec<TietzeMove>,
    pub found: T,
}

/// Breadth-first search over sequences of at most `depth` elementary
/// substitutions. States are deduplicated up to generator symmetries and
/// relators may not grow beyond the budget's length slack. Returns the first
/// node, in breadth-first order, where `detect` fires.
pub fn tietze_search<T>(
    p: &Presentation,
    budget: &Budget,
    mut detect: impl FnMut(&Presentation) -> Option<T>,
) -> Option<SearchHit<T>> {
    let max_len = p.total_len() + budget.len_slack;
    let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::new();
    let mut queue: VecDeque<(Presentation, Vec<TietzeMove>)> = VecDeque::new();
    seen.insert(symmetry_key(p));
    queue.push_back((p.clone(), Vec::new()));
    while let Some((q, path)) = queue.pop_front() {
        if let Some(found) = detect(&q) {
            return Some(SearchHit { presentation: q, moves: path, found });
        }
        if path.len() >= budget.depth {
            continue;
        }
        for mv in TietzeMove::ALL {
            let next = crate::words::tietze_substitute(&q, mv);
            if next.total_len() > max_len {
                continue;
            }
            if seen.insert(symmetry_key(&next)) {
                let mut np = path.clone();
                np.push(mv);
                queue.push_back((next, np));
            }
        }
    }
    None
}

/// Search for a relator of Baumslag-Solitar shape.
pub fn bs_quotient_search(p: &Presentation, depth: usize) -> Option<(i32, i32)> {
    let budget = Budget { depth, ..Budget::default() };
    bs_search_hit(p, &budget).map(|h| h.found)
}

fn bs_search_hit(p: &Presentation, budget: &Budget) -> Option<SearchHit<(i32, i32)>> {
    tietze_search(p, budget, |q| q.relators.iter().find_map(bs_shape))
}

/// `BS(m, n)` is solvable iff `|m| = 1` or `|n| = 1`.
pub fn bs_solvable(m: i32, n: i32) -> bool {
    m.abs() == 1 || n.abs() == 1
}

enum Found {
    Bs(i32, i32),
    Torsion(Word, u32),
    Cyclic(Word),
}

fn moves_text(moves: &[TietzeMove]) -> Vec<String> {
    moves.iter().map(|m| format!("substitute {m}")).collect()
}

/// Classify a presentation.
///
/// Order: torsion, Baumslag-Solitar shape, coset enumeration, cyclic. A
/// relator `w^k` whose root is a power of one generator is a torsion
/// witness. Any other proper power is replaced by its root, since a
/// torsion-free group forces `w = 1`, and classification continues.
pub fn classify(p: &Presentation, budget: &Budget) -> Verdict {
    let mut evidence = Vec::new();
    let mut cur = p.clone();
    while let Some((root, k)) = torsion_witness(&cur) {
        if root.syllables().len() == 1 {
            evidence.push(format!("relator ({root})^{k} with root a generator power"));
            return Verdict { kind: VerdictKind::TorsionWitness { root, exponent: k }, evidence };
        }
        evidence.push(format!("torsion-free: ({root})^{k} = 1 implies {root} = 1"));
        cur = Presentation::new(cur.relators.iter().map(|r| match proper_power(r) {
            Some((w, _)) => w,
            None => r.clone(),
        }));
    }
    classify_reduced(&cur, budget, evidence, false)
}

/// Classification where coset enumeration runs before the Tietze detectors.
pub fn classify_finite_first(p: &Presentation, budget: &Budget) -> Verdict {
    if let Some(v) = finite_check(p, budget) {
        return v;
    }
    let mut v = classify(p, budget);
    if matches!(v.kind, VerdictKind::Finite { .. }) {
        // unreachable: the finite check already ran with the same budget
        v.kind = VerdictKind::Unresolved;
    }
    v
}

fn finite_check(p: &Presentation, budget: &Budget) -> Option<Verdict> {
    if has_free_factor(p) {
        return None;
    }
    let t = coset_enumerate(p, budget.max_cosets)?;
    let solvable = finite_solvable(&t);
    Some(Verdict {
        kind: VerdictKind::Finite { order: t.order(), solvable },
        evidence: vec![format!("coset table closed with {} cosets", t.order())],
    })
}

fn classify_reduced(p: &Presentation, budget: &Budget, mut evidence: Vec<String>, skip_finite: bool) -> Verdict {
    let single = p.relators.len() == 1;
    let mut first_cyclic: Option<(Vec<TietzeMove>, Word)> = None;
    let hit = tietze_search(p, budget, |q| {
        let solvable_bs = q.relators.iter().filter_map(bs_shape).find(|&(m, n)| bs_solvable(m, n));
        if let Some((m, n)) = solvable_bs {
            return Some(Found::Bs(m, n));
        }
        if !single {
            if let Some((x, k)) = central_power_torsion(q) {
                return Some(Found::Torsion(x, k));
            }
        }
        if let Some((r, _)) = cyclic_relator(q) {
            if single {
                // a primitive relator presents Z, never a Baumslag-Solitar group
                return Some(Found::Cyclic(r));
            }
            if first_cyclic.is_none() {
                first_cyclic = Some((Vec::new(), r));
            }
        }
        None
    });
    match hit {
        Some(SearchHit { moves, found: Found::Bs(m, n), presentation }) => {
            evidence.extend(moves_text(&moves));
            let r = presentation.relators.iter().find(|r| bs_shape(r) == Some((m, n))).unwrap();
            evidence.push(format!("relator {r} has Baumslag-Solitar shape"));
            return Verdict { kind: VerdictKind::BsQuotient { m, n }, evidence };
        }
        Some(SearchHit { moves, found: Found::Torsion(x, k), presentation }) => {
            evidence.extend(moves_text(&moves));
            let (e2, e3) = generator_images(&moves);
            let root = x.substitute(&e2, &e3);
            evidence.push(format!("in {presentation}: a power of {x} is central and ({x})^{k} = 1"));
            return Verdict { kind: VerdictKind::TorsionWitness { root, exponent: k }, evidence };
        }
        Some(SearchHit { moves, found: Found::Cyclic(r), .. }) => {
            evidence.extend(moves_text(&moves));
            evidence.push(format!("relator {r} expresses one generator in the other"));
            return Verdict { kind: VerdictKind::Cyclic, evidence };
        }
        None => {}
    }
    if !skip_finite {
        if let Some(v) = finite_check(p, budget) {
            evidence.extend(v.evidence);
            return Verdict { kind: v.kind, evidence };
        }
    }
    if let Some((_, r)) = first_cyclic {
        evidence.push(format!("relator {r} expresses one generator in the other"));
        return Verdict { kind: VerdictKind::Cyclic, evidence };
    }
    Verdict { kind: VerdictKind::Unresolved, evidence }
}

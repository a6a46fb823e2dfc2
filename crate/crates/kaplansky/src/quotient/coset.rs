//! Todd-Coxeter coset enumeration over the trivial subgroup.
//!
//! Columns are `h2, h2^-1, h3, h3^-1` (index `c ^ 1` is the inverse column).

use serde::Serialize;

use crate::words::Presentation;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Relator-based: scan every relator from every coset, defining as needed.
    Hlt,
    /// Definition-based: fill the first hole, then chase all deductions.
    Felsch,
}

/// A closed coset table: `rows[c][x]` is coset `c` acted on by column `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub rows: Vec<[u32; 4]>,
}

impl CosetTable {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Permutation of the cosets induced by a column.
    pub fn perm(&self, col: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[col]).collect()
    }

    pub fn trace(&self, start: u32, word: &[u8]) -> u32 {
        word.iter().fold(start, |c, &x| self.rows[c as usize][x as usize])
    }

    /// Every relator fixes every coset and the columns are mutually inverse bijections.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        let n = self.rows.len() as u32;
        for (c, r) in self.rows.iter().enumerate() {
            for x in 0..4 {
                if r[x] >= n || self.rows[r[x] as usize][x ^ 1] != c as u32 {
                    return false;
                }
            }
        }
        let words: Vec<Vec<u8>> = p.relators.iter().map(|w| w.letters()).collect();
        (0..n).all(|c| words.iter().all(|w| self.trace(c, w) == c))
    }

    /// Breadth-first order from coset 0 visits every coset.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.rows.len()];
        let mut q = vec![0u32];
        seen[0] = true;
        while let Some(c) = q.pop() {
            for &d in &self.rows[c as usize] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    q.push(d);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetOutcome {
    Closed(CosetTable),
    /// The coset limit was reached before the table closed. Says nothing about finiteness.
    LimitExceeded { defined: usize },
}

struct Enum {
    table: Vec<[u32; 4]>,
    parent: Vec<u32>,
    live: Vec<bool>,
    deductions: Vec<(u32, u8)>,
    max: usize,
    defined: usize,
}

struct Overflow;

impl Enum {
    fn new(max: usize) -> Enum {
        Enum { table: vec![[UNDEF; 4]], parent: vec![0], live: vec![true], deductions: Vec::new(), max, defined: 1 }
    }

    fn define(&mut self, c: u32, x: u8) -> Result<u32, Overflow> {
        if self.table.len() >= self.max {
            return Err(Overflow);
        }
        let d = self.table.len() as u32;
        self.table.push([UNDEF; 4]);
        self.parent.push(d);
        self.live.push(true);
        self.defined += 1;
        self.table[c as usize][x as usize] = d;
        self.table[d as usize][(x ^ 1) as usize] = c;
        self.deductions.push((c, x));
        Ok(d)
    }

    fn rep(&mut self, mut c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (pa, pb) = (self.rep(a), self.rep(b));
        if pa != pb {
            let (lo, hi) = if pa < pb { (pa, pb) } else { (pb, pa) };
            self.parent[hi as usize] = lo;
            self.live[hi as usize] = false;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..4u8 {
                let d = self.table[g as usize][x as usize];
                if d == UNDEF {
                    continue;
                }
                self.table[d as usize][(x ^ 1) as usize] = UNDEF;
                let mu = self.rep(g);
                let nu = self.rep(d);
                let m_x = self.table[mu as usize][x as usize];
                if m_x != UNDEF {
                    self.merge(nu, m_x, &mut queue);
                } else {
                    let n_xi = self.table[nu as usize][(x ^ 1) as usize];
                    if n_xi != UNDEF {
                        self.merge(mu, n_xi, &mut queue);
                    } else {
                        self.table[mu as usize][x as usize] = nu;
                        self.table[nu as usize][(x ^ 1) as usize] = mu;
                        self.deductions.push((mu, x));
                    }
                }
            }
        }
    }

    /// Scan `w` from coset `a`. With `fill`, define new cosets to complete the
    /// scan; otherwise only record a deduction or coincidence.
    fn scan(&mut self, a: u32, w: &[u8], fill: bool) -> Result<(), Overflow> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let nx = self.table[f as usize][w[i] as usize];
                if nx == UNDEF {
                    break;
                }
                f = nx;
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                let nx = self.table[b as usize][(w[j as usize] ^ 1) as usize];
                if nx == UNDEF {
                    break;
                }
                b = nx;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let x = w[i];
                self.table[f as usize][x as usize] = b;
                self.table[b as usize][(x ^ 1) as usize] = f;
                self.deductions.push((f, x));
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn process_deductions(&mut self, conj: &[Vec<Vec<u8>>]) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.live[c as usize] {
                continue;
            }
            for w in &conj[x as usize] {
                let _ = self.scan(c, w, false);
                if !self.live[c as usize] {
                    break;
                }
            }
            let d = self.table[c as usize][x as usize];
            if d == UNDEF || !self.live[d as usize] {
                continue;
            }
            for w in &conj[(x ^ 1) as usize] {
                let _ = self.scan(d, w, false);
                if !self.live[d as usize] {
                    break;
                }
            }
        }
    }

    fn first_hole(&self, from: usize) -> Option<(usize, u8)> {
        (from..self.table.len())
            .filter(|&c| self.live[c])
            .find_map(|c| (0..4u8).find(|&x| self.table[c][x as usize] == UNDEF).map(|x| (c, x)))
    }

    fn compact(&self) -> CosetTable {
        let mut map = vec![UNDEF; self.table.len()];
        let mut k = 0u32;
        for (c, &l) in self.live.iter().enumerate() {
            if l {
                map[c] = k;
                k += 1;
            }
        }
        let rows = self
            .table
            .iter()
            .enumerate()
            .filter(|(c, _)| self.live[*c])
            .map(|(_, r)| {
                let mut out = [0u32; 4];
                for x in 0..4 {
                    out[x] = map[r[x] as usize];
                }
                out
            })
            .collect();
        CosetTable { rows }
    }

    fn closed(&self) -> bool {
        self.first_hole(0).is_none()
    }
}

/// Enumerate cosets of the trivial subgroup with the default strategy.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Option<CosetTable> {
    match enumerate_with(p, max_cosets, Strategy::Hlt) {
        CosetOutcome::Closed(t) => Some(t),
        CosetOutcome::LimitExceeded { .. } => None,
    }
}

pub fn enumerate_with(p: &Presentation, max_cosets: usize, strategy: Strategy) -> CosetOutcome {
    let rels: Vec<Vec<u8>> = p.relators.iter().map(|w| w.cyclic_reduce().letters()).collect();
    // cyclic conjugates of relators and inverses, grouped by first letter
    let mut conj: Vec<Vec<Vec<u8>>> = vec![Vec::new(); 4];
    for r in &rels {
        let inv: Vec<u8> = r.iter().rev().map(|&c| c ^ 1).collect();
        for w in [r, &inv] {
            for s in 0..w.len() {
                let rot: Vec<u8> = w[s..].iter().chain(&w[..s]).copied().collect();
                let first = rot[0] as usize;
                if !conj[first].contains(&rot) {
                    conj[first].push(rot);
                }
            }
        }
    }
    let mut e = Enum::new(max_cosets.max(1));
    let res = match strategy {
        Strategy::Hlt => run_hlt(&mut e, &rels, &conj),
        Strategy::Felsch => run_felsch(&mut e, &rels, &conj),
    };
    match res {
        Ok(()) => {
            let t = e.compact();
            debug_assert!(t.satisfies(p));
            CosetOutcome::Closed(t)
        }
        Err(Overflow) => CosetOutcome::LimitExceeded { defined: e.defined },
    }
}

fn run_hlt(e: &mut Enum, rels: &[Vec<u8>], conj: &[Vec<Vec<u8>>]) -> Result<(), Overflow> {
    let mut a = 0usize;
    while a < e.table.len() {
        for r in rels {
            if !e.live[a] {
                break;
            }
            e.scan(a as u32, r, true)?;
        }
        // deductions from definitions are consumed lazily: keep the stack small
        if e.deductions.len() > 4096 {
            e.process_deductions(conj);
        }
        if e.live[a] {
            for x in 0..4u8 {
                if e.table[a][x as usize] == UNDEF {
                    e.define(a as u32, x)?;
                }
            }
        }
        a += 1;
    }
    finish(e, rels, conj)
}

fn run_felsch(e: &mut Enum, rels: &[Vec<u8>], conj: &[Vec<Vec<u8>>]) -> Result<(), Overflow> {
    let mut from = 0usize;
    loop {
        e.process_deductions(conj);
        match e.first_hole(from) {
            None => break,
            Some((c, x)) => {
                from = c;
                e.define(c as u32, x)?;
            }
        }
    }
    finish(e, rels, conj)
}

/// Rescan every relator at every live coset until nothing changes.
fn finish(e: &mut Enum, rels: &[Vec<u8>], conj: &[Vec<Vec<u8>>]) -> Result<(), Overflow> {
    loop {
        e.process_deductions(conj);
        let live_before = e.live.iter().filter(|&&l| l).count();
        for a in 0..e.table.len() {
            for r in rels {
                if !e.live[a] {
                    break;
                }
                e.scan(a as u32, r, true)?;
            }
        }
        e.process_deductions(conj);
        for a in 0..e.table.len() {
            if e.live[a] {
                for x in 0..4u8 {
                    if e.table[a][x as usize] == UNDEF {
                        e.define(a as u32, x)?;
                    }
                }
            }
        }
        let live_after = e.live.iter().filter(|&&l| l).count();
        if e.closed() && live_before == live_after && e.deductions.is_empty() && e.compact().satisfies_raw(rels) {
            return Ok(());
        }
    }
}

impl CosetTable {
    fn satisfies_raw(&self, rels: &[Vec<u8>]) -> bool {
        (0..self.rows.len() as u32).all(|c| rels.iter().all(|w| self.trace(c, w) == c))
    }
}

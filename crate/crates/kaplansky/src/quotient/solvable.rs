//! Derived series of a finite group given by a closed coset table.
//!
//! The table over the trivial subgroup is the regular representation, so a
//! group element is identified with the coset `0 . g`. Left multiplication
//! `c -> g c` commutes with the table's right action, which lets a subgroup be
//! computed as the orbit of coset `0` under the left multiplications of its
//! generators.

use super::coset::CosetTable;

struct Regular<'a> {
    t: &'a CosetTable,
    /// breadth-first spanning tree: parent coset and column reaching each coset
    order: Vec<u32>,
    via: Vec<(u32, u8)>,
}

impl<'a> Regular<'a> {
    fn new(t: &'a CosetTable) -> Regular<'a> {
        let n = t.order();
        let mut via = vec![(u32::MAX, 0u8); n];
        let mut order = vec![0u32];
        via[0] = (0, 0);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for x in 0..4u8 {
                let d = t.rows[c as usize][x as usize];
                if via[d as usize].0 == u32::MAX {
                    via[d as usize] = (c, x);
                    order.push(d);
                }
            }
        }
        Regular { t, order, via }
    }

    /// Left multiplication by the element represented by coset `g`.
    fn left(&self, g: u32) -> Vec<u32> {
        let mut img = vec![0u32; self.t.order()];
        img[0] = g;
        for &c in &self.order[1..] {
            let (p, x) = self.via[c as usize];
            img[c as usize] = self.t.rows[img[p as usize] as usize][x as usize];
        }
        img
    }

    fn inverse(&self, g: u32) -> u32 {
        let l = self.left(g);
        l.iter().position(|&v| v == 0).unwrap() as u32
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        self.left(a)[b as usize]
    }
}

struct Subgroup {
    gens: Vec<u32>,
    perms: Vec<Vec<u32>>,
    member: Vec<bool>,
    elems: Vec<u32>,
}

impl Subgroup {
    fn trivial(n: usize) -> Subgroup {
        let mut member = vec![false; n];
        member[0] = true;
        Subgroup { gens: Vec::new(), perms: Vec::new(), member, elems: vec![0] }
    }

    fn add_gen(&mut self, reg: &Regular, g: u32) {
        if self.member[g as usize] {
            return;
        }
        let perm = reg.left(g);
        self.gens.push(g);
        self.perms.push(perm);
        // re-close: apply every generator to every element
        let mut i = 0;
        while i < self.elems.len() {
            let e = self.elems[i];
            i += 1;
            for p in &self.perms {
                let f = p[e as usize];
                if !self.member[f as usize] {
                    self.member[f as usize] = true;
                    self.elems.push(f);
                }
            }
        }
    }
}

/// Derived subgroup of the subgroup generated by `gens`.
fn derived(reg: &Regular, gens: &[u32]) -> Subgroup {
    let n = reg.t.order();
    let inv: Vec<u32> = gens.iter().map(|&g| reg.inverse(g)).collect();
    let mut k = Subgroup::trivial(n);
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            // [a, b] = a^-1 b^-1 a b
            let c = reg.mul(reg.mul(inv[i], inv[j]), reg.mul(gens[i], gens[j]));
            k.add_gen(reg, c);
        }
    }
    // normal closure under conjugation by the generators
    loop {
        let mut grew = false;
        let kg = k.gens.clone();
        for &x in &kg {
            for (s, &si) in gens.iter().zip(&inv) {
                let conj = reg.mul(reg.mul(si, x), *s);
                if !k.member[conj as usize] {
                    k.add_gen(reg, conj);
                    grew = true;
                }
            }
        }
        if !grew {
            return k;
        }
    }
}

/// Orders along the derived series, ending at a perfect subgroup.
pub fn derived_series(t: &CosetTable) -> Vec<usize> {
    let reg = Regular::new(t);
    let mut gens: Vec<u32> = vec![t.rows[0][0], t.rows[0][2]];
    let mut sizes = vec![t.order()];
    loop {
        let d = derived(&reg, &gens);
        let size = d.elems.len();
        if size == *sizes.last().unwrap() {
            return sizes;
        }
        sizes.push(size);
        if size == 1 {
            return sizes;
        }
        gens = d.gens;
    }
}

/// A finite group is solvable iff its derived series reaches the trivial group.
pub fn finite_solvable(t: &CosetTable) -> bool {
    *derived_series(t).last().unwrap() == 1
}

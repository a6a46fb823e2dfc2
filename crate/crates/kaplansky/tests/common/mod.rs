#![allow(dead_code)]
//! Strategies and checks shared by the property suite and the acceptance runner.

use std::collections::BTreeSet;

use kaplansky::bounds::{final_bounds, BoundInputs, Evidence};
use kaplansky::graph::{canonical_form, decode_graph6, encode_graph6, Graph};
use kaplansky::kgraph::{cayley_induced, kaplansky_graph, Cyclic, Free, GroupModel, Z2};
use kaplansky::patterns::{contains_induced, contains_subgraph};
use kaplansky::quotient::{abelian_invariants, coset_enumerate};
use kaplansky::words::{reduce, tietze_substitute, Gen, Presentation, TietzeMove, Word};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() }
}

// stack-based reduction on letter codes, independent of `reduce`
pub fn naive_reduce(codes: &[u8]) -> Vec<u8> {
    let mut st: Vec<u8> = Vec::new();
    for &c in codes {
        if st.last() == Some(&(c ^ 1)) {
            st.pop();
        } else {
            st.push(c);
        }
    }
    st
}

pub fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..4, 0..14).prop_map(|c| Word::from_letters(&c))
}

pub fn syllables() -> impl Strategy<Value = Vec<(Gen, i32)>> {
    prop::collection::vec((prop::bool::ANY, -3i32..=3), 0..12)
        .prop_map(|v| v.into_iter().map(|(b, e)| (if b { Gen::H2 } else { Gen::H3 }, e)).collect())
}

pub fn tietze_move() -> impl Strategy<Value = TietzeMove> {
    (0..TietzeMove::ALL.len()).prop_map(|i| TietzeMove::ALL[i])
}

pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        g.add_edge(i, j);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

pub fn brute_embeds(host: &Graph, pat: &Graph, induced: bool) -> bool {
    fn rec(host: &Graph, pat: &Graph, induced: bool, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == pat.n() {
            return true;
        }
        for v in 0..host.n() {
            if used[v] {
                continue;
            }
            let ok = (0..i).all(|j| {
                let pe = pat.has_edge(i, j);
                let he = host.has_edge(v, map[j]);
                if induced { pe == he } else { !pe || he }
            });
            if ok {
                used[v] = true;
                map.push(v);
                if rec(host, pat, induced, map, used) {
                    return true;
                }
                map.pop();
                used[v] = false;
            }
        }
        false
    }
    pat.n() <= host.n() && rec(host, pat, induced, &mut Vec::new(), &mut vec![false; host.n()])
}

pub fn distinct<E: Ord + Clone>(v: Vec<E>) -> Vec<E> {
    let mut seen = BTreeSet::new();
    v.into_iter().filter(|e| seen.insert(e.clone())).collect()
}

pub fn free_support(max: usize) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(word(), 1..max).prop_map(distinct)
}

pub fn z2_support(max: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..max).prop_map(distinct)
}


pub type Check = Result<(), TestCaseError>;

pub fn check_reduction(raw: Vec<(Gen, i32)>) -> Check {
    let once = reduce(&raw);
    prop_assert_eq!(reduce(once.syllables()), once.clone());
    // against the letter-level oracle
    let mut codes = Vec::new();
    for &(g, e) in &raw {
        let c = 2 * g.index() as u8 + u8::from(e < 0);
        codes.extend(std::iter::repeat(c).take(e.unsigned_abs() as usize));
    }
    prop_assert_eq!(once.letters(), naive_reduce(&codes));
    Ok(())
}

pub fn check_tietze((r1, r2, two, moves): (Word, Word, bool, Vec<TietzeMove>)) -> Check {
    let p = if two { Presentation::new([r1, r2]) } else { Presentation::new([r1]) };
    let want = abelian_invariants(&p);
    let mut q = p.clone();
    for mv in moves {
        q = tietze_substitute(&q, mv);
        prop_assert_eq!(abelian_invariants(&q), want.clone());
    }
    Ok(())
}

pub fn tietze_input() -> impl Strategy<Value = (Word, Word, bool, Vec<TietzeMove>)> {
    (word(), word(), prop::bool::ANY, prop::collection::vec(tietze_move(), 1..4))
}

pub fn check_cayley_free((alpha, beta): (Vec<Word>, Vec<Word>)) -> Check {
    prop_assert_eq!(kaplansky_graph(&Free, &alpha, &beta).unwrap(), cayley_induced(&Free, &alpha, &beta).unwrap());
    Ok(())
}

pub fn check_cayley_z2((alpha, beta): (Vec<(i64, i64)>, Vec<(i64, i64)>)) -> Check {
    prop_assert_eq!(kaplansky_graph(&Z2, &alpha, &beta).unwrap(), cayley_induced(&Z2, &alpha, &beta).unwrap());
    Ok(())
}

pub fn check_cayley_cyclic((m, a, b): (u64, Vec<u64>, Vec<u64>)) -> Check {
    let alpha = distinct(a.into_iter().map(|x| x % m).collect());
    let beta = distinct(b.into_iter().map(|x| x % m).collect());
    let g = Cyclic(m);
    prop_assert_eq!(kaplansky_graph(&g, &alpha, &beta).unwrap(), cayley_induced(&g, &alpha, &beta).unwrap());
    Ok(())
}

pub fn cyclic_input() -> impl Strategy<Value = (u64, Vec<u64>, Vec<u64>)> {
    (1u64..12, prop::collection::vec(0u64..12, 1..5), prop::collection::vec(0u64..12, 1..8))
}

pub fn check_translation((alpha, beta, x, y): (Vec<Word>, Vec<Word>, Word, Word)) -> Check {
    let xa: Vec<Word> = alpha.iter().map(|h| Free.mul(&x, h)).collect();
    let by: Vec<Word> = beta.iter().map(|g| Free.mul(g, &y)).collect();
    let k0 = kaplansky_graph(&Free, &alpha, &beta).unwrap();
    let k1 = kaplansky_graph(&Free, &xa, &by).unwrap();
    prop_assert_eq!(canonical_form(&k0), canonical_form(&k1));
    Ok(())
}

pub fn translation_input() -> impl Strategy<Value = (Vec<Word>, Vec<Word>, Word, Word)> {
    (free_support(4), free_support(8), word(), word())
}

pub fn check_matcher((host, pat): (Graph, Graph)) -> Check {
    prop_assert_eq!(contains_subgraph(&host, &pat), brute_embeds(&host, &pat, false));
    prop_assert_eq!(contains_induced(&host, &pat), brute_embeds(&host, &pat, true));
    Ok(())
}

pub fn check_coset((a, b, w): (i32, i32, Word)) -> Check {
    let p = Presentation::new([Word::gen(Gen::H2, a), Word::gen(Gen::H3, b), w]);
    if let Some(t) = coset_enumerate(&p, 5_000) {
        prop_assert!(t.is_transitive());
        // each relator, read letter by letter through the table, fixes every coset
        for r in &p.relators {
            let codes = r.letters();
            for c in 0..t.order() as u32 {
                let end = codes.iter().fold(c, |x, &l| t.rows[x as usize][l as usize]);
                prop_assert_eq!(end, c);
            }
        }
    }
    Ok(())
}

pub fn coset_input() -> impl Strategy<Value = (i32, i32, Word)> {
    (1i32..6, 1i32..6, word())
}

pub fn check_graph6(g: Graph) -> Check {
    let s = encode_graph6(&g);
    prop_assert_eq!(decode_graph6(&s).unwrap(), g);
    Ok(())
}

pub fn check_relabel((g, seed): (Graph, u64)) -> Check {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    prop_assert_eq!(canonical_form(&g), canonical_form(&g.permute(&perm)));
    Ok(())
}

pub fn check_bounds_monotone((mask, extra, dyk, dyk2): (u16, u16, bool, bool)) -> Check {
    let inputs = |m: u16, d: bool| BoundInputs {
        census_clear: (0..8).filter(|i| m >> i & 1 == 1).map(|i| (4 + 2 * i as usize, Evidence::Computed)).collect(),
        dyk_flag: d,
    };
    let small = final_bounds(&inputs(mask, dyk));
    let big = final_bounds(&inputs(mask | extra, dyk || dyk2));
    let (a, b) = (small.values(), big.values());
    prop_assert!(a.0 <= b.0 && a.1 <= b.1 && a.2 <= b.2, "{:?} {:?}", a, b);
    Ok(())
}

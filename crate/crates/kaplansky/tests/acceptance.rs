//! Acceptance runner: one line per criterion. Runs without the libtest
//! harness so the lines always reach the output. Exits nonzero when a
//! blocking criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use kaplansky::bounds::{final_bounds, unit_n8_search, unit_n8_search_with, BoundInputs, N8Constraints};
use kaplansky::cycles::{
    builtin_catalog, c4_table, classify_complex, classify_cycle, classify_pairs, enumerate_labelings, find_complex,
    table_survivor_sets, table_label_matches, tuple_classes, CycleComplex,
};
use kaplansky::gen::generate;
use kaplansky::patterns::{builtin_patterns, census_mismatches, sieve, ExpectedCensus};
use kaplansky::quotient::{Budget, VerdictKind};
use kaplansky::words::Word;
use proptest::strategy::Strategy;
use proptest::test_runner::TestRunner;

const C4C5_TABLE: &str = include_str!("../data/c4c5_table.tsv");

struct Report {
    blocking_failures: usize,
    deviations: usize,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, blocking: bool, detail: String, took: Duration) {
        let tag = match (ok, blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-blocking)",
        };
        println!("[{tag}] {id}: {detail} ({:.2?})", took);
        if !ok && blocking {
            self.blocking_failures += 1;
        }
    }

    /// A criterion whose expected value contradicts the rest of the
    /// specification; reported as failing and logged in the decision ledger.
    fn deviation(&mut self, id: &str, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL (recorded deviation)" };
        println!("[{tag}] {id}: {detail}");
        if !ok {
            self.deviations += 1;
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_1(r: &mut Report) {
    let (got, took) = timed(|| {
        [4, 5, 6, 7]
            .map(|k| (enumerate_labelings(&CycleComplex::cycle(k), false).len(), tuple_classes(k).len()))
    });
    let want = [(258, 36), (1026, 105), (4098, 351), (16386, 1173)];
    let raw_formula = [4u32, 5, 6, 7].iter().zip(&got).all(|(k, g)| g.0 == (1usize << (2 * k)) + 2);
    let ok = got == want && raw_formula && took < Duration::from_secs(5);
    r.line("1 tuple enumeration", ok, true, format!("(raw, classes) = {got:?}, limit 5 s"), took);
}

fn criterion_2(r: &mut Report) {
    let (rows, took) = timed(|| classify_cycle(4, &Budget::default()));
    let table = c4_table();
    let mismatched: Vec<usize> = rows
        .iter()
        .zip(&table)
        .filter(|(c, (_, e))| !table_label_matches(e, &c.verdict.kind))
        .map(|(_, (row, _))| *row)
        .collect();
    let open: Vec<usize> = rows.iter().filter(|c| !c.verdict.kind.resolves()).map(|c| c.class.row).collect();
    let ok = rows.len() == 36
        && mismatched.is_empty()
        && open == [5, 7, 14, 17, 21, 22, 25, 26, 29]
        && took < Duration::from_secs(10);
    r.line("2 square classification", ok, true, format!("column mismatches {mismatched:?}, survivors {open:?}, limit 10 s"), took);
}

fn criterion_3(r: &mut Report) {
    let budget = Budget::default();
    let (cases, took) = timed(|| {
        let rels: Vec<Word> = classify_cycle(4, &budget)
            .into_iter()
            .filter(|c| !c.verdict.kind.resolves())
            .map(|c| c.class.relator)
            .collect();
        classify_pairs(&rels, &budget)
    });
    let fs = cases.iter().filter(|c| matches!(c.verdict.kind, VerdictKind::Finite { solvable: true, .. })).count();
    let ok = cases.len() == 36 && fs == 36 && took < Duration::from_secs(60);
    r.line("3 square pairs finite", ok, true, format!("{fs}/{} finite solvable at max_cosets 200000, limit 60 s", cases.len()), took);
}

fn pair_key(a: &Word, b: &Word) -> (Word, Word) {
    let (x, y) = (a.relation_key(), b.relation_key());
    if x <= y { (x, y) } else { (y, x) }
}

fn criterion_4(r: &mut Report) {
    let cx = find_complex(&builtin_catalog(), "C4--C5").unwrap();
    let (rep, took) = timed(|| classify_complex(&cx, &table_survivor_sets(), &Budget::default()));
    let table: BTreeSet<(Word, Word)> = C4C5_TABLE
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split('\t').collect();
            pair_key(&c[1].parse().unwrap(), &c[2].parse().unwrap())
        })
        .collect();
    let ours: BTreeSet<(Word, Word)> =
        rep.survivors.iter().map(|c| pair_key(&c.relations[0], &c.relations[1])).collect();
    let ok = rep.total == 121 && rep.finite_solvable == 111 && table.len() == 10 && ours == table;
    r.line(
        "4 C4--C5 cases",
        ok,
        true,
        format!("total {}, finite solvable {}, survivors {} equal to table: {}", rep.total, rep.finite_solvable, ours.len(), ours == table),
        took,
    );
    let auto = rep.survivors.len() - rep.unresolved();
    r.line(
        "4s C4--C5 survivors auto-resolved",
        auto == 10,
        false,
        format!("{auto}/10 resolved within Tietze depth 6"),
        Duration::ZERO,
    );
}

fn criterion_5_6(r: &mut Report) {
    let catalog = builtin_patterns();
    let expected = ExpectedCensus::builtin();
    let ((counts, rows), took) = timed(|| {
        let mut counts = Vec::new();
        let mut rows = Vec::new();
        for n in (4..=14).step_by(2) {
            let gs = generate(n).unwrap();
            counts.push(gs.len());
            rows.push(sieve(n, &gs, &catalog));
        }
        (counts, rows)
    });
    let ok5 = counts == [0, 1, 2, 6, 22, 110] && took < Duration::from_secs(60);
    r.line("5 cubic graph totals", ok5, true, format!("n=4..14: {counts:?}, limit 60 s"), took);
    let (n16, t16) = timed(|| generate(16).unwrap().len());
    r.line("5x n=16 total", n16 == 792 && t16 < Duration::from_secs(600), false, format!("{n16}, limit 10 min"), t16);

    let mut bad = Vec::new();
    for row in &rows {
        let want = expected.column(row.n, &catalog).unwrap();
        bad.extend(census_mismatches(row, &want).into_iter().map(|m| format!("n={} {m}", row.n)));
    }
    let k23: Vec<usize> = rows.iter().map(|r| r.removed[0].1).collect();
    let remains: Vec<usize> = rows.iter().map(|r| r.remains).collect();
    r.line(
        "6 forbidden-subgraph sieve",
        bad.is_empty() && rows.iter().all(|r| r.conserved()),
        true,
        format!("K2,3 row {k23:?}, M_n at 14 = {}, remains {remains:?}, mismatches {bad:?}", rows[5].mn),
        Duration::ZERO,
    );
}

fn criterion_7(r: &mut Report) {
    let ((full, no_k23, multi), took) = timed(|| {
        (
            unit_n8_search().len(),
            unit_n8_search_with(N8Constraints { no_k23: false, ..N8Constraints::ALL }).len(),
            unit_n8_search_with(N8Constraints { single_triangle: false, ..N8Constraints::ALL }).len(),
        )
    });
    let ok = full == 0 && no_k23 > 0 && multi > 0 && took < Duration::from_secs(120);
    r.line(
        "7 unit n=8 search",
        ok,
        true,
        format!("full {full}, without K2,3 ban {no_k23}, with >= 1 triangle {multi}, limit 120 s"),
        took,
    );
}

fn criterion_8(r: &mut Report) {
    let (b, took) = timed(|| final_bounds(&BoundInputs::standard(14, true)));
    let traced = [&b.zero_divisor_general, &b.zero_divisor_f2, &b.unit_general].iter().all(|x| !x.trace.is_empty());
    r.line(
        "8 chained bounds",
        b.values() == (10, 20, 9) && traced && b.zero_divisor_f2.conditional,
        true,
        format!("{:?}, F2 bound conditional on table columns 16 and 18: {}", b.values(), b.zero_divisor_f2.conditional),
        took,
    );
    let d = final_bounds(&BoundInputs::standard(14, false));
    let (zd, unit) = (d.zero_divisor_general.value, d.unit_general.value);
    // the F2 unit input is also what excludes unit supports of size 3 and 7,
    // so the trace stops at 3 where the stated example expects 8
    r.deviation(
        "8d bounds without the F2 unit input",
        (zd, unit) == (9, 8),
        format!("zero divisor {zd} (expected 9), unit {unit} (expected 8); trace: {}", d.unit_general.trace.join(" | ")),
    );
}

fn run_prop<S: Strategy>(r: &mut Report, name: &str, s: S, f: impl Fn(S::Value) -> common::Check) {
    let mut runner = TestRunner::new(common::config());
    let (res, took) = timed(|| runner.run(&s, f));
    r.line(&format!("9 property: {name}"), res.is_ok(), true, format!("1000 cases {}", res.err().map(|e| e.to_string()).unwrap_or_default()), took);
}

fn criterion_9(r: &mut Report) {
    use common::*;
    run_prop(r, "free reduction idempotent", syllables(), check_reduction);
    run_prop(r, "Tietze moves keep abelian invariants", tietze_input(), check_tietze);
    run_prop(r, "Kaplansky graph equals induced Cayley graph", (free_support(5), free_support(9)), check_cayley_free);
    run_prop(r, "translation keeps canonical form", translation_input(), check_translation);
    run_prop(r, "matcher equals brute force", (graph(8), graph(5)), check_matcher);
    run_prop(r, "closed coset tables satisfy relators", coset_input(), check_coset);
}

fn main() {
    let mut r = Report { blocking_failures: 0, deviations: 0 };
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    println!("blocking failures: {}, recorded deviations: {}", r.blocking_failures, r.deviations);
    if r.blocking_failures > 0 {
        std::process::exit(1);
    }
}

//! Classes of k-cycle tuples and the detector verdict for each.
//!
//! `cargo run --release --example tuple_classes -- 4`

use kaplansky::cycles::{classify_cycle, enumerate_labelings, CycleComplex};
use kaplansky::quotient::Budget;

fn main() {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let raw = enumerate_labelings(&CycleComplex::cycle(k), false).len();
    let rows = classify_cycle(k, &Budget::default());
    println!("k={k}: {raw} labelings, {} classes", rows.len());
    for r in &rows {
        let t: Vec<String> = r.class.tuple.iter().map(|l| l.to_string()).collect();
        println!("{:>4}  [{}]  {} = 1  {}", r.class.row, t.join(","), r.class.relator, r.verdict);
    }
    let open: Vec<usize> = rows.iter().filter(|r| !r.verdict.kind.resolves()).map(|r| r.class.row).collect();
    println!("unresolved rows: {open:?}");
}

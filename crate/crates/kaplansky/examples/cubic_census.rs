//! Generate connected cubic triangle-free graphs and sieve them against the
//! forbidden-subgraph catalog.
//!
//! `cargo run --release --example cubic_census -- 14`

use std::time::Instant;

use kaplansky::gen::generate;
use kaplansky::patterns::{builtin_patterns, census_mismatches, sieve, ExpectedCensus};

fn main() {
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(14);
    let catalog = builtin_patterns();
    let expected = ExpectedCensus::builtin();
    for n in (4..=n_max).step_by(2) {
        let t = Instant::now();
        let graphs = generate(n).expect("even order within range");
        let row = sieve(n, &graphs, &catalog);
        let hit: Vec<String> =
            row.removed.iter().filter(|r| r.1 > 0).map(|(name, c)| format!("{name}:{c}")).collect();
        println!("n={n:<2} total {:<5} {}  Ln {} Mn {} remains {}  ({:.2?})", row.total, hit.join(" "), row.ln, row.mn, row.remains, t.elapsed());
        if let Some(want) = expected.column(n, &catalog) {
            for m in census_mismatches(&row, &want) {
                println!("  mismatch {m}");
            }
        }
    }
}

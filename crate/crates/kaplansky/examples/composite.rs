//! Relation cases of a composite structure from the bundled catalog.
//!
//! `cargo run --release --example composite -- C4--C5`

use kaplansky::cycles::{builtin_catalog, classify_complex, find_complex, table_survivor_sets};
use kaplansky::quotient::Budget;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "C4--C5".into());
    let catalog = builtin_catalog();
    let cx = match find_complex(&catalog, &name) {
        Ok(c) => c,
        Err(e) => {
            let names: Vec<&str> = catalog.iter().map(|c| c.name.as_str()).collect();
            eprintln!("{e}; known: {names:?}");
            std::process::exit(2);
        }
    };
    let rep = classify_complex(&cx, &table_survivor_sets(), &Budget::default());
    println!(
        "{}: {} labelings, {} cases, {} finite solvable, {} finite unsolvable",
        rep.name, rep.labelings, rep.total, rep.finite_solvable, rep.resolved_by.finite_unsolvable
    );
    for (i, c) in rep.survivors.iter().enumerate() {
        let rels: Vec<String> = c.relations.iter().map(|w| format!("{w} = 1")).collect();
        println!("{:>3}) {}   {}", i + 1, rels.join(", "), c.verdict);
    }
    println!("unresolved: {}", rep.unresolved());
}

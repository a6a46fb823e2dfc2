//! Run the detectors on a few two-generator presentations.
//!
//! `cargo run --release --example presentations -- "h2^2 h3^-3, h2^2 h3^3"`

use kaplansky::quotient::{abelian_invariants, classify, coset_enumerate, derived_series, Budget};
use kaplansky::words::Presentation;

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let defaults = ["h2^4", "h2^2 h3 h2^-1 h3", "h3^-1 h2 h3 h2^-2", "h2^2 h3^-3, h2^2 h3^3", "h2^2, h3^3, (h2 h3)^5"];
    let list: Vec<&str> = if inputs.is_empty() { defaults.to_vec() } else { inputs.iter().map(String::as_str).collect() };
    let budget = Budget::default();
    for s in list {
        let p: Presentation = match s.parse() {
            Ok(p) => p,
            Err(e) => {
                eprintln!("{s}: {e}");
                continue;
            }
        };
        let v = classify(&p, &budget);
        println!("{p}");
        println!("  abelian invariants {:?}", abelian_invariants(&p));
        println!("  verdict {v}");
        for e in &v.evidence {
            println!("    {e}");
        }
        if let Some(t) = coset_enumerate(&p, 20_000) {
            println!("  order {}, derived series {:?}", t.order(), derived_series(&t));
        }
    }
}

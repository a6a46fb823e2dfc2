//! Small-support case analysis and the chained lower bounds.
//!
//! `cargo run --release --example support_bounds`

use kaplansky::bounds::{final_bounds, unit_case, unit_n8_search, zero_divisor_case, BoundInputs};

fn main() {
    for n in 3..=9 {
        let r = zero_divisor_case(n).unwrap();
        println!("zero divisor n={n}: products in [{}, {}], {:?}", r.lower, r.upper, r.verdict);
    }
    for n in 2..=8 {
        let r = unit_case(n).unwrap();
        println!("unit n={n}: products in [{}, {}], {} profiles, {:?}", r.lower, r.upper, r.profiles.len(), r.verdict);
    }
    println!("unit graph search at n=8: {} survivors", unit_n8_search().len());
    for dyk in [true, false] {
        let b = final_bounds(&BoundInputs::standard(14, dyk));
        println!("\nexternal F2 unit result assumed: {dyk} -> {:?}", b.values());
        for (name, x) in [("zero divisor", &b.zero_divisor_general), ("F2 zero divisor", &b.zero_divisor_f2), ("unit", &b.unit_general)] {
            println!("  {name} >= {}{}", x.value, if x.conditional { " (uses table columns)" } else { "" });
            for t in &x.trace {
                println!("    {t}");
            }
        }
    }
}

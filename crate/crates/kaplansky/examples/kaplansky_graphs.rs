//! Kaplansky graphs over concrete groups, compared with the induced Cayley graph.
//!
//! `cargo run --release --example kaplansky_graphs`

use kaplansky::kgraph::{
    cayley_induced, check_structure, connection_set, f2_zero_product, kaplansky_graph, Cyclic, Free, GroupModel, Mode, Z2,
};

fn show<G: GroupModel>(label: &str, gm: &G, alpha: &[&str], beta: &[&str]) {
    let a: Vec<G::Elem> = alpha.iter().map(|s| gm.parse(s).unwrap()).collect();
    let b: Vec<G::Elem> = beta.iter().map(|s| gm.parse(s).unwrap()).collect();
    let k = kaplansky_graph(gm, &a, &b).unwrap();
    let c = cayley_induced(gm, &a, &b).unwrap();
    println!("{label}: alpha {alpha:?}, beta {beta:?}");
    println!("  |S| = {}, edges {:?}", connection_set(gm, &a).len(), k.edges());
    println!("  equals Cayley graph: {}, alpha*beta = 0 over F2: {}", k == c, f2_zero_product(gm, &a, &b));
    println!("  violations {:?}", check_structure(&k, Mode::ZeroDivisorF2));
}

fn main() {
    show("Z/3", &Cyclic(3), &["1", "x", "x^2"], &["1", "x", "x^2"]);
    show("Z/3", &Cyclic(3), &["1", "x", "x^2"], &["1", "x"]);
    show("F(a,b)", &Free, &["1", "a", "b"], &["1", "a", "b^-1 a", "a b^-1 a"]);
    show("Z^2", &Z2, &["(0,0)", "(1,0)", "(0,1)"], &["(0,0)", "(1,0)", "(0,1)", "(1,1)", "(2,-1)"]);
}

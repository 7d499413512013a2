//! The two rewiring families and their combination on a small graph.
//!
//! Run with `cargo run --example rewiring_basics`.

use lapshift::graph::Graph;
use lapshift::rewire::{rewire, RewireConfig};

fn show(title: &str, g: &Graph) {
    println!("{title}");
    print!("{}", g.to_edge_list_string());
    println!("degrees: {:?}\n", g.degrees());
}

fn main() {
    let path = Graph::from_pairs(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
    show("4-node path", &path);

    // Self-loops: every node gains a loop of weight 2, edges untouched.
    let looped = rewire(&path, &RewireConfig::self_loops(2.0).unwrap()).unwrap();
    show("self-loops, strength 2", &looped);

    // Parallel edges: every edge weight doubles and each node gains a
    // unit loop.
    let doubled = rewire(&path, &RewireConfig::parallel_edges(1.0).unwrap()).unwrap();
    show("parallel edges, strength 1", &doubled);

    // Both at once: edge weights scale by gamma + 1, loops get alpha.
    let both = rewire(&path, &RewireConfig::new(2.0, 1.0).unwrap()).unwrap();
    show("combined, alpha 2 and gamma 1", &both);
}

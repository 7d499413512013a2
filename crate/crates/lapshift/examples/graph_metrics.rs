//! Size, density, and degree statistics for a generated graph, printed
//! as the same JSON report the `stats` subcommand emits.
//!
//! Run with `cargo run --example graph_metrics`.

use lapshift::graph::{compute_metrics, connected_components, DEFAULT_LOG_EPSILON};
use lapshift::randgraph::gen_erdos_renyi;
use lapshift::report::versioned;

fn main() {
    let g = gen_erdos_renyi(30, 0.12, 99).unwrap();
    let metrics = compute_metrics(&g, DEFAULT_LOG_EPSILON);
    println!("{}", serde_json::to_string_pretty(&versioned(&metrics)).unwrap());

    let (_, components) = connected_components(&g);
    println!("\nconnected components: {components}");
}

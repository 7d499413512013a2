//! Wall-clock cost of the two expensive kernels, eigendecomposition and
//! a training sweep, at a few graph sizes, plus the size cap that turns
//! an oversized eigendecomposition into a recorded outcome instead of a
//! long stall.
//!
//! Run with `cargo run --release --example runtime_bench`.

use lapshift::randgraph::gen_erdos_renyi;
use lapshift::report::{run_bench, BenchConfig};

fn main() {
    println!("{:>6} {:>14} {:>14}", "nodes", "eigen (s)", "sweep (s)");
    for (i, n) in [30usize, 60, 120].iter().enumerate() {
        let g = gen_erdos_renyi(*n, 0.2, 40 + i as u64).unwrap();
        let r = run_bench(&g, &BenchConfig::default());
        println!(
            "{:>6} {:>14.4} {:>14.4}",
            r.nodes, r.eigendecomposition.seconds, r.sweep.seconds
        );
    }

    // A cap below the graph size reports the refusal instead of running.
    let g = gen_erdos_renyi(200, 0.1, 43).unwrap();
    let capped = BenchConfig {
        dim_cap: 100,
        ..BenchConfig::default()
    };
    let r = run_bench(&g, &capped);
    println!(
        "\n200 nodes with cap 100: eigendecomposition outcome {:?}",
        r.eigendecomposition.outcome
    );
    if let Some(msg) = &r.eigendecomposition.message {
        println!("  message: {msg}");
    }
}

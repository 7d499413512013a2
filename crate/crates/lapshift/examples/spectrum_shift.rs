//! How the normalized-Laplacian spectrum moves under each rewiring
//! family: self-loops squeeze it toward 0, parallel edges stretch it
//! toward 2, and successive steps shrink in both directions.
//!
//! Run with `cargo run --example spectrum_shift`.

use lapshift::randgraph::gen_erdos_renyi;
use lapshift::spectral::verify::{verify_spectrum_shift, RewireFamily};

fn main() {
    let g = gen_erdos_renyi(8, 0.5, 7).unwrap();
    println!("random graph: {} nodes, {} edges\n", g.node_count(), g.edge_count());

    for family in [RewireFamily::SelfLoop, RewireFamily::ParallelEdge] {
        let params: Vec<f64> = (1..=5).map(f64::from).collect();
        let r = verify_spectrum_shift(&g, family, &params).unwrap();

        println!("{family} ladder {params:?}");
        print!("strength ");
        for i in 0..g.node_count() {
            print!(" lam{i:<5}");
        }
        println!();
        for (p, eigs) in r.params.iter().zip(&r.eigenvalues) {
            print!("{p:>8} ");
            for v in eigs {
                print!(" {v:<7.4}");
            }
            println!();
        }
        println!(
            "monotone: {}  shrinking steps: {}\n",
            r.monotone, r.shrinking
        );
    }
}

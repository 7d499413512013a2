#![forbid(unsafe_code)]

//! Rewiring graphs and watching their spectra move.
//!
//! `lapshift` studies two graph rewiring operators, self-loop addition
//! (`A + alpha*I`) and parallel-edge duplication (`(gamma+1)A + I`), and
//! their effect on the symmetrically normalized Laplacian
//! `L = I - D^{-1/2} A D^{-1/2}`. Self-loops compress the spectrum toward 0;
//! parallel edges stretch it toward 2. Because a graph convolution acts as
//! the low-pass filter `g(lambda) = 1 - lambda`, those spectral shifts
//! translate into node-classification performance trends, which this crate
//! measures with a small from-scratch GCN and classifies into four
//! categories.
//!
//! The pieces:
//!
//! * [`graph`]: weighted undirected graphs, edge-list I/O, size/density
//!   statistics, connected components;
//! * [`mod@rewire`]: the two operators and their composition;
//! * [`spectral`]: normalized operators, a dense symmetric eigensolver,
//!   spectrum statistics and histograms, graph filtering, and executable
//!   checks of the eigenvalue bounds, ranges, monotonicity, scaling
//!   identities, and first-order perturbation formulas;
//! * [`randgraph`]: seeded, byte-reproducible generators (Erdos-Renyi,
//!   regular circulants, planted partitions);
//! * [`gcn`]: a dense two-layer graph convolutional network with explicit
//!   gradients, Adam, splits, and accuracy/ROC-AUC metrics;
//! * [`report`]: performance-trend sweeps over rewiring strength, trend
//!   classification, category assignment, grid runs, and a timing bench;
//! * [`cli`]: the `lapshift` command-line tool over all of the above.
//!
//! Start with the runnable examples: `cargo run --example <name>` for any
//! file in `examples/` (e.g. `spectrum_shift`, `theory_checks`,
//! `gcn_training`, `trend_categories`).

pub mod cli;
pub mod error;
pub mod gcn;
pub mod graph;
pub mod randgraph;
pub mod report;
pub mod rewire;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{
    compute_metrics, connected_components, is_connected, load_edge_list, load_edge_list_path,
    Graph, GraphMetrics,
};
pub use rewire::{add_parallel_edges, add_self_loops, rewire, RewireConfig};
pub use spectral::{OperatorSource, Spectrum};

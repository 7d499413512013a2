//! The sweep protocol end to end: train along both rewiring ladders,
//! label each accuracy series by its slope, and map the label pair to a
//! behavior category with a short reading.
//!
//! Run with `cargo run --example trend_categories`.

use lapshift::gcn::data::synthetic_features;
use lapshift::gcn::{Dataset, SplitRatios, TrainConfig};
use lapshift::randgraph::gen_planted_partition;
use lapshift::report::{run_both_sweeps, SweepConfig};

fn main() {
    // Heterophilic planted graph: most edges cross the two blocks.
    let (graph, labels) = gen_planted_partition(40, 2, 0.06, 0.5, 31).unwrap();
    let features = synthetic_features(&labels, 6, 0.8, 32);
    let dataset = Dataset::new(
        graph,
        features,
        labels,
        SplitRatios::default(),
        2,
        33,
    )
    .unwrap();

    let cfg = SweepConfig {
        k_max: 4,
        train: TrainConfig {
            hidden: 12,
            epochs: 60,
            ..TrainConfig::default()
        },
        ..SweepConfig::default()
    };
    let (self_loop, parallel, category) = run_both_sweeps(&dataset, &cfg).unwrap();

    for trend in [&self_loop, &parallel] {
        println!("{} sweep ({}):", trend.mode, trend.metric);
        for step in &trend.steps {
            println!("  k={}  mean {:.3}  std {:.3}", step.k, step.mean, step.std);
        }
        println!(
            "  slope {:+.4}, spearman {:+.2}, label {}\n",
            trend.slope, trend.spearman, trend.label
        );
    }

    println!("category: {}", category.category);
    println!("{}", category.interpretation);
}

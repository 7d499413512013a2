//! Wall-clock comparison of the two heavy kernels.
//!
//! A full dense eigendecomposition scales cubically and is capped by
//! matrix size; the training sweep only ever multiplies by the normalized
//! adjacency and keeps working far past that cap. [`run_bench`] times both
//! on one graph and records outcomes instead of failing, so a report is
//! produced even when a task cannot run.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::gcn::{Dataset, MetricKind, SplitMasks, TrainConfig, TrainSeeds};
use crate::graph::Graph;
use crate::rewire::RewireConfig;
use crate::spectral::verify::RewireFamily;
use crate::spectral::{Spectrum, DEFAULT_DIM_CAP};

use super::sweep::{run_sweep, SweepConfig};
use super::DEFAULT_SLOPE_TOL;

/// Settings for one benchmark run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchConfig {
    /// Node count above which the eigendecomposition task is skipped.
    pub dim_cap: usize,
    /// Sweep steps timed by the pipeline task; must be at least 3.
    pub k_max: usize,
    pub train: TrainConfig,
    /// Width of the synthetic feature matrix.
    pub feature_dim: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            dim_cap: DEFAULT_DIM_CAP,
            k_max: 3,
            train: TrainConfig {
                hidden: 8,
                epochs: 5,
                patience: 5,
                ..TrainConfig::default()
            },
            feature_dim: 4,
            seed: 0,
        }
    }
}

/// How a benchmark task ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskOutcome {
    Ok,
    SizeCapExceeded,
    Error,
}

/// Timing and outcome of one task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchTask {
    pub seconds: f64,
    pub outcome: TaskOutcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

/// Timed outcomes for one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub nodes: usize,
    pub eigendecomposition: BenchTask,
    pub sweep: BenchTask,
}

/// Times a full eigendecomposition and the training sweep on `graph`.
///
/// The eigendecomposition uses the unit self-loop normalized Laplacian so
/// isolated nodes stay well defined; above `dim_cap` it is recorded as
/// [`TaskOutcome::SizeCapExceeded`] without running. The sweep task builds
/// a synthetic two-class task at the graph's size with every node in every
/// mask: the point is kernel cost, not generalization. Failures become
/// [`TaskOutcome::Error`] with a message; the report itself never fails.
pub fn run_bench(graph: &Graph, cfg: &BenchConfig) -> BenchReport {
    let n = graph.node_count();

    let eigendecomposition = if n > cfg.dim_cap {
        BenchTask {
            seconds: 0.0,
            outcome: TaskOutcome::SizeCapExceeded,
            message: Some(format!("{n} nodes exceed the cap of {}", cfg.dim_cap)),
        }
    } else {
        let start = Instant::now();
        let result = RewireConfig::self_loops(1.0)
            .and_then(|rw| Spectrum::laplacian_capped(graph, &rw, false, cfg.dim_cap));
        finish(start, result.map(|_| ()))
    };

    let start = Instant::now();
    let result = sweep_task(graph, cfg);
    let sweep = finish(start, result);

    BenchReport {
        nodes: n,
        eigendecomposition,
        sweep,
    }
}

fn finish(start: Instant, result: crate::error::Result<()>) -> BenchTask {
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(()) => BenchTask {
            seconds,
            outcome: TaskOutcome::Ok,
            message: None,
        },
        Err(e) => BenchTask {
            seconds,
            outcome: TaskOutcome::Error,
            message: Some(e.to_string()),
        },
    }
}

fn sweep_task(graph: &Graph, cfg: &BenchConfig) -> crate::error::Result<()> {
    let n = graph.node_count();
    let labels: Vec<usize> = (0..n).map(|i| i * 2 / n.max(1)).collect();
    let features = crate::gcn::data::synthetic_features(&labels, cfg.feature_dim, 1.0, cfg.seed);
    let all = vec![true; n];
    let dataset = Dataset {
        graph: graph.clone(),
        features,
        labels,
        splits: vec![SplitMasks {
            train: all.clone(),
            valid: all.clone(),
            test: all,
        }],
        split_seed: cfg.seed,
    };
    let sweep_cfg = SweepConfig {
        k_max: cfg.k_max,
        train: cfg.train,
        metric: MetricKind::Accuracy,
        slope_tol: DEFAULT_SLOPE_TOL,
        seeds: TrainSeeds {
            param_seed: cfg.seed,
            dropout_seed: cfg.seed.wrapping_add(1),
        },
    };
    run_sweep(&dataset, RewireFamily::SelfLoop, &sweep_cfg).map(|_| ())
}

//! Rewiring-strength sweeps and the strength grid.
//!
//! A sweep steps `k = 1..k_max` through one rewiring family, adjacency
//! `A + kI` for self-loops or `kA + I` for parallel edges, trains on every
//! split at each step, and classifies the direction of the mean test
//! metric. The grid varies both strengths at once. Points run in parallel;
//! per-point seeds are derived from the strengths alone, so a grid cell
//! and a sweep point with the same rewiring agree exactly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{assign_category, classify_trend, CategoryReport, Trend, DEFAULT_SLOPE_TOL};
use crate::error::{Error, Result};
use crate::gcn::{evaluate_splits, Dataset, MetricKind, TrainConfig, TrainSeeds};
use crate::rewire::RewireConfig;
use crate::spectral::verify::RewireFamily;

/// Shared settings for [`run_sweep`] and [`run_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Largest step; the sweep covers `k = 1..=k_max`. Must be at least 3
    /// so the series can be trend-classified.
    pub k_max: usize,
    pub train: TrainConfig,
    pub metric: MetricKind,
    pub slope_tol: f64,
    /// Base seeds, remixed per point with the rewiring strengths.
    pub seeds: TrainSeeds,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            k_max: 5,
            train: TrainConfig::default(),
            metric: MetricKind::Accuracy,
            slope_tol: DEFAULT_SLOPE_TOL,
            seeds: TrainSeeds {
                param_seed: 0,
                dropout_seed: 1,
            },
        }
    }
}

/// One sweep step: strength index, mean test metric, and the population
/// standard deviation over splits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepStep {
    pub k: usize,
    pub mean: f64,
    pub std: f64,
}

/// A classified sweep over one rewiring family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendReport {
    pub mode: RewireFamily,
    pub metric: MetricKind,
    pub steps: Vec<SweepStep>,
    pub slope: f64,
    pub spearman: f64,
    pub label: Trend,
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeds for one point, mixed from the base seeds and the rewiring
/// strengths only. Position in a sweep or grid does not enter, which is
/// what makes shared cells agree across the two entry points.
fn point_seeds(base: TrainSeeds, cfg: &RewireConfig) -> TrainSeeds {
    let h = splitmix64(cfg.alpha.to_bits() ^ splitmix64(cfg.gamma.to_bits()));
    TrainSeeds {
        param_seed: splitmix64(base.param_seed ^ h),
        dropout_seed: splitmix64(base.dropout_seed ^ h ^ 0xD6E8_FEB8_6659_FD93),
    }
}

/// Rewiring for step `k` of a family sweep: `A + kI` or `kA + I`.
fn step_config(mode: RewireFamily, k: usize) -> Result<RewireConfig> {
    let strength = match mode {
        RewireFamily::SelfLoop => k as f64,
        RewireFamily::ParallelEdge => (k - 1) as f64,
    };
    mode.config(strength)
}

fn sweep_point(
    dataset: &Dataset,
    mode: RewireFamily,
    k: usize,
    cfg: &SweepConfig,
) -> Result<SweepStep> {
    let wrap = |e: Error| Error::Sweep {
        k,
        source: Box::new(e),
    };
    let rw = step_config(mode, k).map_err(wrap)?;
    let summary = evaluate_splits(
        dataset,
        &rw,
        &cfg.train,
        cfg.metric,
        point_seeds(cfg.seeds, &rw),
    )
    .map_err(wrap)?;
    Ok(SweepStep {
        k,
        mean: summary.mean,
        std: summary.std,
    })
}

/// Sweeps one rewiring family over `k = 1..=k_max` and classifies the
/// trend of the mean test metric. Points are evaluated in parallel but the
/// report is assembled in step order, so the output is deterministic.
pub fn run_sweep(dataset: &Dataset, mode: RewireFamily, cfg: &SweepConfig) -> Result<TrendReport> {
    if cfg.k_max < 3 {
        return Err(Error::TooFewPoints(cfg.k_max));
    }
    let steps: Vec<SweepStep> = (1..=cfg.k_max)
        .into_par_iter()
        .map(|k| sweep_point(dataset, mode, k, cfg))
        .collect::<Result<_>>()?;

    let series: Vec<(f64, f64)> = steps.iter().map(|s| (s.k as f64, s.mean)).collect();
    let stats = classify_trend(&series, cfg.slope_tol)?;
    Ok(TrendReport {
        mode,
        metric: cfg.metric,
        steps,
        slope: stats.slope,
        spearman: stats.spearman,
        label: stats.label,
    })
}

/// Runs both family sweeps and combines their labels into a category.
pub fn run_both_sweeps(
    dataset: &Dataset,
    cfg: &SweepConfig,
) -> Result<(TrendReport, TrendReport, CategoryReport)> {
    let self_loop = run_sweep(dataset, RewireFamily::SelfLoop, cfg)?;
    let parallel = run_sweep(dataset, RewireFamily::ParallelEdge, cfg)?;
    let category = assign_category(self_loop.label, parallel.label);
    Ok((self_loop, parallel, category))
}

/// Mean test metric over a grid of rewiring strengths.
///
/// Rows follow `alphas`, columns follow `gammas`. The first column
/// (`gamma = 0`) matches a self-loop sweep and the first row (`alpha = 1`)
/// matches a parallel-edge sweep under the same base seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub metric: MetricKind,
    pub alphas: Vec<f64>,
    pub gammas: Vec<f64>,
    /// `means[i][j]` is the mean metric at `(alphas[i], gammas[j])`.
    pub means: Vec<Vec<f64>>,
    pub stds: Vec<Vec<f64>>,
}

/// Evaluates every `(alpha, gamma)` in `1..=alpha_max` x `0..gamma_max`.
/// `cfg.k_max` is ignored; the grid bounds take its place.
pub fn run_grid(
    dataset: &Dataset,
    alpha_max: usize,
    gamma_max: usize,
    cfg: &SweepConfig,
) -> Result<GridReport> {
    if alpha_max < 1 || gamma_max < 1 {
        return Err(Error::InvalidConfig(format!(
            "grid needs alpha_max >= 1 and gamma_max >= 1, got {alpha_max} and {gamma_max}"
        )));
    }
    let alphas: Vec<f64> = (1..=alpha_max).map(|a| a as f64).collect();
    let gammas: Vec<f64> = (0..gamma_max).map(|g| g as f64).collect();

    let cells: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| gammas.iter().map(move |&g| (a, g)))
        .collect();
    let evaluated: Vec<(f64, f64)> = cells
        .par_iter()
        .map(|&(alpha, gamma)| {
            let rw = RewireConfig::new(alpha, gamma)?;
            let summary = evaluate_splits(
                dataset,
                &rw,
                &cfg.train,
                cfg.metric,
                point_seeds(cfg.seeds, &rw),
            )?;
            Ok((summary.mean, summary.std))
        })
        .collect::<Result<_>>()?;

    let mut means = Vec::with_capacity(alpha_max);
    let mut stds = Vec::with_capacity(alpha_max);
    for row in evaluated.chunks(gamma_max) {
        means.push(row.iter().map(|c| c.0).collect());
        stds.push(row.iter().map(|c| c.1).collect());
    }
    Ok(GridReport {
        metric: cfg.metric,
        alphas,
        gammas,
        means,
        stds,
    })
}

/// CSV form of a sweep: one row per step.
pub fn trend_csv(report: &TrendReport) -> String {
    let mut out = String::from("k,mean,std\n");
    for s in &report.steps {
        out.push_str(&format!("{},{},{}\n", s.k, s.mean, s.std));
    }
    out
}

/// CSV form of a grid: one row per cell, in row-major order.
pub fn grid_csv(report: &GridReport) -> String {
    let mut out = String::from("alpha,gamma,mean,std\n");
    for (i, &alpha) in report.alphas.iter().enumerate() {
        for (j, &gamma) in report.gammas.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                alpha, gamma, report.means[i][j], report.stds[i][j]
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcn::{data::synthetic_features, SplitRatios};
    use crate::randgraph::gen_planted_partition;

    fn quick_cfg(k_max: usize) -> SweepConfig {
        SweepConfig {
            k_max,
            train: TrainConfig {
                hidden: 8,
                epochs: 12,
                patience: 12,
                ..TrainConfig::default()
            },
            ..SweepConfig::default()
        }
    }

    fn planted_dataset(n: usize, p_in: f64, p_out: f64, n_splits: usize, seed: u64) -> Dataset {
        let (graph, labels) = gen_planted_partition(n, 2, p_in, p_out, seed).unwrap();
        let features = synthetic_features(&labels, 6, 1.0, seed + 1);
        Dataset::new(
            graph,
            features,
            labels,
            SplitRatios::default(),
            n_splits,
            seed + 2,
        )
        .unwrap()
    }

    #[test]
    fn step_configs_match_the_intended_adjacency_forms() {
        let sl = step_config(RewireFamily::SelfLoop, 3).unwrap();
        assert_eq!((sl.alpha, sl.gamma), (3.0, 0.0));
        let pe = step_config(RewireFamily::ParallelEdge, 3).unwrap();
        assert_eq!((pe.alpha, pe.gamma), (1.0, 2.0));
        // k = 1 is the shared corner: both families reduce to A + I.
        assert_eq!(
            step_config(RewireFamily::SelfLoop, 1).unwrap(),
            step_config(RewireFamily::ParallelEdge, 1).unwrap()
        );
    }

    #[test]
    fn short_sweep_is_rejected() {
        let dataset = planted_dataset(20, 0.8, 0.1, 1, 5);
        let err = run_sweep(&dataset, RewireFamily::SelfLoop, &quick_cfg(2)).unwrap_err();
        assert!(matches!(err, Error::TooFewPoints(2)));
    }

    #[test]
    fn heterophilic_sweep_produces_reports_end_to_end() {
        let dataset = planted_dataset(30, 0.1, 0.6, 2, 9);
        let (sl, pe, cat) = run_both_sweeps(&dataset, &quick_cfg(3)).unwrap();
        assert_eq!(sl.mode, RewireFamily::SelfLoop);
        assert_eq!(pe.mode, RewireFamily::ParallelEdge);
        for report in [&sl, &pe] {
            assert_eq!(report.steps.len(), 3);
            for (i, s) in report.steps.iter().enumerate() {
                assert_eq!(s.k, i + 1);
                assert!((0.0..=1.0).contains(&s.mean));
                assert!(s.std >= 0.0);
            }
        }
        assert_eq!(cat.trend_self_loop, sl.label);
        assert_eq!(cat.trend_parallel, pe.label);
    }

    #[test]
    fn sweep_is_deterministic_as_json() {
        let dataset = planted_dataset(24, 0.8, 0.1, 2, 13);
        let a = run_sweep(&dataset, RewireFamily::ParallelEdge, &quick_cfg(3)).unwrap();
        let b = run_sweep(&dataset, RewireFamily::ParallelEdge, &quick_cfg(3)).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn trend_report_round_trips_through_json() {
        let dataset = planted_dataset(24, 0.8, 0.1, 1, 17);
        let report = run_sweep(&dataset, RewireFamily::SelfLoop, &quick_cfg(3)).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: TrendReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn grid_edges_match_sweep_points_exactly() {
        let dataset = planted_dataset(24, 0.8, 0.1, 2, 21);
        let cfg = quick_cfg(3);
        let grid = run_grid(&dataset, 3, 3, &cfg).unwrap();
        assert_eq!(grid.alphas, vec![1.0, 2.0, 3.0]);
        assert_eq!(grid.gammas, vec![0.0, 1.0, 2.0]);

        let sl = run_sweep(&dataset, RewireFamily::SelfLoop, &cfg).unwrap();
        let pe = run_sweep(&dataset, RewireFamily::ParallelEdge, &cfg).unwrap();
        for k in 1..=3usize {
            // Column gamma=0 holds the self-loop sweep, row alpha=1 the
            // parallel sweep; seeds depend only on the strengths, so the
            // values agree bit for bit.
            assert_eq!(grid.means[k - 1][0], sl.steps[k - 1].mean, "alpha={k}");
            assert_eq!(grid.means[0][k - 1], pe.steps[k - 1].mean, "k={k}");
        }
    }

    #[test]
    fn one_by_one_grid_equals_a_single_run() {
        let dataset = planted_dataset(20, 0.8, 0.1, 1, 25);
        let cfg = quick_cfg(3);
        let grid = run_grid(&dataset, 1, 1, &cfg).unwrap();
        assert_eq!(grid.means.len(), 1);
        assert_eq!(grid.means[0].len(), 1);

        let rw = RewireConfig::new(1.0, 0.0).unwrap();
        let direct = evaluate_splits(
            &dataset,
            &rw,
            &cfg.train,
            cfg.metric,
            point_seeds(cfg.seeds, &rw),
        )
        .unwrap();
        assert_eq!(grid.means[0][0], direct.mean);
    }

    #[test]
    fn five_by_five_grid_has_the_right_shape() {
        let dataset = planted_dataset(20, 0.8, 0.1, 1, 29);
        let cfg = SweepConfig {
            train: TrainConfig {
                hidden: 4,
                epochs: 3,
                patience: 3,
                ..TrainConfig::default()
            },
            ..SweepConfig::default()
        };
        let grid = run_grid(&dataset, 5, 5, &cfg).unwrap();
        assert_eq!(grid.means.len(), 5);
        assert!(grid.means.iter().all(|row| row.len() == 5));
        assert_eq!(grid.stds.len(), 5);
        assert!(run_grid(&dataset, 0, 5, &cfg).is_err());

        let csv = grid_csv(&grid);
        assert_eq!(csv.lines().count(), 26);
        assert!(csv.starts_with("alpha,gamma,mean,std\n1,0,"));
    }

    #[test]
    fn divergence_carries_sweep_context() {
        let dataset = planted_dataset(20, 0.8, 0.1, 1, 33);
        let cfg = SweepConfig {
            train: TrainConfig {
                learning_rate: 1e9,
                hidden: 8,
                epochs: 20,
                patience: 20,
                ..TrainConfig::default()
            },
            ..SweepConfig::default()
        };
        let err = run_sweep(&dataset, RewireFamily::SelfLoop, &cfg).unwrap_err();
        match &err {
            Error::Sweep { k, source } => {
                assert!((1..=5).contains(k));
                assert_eq!(source.exit_code(), 3);
            }
            other => panic!("expected sweep context, got {other:?}"),
        }
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn trend_csv_lists_steps() {
        let report = TrendReport {
            mode: RewireFamily::SelfLoop,
            metric: MetricKind::Accuracy,
            steps: vec![
                SweepStep {
                    k: 1,
                    mean: 0.5,
                    std: 0.0,
                },
                SweepStep {
                    k: 2,
                    mean: 0.75,
                    std: 0.1,
                },
            ],
            slope: 0.25,
            spearman: 1.0,
            label: Trend::Increasing,
        };
        assert_eq!(trend_csv(&report), "k,mean,std\n1,0.5,0\n2,0.75,0.1\n");
    }
}

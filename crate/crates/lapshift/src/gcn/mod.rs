//! Node classification with a small graph convolutional network.
//!
//! The network is the spectral story made concrete: one graph convolution
//! is the filter `1 - lambda` applied across the normalized Laplacian's
//! eigenbasis, so rewiring the graph moves the spectrum and, through it,
//! classification quality. [`train`] runs the full loop (Adam, dropout,
//! early stopping) on one split of a [`Dataset`] and is bit-deterministic
//! given its seeds.
//!
//! Submodules: [`model`] holds the network and its gradients, [`data`]
//! ingestion and synthetic features, [`metrics`] accuracy and ROC-AUC.

pub mod data;
pub mod metrics;
pub mod model;

use ndarray::Array2;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rewire::{rewire, RewireConfig};
use crate::spectral::ops::normalized_adjacency;
use model::{Adam, Dropout, GcnParams};

/// How many reshuffles [`make_splits`] attempts before giving up on
/// placing every class in the training set.
pub const SPLIT_RETRIES: usize = 100;

/// Target fractions for train/valid/test masks.
///
/// Counts are floored for train and valid; test receives every remaining
/// node, so the three masks always partition the node set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub valid: f64,
    pub test: f64,
}

impl SplitRatios {
    pub fn new(train: f64, valid: f64, test: f64) -> Result<Self> {
        for (name, v) in [("train", train), ("valid", valid), ("test", test)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidProbability {
                    name: match name {
                        "train" => "train ratio",
                        "valid" => "valid ratio",
                        _ => "test ratio",
                    },
                    value: v,
                });
            }
        }
        if train + valid + test > 1.0 + 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "split ratios sum to {} > 1",
                train + valid + test
            )));
        }
        Ok(SplitRatios { train, valid, test })
    }

    /// Node counts at size `n`: floors for train/valid, remainder to test.
    pub fn counts(&self, n: usize) -> (usize, usize, usize) {
        let n_train = (self.train * n as f64).floor() as usize;
        let n_valid = (self.valid * n as f64).floor() as usize;
        (n_train, n_valid, n - n_train - n_valid)
    }
}

impl Default for SplitRatios {
    /// The 60/20/20 split.
    fn default() -> Self {
        SplitRatios {
            train: 0.6,
            valid: 0.2,
            test: 0.2,
        }
    }
}

/// One train/valid/test partition as boolean masks over the nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitMasks {
    pub train: Vec<bool>,
    pub valid: Vec<bool>,
    pub test: Vec<bool>,
}

impl SplitMasks {
    pub fn counts(&self) -> (usize, usize, usize) {
        let c = |m: &[bool]| m.iter().filter(|&&b| b).count();
        (c(&self.train), c(&self.valid), c(&self.test))
    }
}

/// Draws `n_splits` seeded shuffled partitions of the nodes.
///
/// Each split reshuffles (up to [`SPLIT_RETRIES`] times) until every class
/// occurring in `labels` appears in the training mask, then errors with
/// [`Error::ClassMissing`]. Streams are derived from `(seed, split index,
/// attempt)`, so split `i` is stable regardless of how many splits are
/// requested.
pub fn make_splits(
    labels: &[usize],
    ratios: SplitRatios,
    n_splits: usize,
    seed: u64,
) -> Result<Vec<SplitMasks>> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::InvalidConfig("no nodes to split".to_string()));
    }
    if n_splits == 0 {
        return Err(Error::InvalidConfig("need at least one split".to_string()));
    }
    let classes: std::collections::BTreeSet<usize> = labels.iter().copied().collect();
    let (n_train, n_valid, _) = ratios.counts(n);

    let mut splits = Vec::with_capacity(n_splits);
    for s in 0..n_splits {
        let mut found = None;
        for attempt in 0..SPLIT_RETRIES {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((s as u64) * SPLIT_RETRIES as u64 + attempt as u64);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);

            let mut train = vec![false; n];
            let mut valid = vec![false; n];
            let mut test = vec![false; n];
            for (pos, &i) in order.iter().enumerate() {
                if pos < n_train {
                    train[i] = true;
                } else if pos < n_train + n_valid {
                    valid[i] = true;
                } else {
                    test[i] = true;
                }
            }

            let in_train: std::collections::BTreeSet<usize> = labels
                .iter()
                .enumerate()
                .filter(|&(i, _)| train[i])
                .map(|(_, &y)| y)
                .collect();
            if in_train == classes {
                found = Some(SplitMasks { train, valid, test });
                break;
            }
        }
        match found {
            Some(masks) => splits.push(masks),
            None => {
                return Err(Error::ClassMissing {
                    classes: classes.len(),
                    tries: SPLIT_RETRIES,
                })
            }
        }
    }
    Ok(splits)
}

/// A node classification task: graph, features, labels, and seeded splits.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub graph: Graph,
    /// `n x d` feature matrix.
    pub features: Array2<f64>,
    /// Class id per node.
    pub labels: Vec<usize>,
    pub splits: Vec<SplitMasks>,
    /// Seed the splits were drawn with, kept for provenance.
    pub split_seed: u64,
}

impl Dataset {
    pub fn new(
        graph: Graph,
        features: Array2<f64>,
        labels: Vec<usize>,
        ratios: SplitRatios,
        n_splits: usize,
        split_seed: u64,
    ) -> Result<Self> {
        let n = graph.node_count();
        if features.nrows() != n {
            return Err(Error::LengthMismatch {
                what: "feature rows",
                expected: n,
                got: features.nrows(),
            });
        }
        if labels.len() != n {
            return Err(Error::LengthMismatch {
                what: "labels",
                expected: n,
                got: labels.len(),
            });
        }
        let splits = make_splits(&labels, ratios, n_splits, split_seed)?;
        Ok(Dataset {
            graph,
            features,
            labels,
            splits,
            split_seed,
        })
    }

    /// Number of classes, taken as one past the largest label.
    pub fn classes(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m + 1)
    }
}

/// Metric reported on the test set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Accuracy,
    RocAuc,
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricKind::Accuracy => write!(f, "accuracy"),
            MetricKind::RocAuc => write!(f, "roc_auc"),
        }
    }
}

/// Training hyperparameters. Serde defaults let a JSON config override any
/// subset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub hidden: usize,
    /// Dropout rate on the hidden layer; 0 disables dropout entirely.
    pub dropout: f64,
    pub learning_rate: f64,
    pub weight_decay: f64,
    pub epochs: usize,
    /// Stop after this many epochs without a validation improvement.
    pub patience: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            hidden: 64,
            dropout: 0.5,
            learning_rate: 0.01,
            weight_decay: 5e-4,
            epochs: 200,
            patience: 50,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.hidden == 0 || self.epochs == 0 || self.patience == 0 {
            return Err(Error::InvalidConfig(
                "hidden, epochs, and patience must be positive".to_string(),
            ));
        }
        if !(0.0..1.0).contains(&self.dropout) {
            return Err(Error::InvalidProbability {
                name: "dropout",
                value: self.dropout,
            });
        }
        if !self.learning_rate.is_finite() || self.learning_rate <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !self.weight_decay.is_finite() || self.weight_decay < 0.0 {
            return Err(Error::NegativeParameter {
                name: "weight_decay",
                value: self.weight_decay,
            });
        }
        Ok(())
    }
}

/// Seeds for the stochastic parts of one training run. Together with the
/// dataset's split seed they pin the run exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrainSeeds {
    pub param_seed: u64,
    pub dropout_seed: u64,
}

/// Outcome of one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainResult {
    pub metric: MetricKind,
    /// Training loss per epoch actually run.
    pub train_loss: Vec<f64>,
    /// Validation accuracy per epoch actually run.
    pub valid_accuracy: Vec<f64>,
    /// Epoch whose parameters were kept (0-based).
    pub best_epoch: usize,
    pub best_valid: f64,
    /// Test-set value of `metric` at the best epoch.
    pub test_metric: f64,
    pub epochs_run: usize,
}

/// Loss above which training counts as diverged.
pub const DIVERGENCE_LIMIT: f64 = 1e6;

/// Trains the two-layer network on one split of `dataset`, with the graph
/// rewired by `rewire_cfg` before normalization.
///
/// Model selection maximizes validation accuracy; the test set is scored
/// once, at the selected epoch, with the requested metric. Early stopping
/// kicks in after `cfg.patience` epochs without improvement. The run is a
/// pure function of `(dataset, split_index, rewire_cfg, cfg, metric,
/// seeds)`.
pub fn train(
    dataset: &Dataset,
    split_index: usize,
    rewire_cfg: &RewireConfig,
    cfg: &TrainConfig,
    metric: MetricKind,
    seeds: TrainSeeds,
) -> Result<TrainResult> {
    cfg.validate()?;
    let split = dataset.splits.get(split_index).ok_or_else(|| {
        Error::InvalidConfig(format!(
            "split index {split_index} out of range for {} splits",
            dataset.splits.len()
        ))
    })?;
    let classes = dataset.classes();
    if classes < 2 {
        return Err(Error::InvalidConfig(
            "need at least 2 classes to train".to_string(),
        ));
    }
    if metric == MetricKind::RocAuc && classes != 2 {
        return Err(Error::InvalidConfig(format!(
            "roc_auc needs exactly 2 classes, got {classes}"
        )));
    }

    let rewired = rewire(&dataset.graph, rewire_cfg)?;
    let a_hat = normalized_adjacency(&rewired)?;
    let n = dataset.graph.node_count();
    let d = dataset.features.ncols();

    let mut params = GcnParams::init(d, cfg.hidden, classes, seeds.param_seed);
    let mut adam = Adam::new(&params, cfg.learning_rate);
    let keep = 1.0 - cfg.dropout;
    let mut dropout_rng = ChaCha8Rng::seed_from_u64(seeds.dropout_seed);

    let mut train_loss = Vec::new();
    let mut valid_accuracy = Vec::new();
    let mut best_epoch = 0usize;
    let mut best_valid = f64::NEG_INFINITY;
    let mut best_params = params.clone();
    let mut since_best = 0usize;

    for epoch in 0..cfg.epochs {
        let mask_array = (cfg.dropout > 0.0).then(|| {
            Array2::from_shape_fn((n, cfg.hidden), |_| {
                if dropout_rng.random::<f64>() < keep {
                    1.0
                } else {
                    0.0
                }
            })
        });
        let dropout = mask_array.as_ref().map(|m| Dropout { mask: m, keep });

        let (loss, grads) = model::loss_and_grads(
            &params,
            a_hat.view(),
            dataset.features.view(),
            &dataset.labels,
            &split.train,
            cfg.weight_decay,
            dropout,
            epoch,
        )?;
        if loss > DIVERGENCE_LIMIT {
            return Err(Error::Diverged { epoch, loss });
        }
        adam.step(&mut params, &grads);
        train_loss.push(loss);

        let (z, _) = model::forward(&params, a_hat.view(), dataset.features.view(), None)?;
        let acc = metrics::accuracy(&model::predict(&z), &dataset.labels, &split.valid)?;
        valid_accuracy.push(acc);

        if acc > best_valid {
            best_valid = acc;
            best_epoch = epoch;
            best_params = params.clone();
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= cfg.patience {
                break;
            }
        }
    }

    let (z, _) = model::forward(&best_params, a_hat.view(), dataset.features.view(), None)?;
    let test_metric = match metric {
        MetricKind::Accuracy => {
            metrics::accuracy(&model::predict(&z), &dataset.labels, &split.test)?
        }
        MetricKind::RocAuc => {
            let scores = model::binary_scores(&z)?;
            let (s, l): (Vec<f64>, Vec<bool>) = scores
                .iter()
                .zip(dataset.labels.iter())
                .zip(split.test.iter())
                .filter(|&(_, &keep)| keep)
                .map(|((&s, &y), _)| (s, y == 1))
                .unzip();
            metrics::roc_auc(&s, &l)?
        }
    };

    let epochs_run = train_loss.len();
    Ok(TrainResult {
        metric,
        train_loss,
        valid_accuracy,
        best_epoch,
        best_valid,
        test_metric,
        epochs_run,
    })
}

/// Per-split test metrics with their mean and population standard
/// deviation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSummary {
    pub metric: MetricKind,
    pub per_split: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

/// Runs [`train`] on every split of the dataset and aggregates the test
/// metrics. Seeds are varied per split by offsetting the given seeds with
/// the split index, keeping runs independent but reproducible.
pub fn evaluate_splits(
    dataset: &Dataset,
    rewire_cfg: &RewireConfig,
    cfg: &TrainConfig,
    metric: MetricKind,
    seeds: TrainSeeds,
) -> Result<SplitSummary> {
    let mut per_split = Vec::with_capacity(dataset.splits.len());
    for s in 0..dataset.splits.len() {
        let shifted = TrainSeeds {
            param_seed: seeds.param_seed.wrapping_add(s as u64),
            dropout_seed: seeds.dropout_seed.wrapping_add(s as u64),
        };
        per_split.push(train(dataset, s, rewire_cfg, cfg, metric, shifted)?.test_metric);
    }
    let mean = per_split.iter().sum::<f64>() / per_split.len() as f64;
    let var = per_split.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / per_split.len() as f64;
    Ok(SplitSummary {
        metric,
        per_split,
        mean,
        std: var.sqrt(),
    })
}

/// Test accuracy of a graph-blind softmax regression on the features.
///
/// Zero-initialized and optimized with plain full-batch gradient descent,
/// so the result is deterministic. Used as the baseline that the graph
/// network must beat for neighborhood aggregation to be worth anything.
pub fn logistic_baseline(
    features: &Array2<f64>,
    labels: &[usize],
    split: &SplitMasks,
    epochs: usize,
    learning_rate: f64,
) -> Result<f64> {
    let n = features.nrows();
    let d = features.ncols();
    if labels.len() != n {
        return Err(Error::LengthMismatch {
            what: "labels",
            expected: n,
            got: labels.len(),
        });
    }
    let classes = labels.iter().max().map_or(0, |&m| m + 1);
    if classes < 2 {
        return Err(Error::InvalidConfig(
            "need at least 2 classes".to_string(),
        ));
    }
    let count = split.train.iter().filter(|&&b| b).count();
    if count == 0 {
        return Err(Error::InvalidConfig(
            "training mask selects no nodes".to_string(),
        ));
    }

    let mut w = Array2::<f64>::zeros((d, classes));
    let mut b = vec![0.0f64; classes];
    for _ in 0..epochs {
        let z = features.dot(&w);
        let mut dw = Array2::<f64>::zeros((d, classes));
        let mut db = vec![0.0f64; classes];
        for i in 0..n {
            if !split.train[i] {
                continue;
            }
            let row = z.row(i);
            let max = (0..classes)
                .map(|j| row[j] + b[j])
                .fold(f64::NEG_INFINITY, f64::max);
            let exps: Vec<f64> = (0..classes).map(|j| (row[j] + b[j] - max).exp()).collect();
            let total: f64 = exps.iter().sum();
            for j in 0..classes {
                let g = (exps[j] / total - if labels[i] == j { 1.0 } else { 0.0 }) / count as f64;
                db[j] += g;
                for f in 0..d {
                    dw[[f, j]] += g * features[[i, f]];
                }
            }
        }
        w.scaled_add(-learning_rate, &dw);
        for j in 0..classes {
            b[j] -= learning_rate * db[j];
        }
    }

    let z = features.dot(&w);
    let pred: Vec<usize> = (0..n)
        .map(|i| {
            let mut best = 0;
            for j in 1..classes {
                if z[[i, j]] + b[j] > z[[i, best]] + b[best] {
                    best = j;
                }
            }
            best
        })
        .collect();
    metrics::accuracy(&pred, labels, &split.test)
}

//! Two-layer graph convolutional network with explicit gradients.
//!
//! The forward pass is `Z = A (LayerNorm(ReLU(A X W0)) dropped out) W1`
//! with `A` the caller-supplied normalized adjacency. Everything is dense
//! `f64` and single-threaded so a training run is bit-reproducible; the
//! dropout mask is passed in explicitly, which keeps the loss a pure
//! function of `(parameters, mask)` and makes finite-difference gradient
//! checking possible.

use ndarray::{Array1, Array2, ArrayView2, Axis, Zip};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Variance floor inside layer normalization.
pub const LAYER_NORM_EPS: f64 = 1e-5;

const ADAM_BETA1: f64 = 0.9;
const ADAM_BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

/// Learnable parameters: two weight matrices and the layer-norm affine pair.
#[derive(Debug, Clone, PartialEq)]
pub struct GcnParams {
    /// First-layer weights, `d x h`.
    pub w0: Array2<f64>,
    /// Second-layer weights, `h x c`.
    pub w1: Array2<f64>,
    /// Layer-norm gain, length `h`.
    pub ln_gain: Array1<f64>,
    /// Layer-norm bias, length `h`.
    pub ln_bias: Array1<f64>,
}

impl GcnParams {
    /// Glorot-uniform weights, unit gain, zero bias, from one seed.
    pub fn init(d: usize, hidden: usize, classes: usize, param_seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(param_seed);
        let mut glorot = |rows: usize, cols: usize| {
            let s = (6.0 / (rows + cols) as f64).sqrt();
            Array2::from_shape_fn((rows, cols), |_| rng.random_range(-s..s))
        };
        GcnParams {
            w0: glorot(d, hidden),
            w1: glorot(hidden, classes),
            ln_gain: Array1::ones(hidden),
            ln_bias: Array1::zeros(hidden),
        }
    }

    pub fn zeros_like(&self) -> Self {
        GcnParams {
            w0: Array2::zeros(self.w0.raw_dim()),
            w1: Array2::zeros(self.w1.raw_dim()),
            ln_gain: Array1::zeros(self.ln_gain.raw_dim()),
            ln_bias: Array1::zeros(self.ln_bias.raw_dim()),
        }
    }

    pub fn hidden(&self) -> usize {
        self.w0.ncols()
    }

    pub fn classes(&self) -> usize {
        self.w1.ncols()
    }
}

/// Gradients, one tensor per parameter tensor.
pub type GcnGrads = GcnParams;

/// Dropout input for one forward pass: a 0/1 mask over the hidden
/// activations and the keep probability it was drawn with.
#[derive(Debug, Clone, Copy)]
pub struct Dropout<'a> {
    pub mask: &'a Array2<f64>,
    pub keep: f64,
}

/// Intermediate activations kept for the backward pass.
pub struct Cache {
    /// `A X`, reused for the first-layer weight gradient.
    ax: Array2<f64>,
    /// Pre-activation of layer 1.
    s0: Array2<f64>,
    /// Row-normalized activations (before gain/bias).
    rhat: Array2<f64>,
    /// Per-row `1 / sqrt(var + eps)`.
    inv: Array1<f64>,
    /// Propagated post-dropout hidden output, reused for the second-layer
    /// weight gradient.
    ahd: Array2<f64>,
}

fn check_shapes(
    params: &GcnParams,
    a_hat: &ArrayView2<'_, f64>,
    x: &ArrayView2<'_, f64>,
) -> Result<()> {
    let n = a_hat.nrows();
    if a_hat.ncols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: a_hat.ncols(),
        });
    }
    if x.nrows() != n {
        return Err(Error::LengthMismatch {
            what: "feature rows",
            expected: n,
            got: x.nrows(),
        });
    }
    if params.w0.nrows() != x.ncols() {
        return Err(Error::LengthMismatch {
            what: "first-layer input width",
            expected: x.ncols(),
            got: params.w0.nrows(),
        });
    }
    if params.w1.nrows() != params.w0.ncols()
        || params.ln_gain.len() != params.w0.ncols()
        || params.ln_bias.len() != params.w0.ncols()
    {
        return Err(Error::LengthMismatch {
            what: "hidden width",
            expected: params.w0.ncols(),
            got: params.w1.nrows(),
        });
    }
    Ok(())
}

/// Runs the network and returns class scores `n x c` plus the activations
/// needed to backpropagate. Pass `dropout: None` for evaluation.
pub fn forward(
    params: &GcnParams,
    a_hat: ArrayView2<'_, f64>,
    x: ArrayView2<'_, f64>,
    dropout: Option<Dropout<'_>>,
) -> Result<(Array2<f64>, Cache)> {
    check_shapes(params, &a_hat, &x)?;
    let n = a_hat.nrows();
    let h = params.hidden();

    let ax = a_hat.dot(&x);
    let s0 = ax.dot(&params.w0);
    let r = s0.mapv(|v| v.max(0.0));

    // Row-wise layer norm with population variance.
    let mut rhat = Array2::zeros((n, h));
    let mut inv = Array1::zeros(n);
    let mut h1 = Array2::zeros((n, h));
    for i in 0..n {
        let row = r.row(i);
        let mean = row.sum() / h as f64;
        let var = row.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / h as f64;
        let s = 1.0 / (var + LAYER_NORM_EPS).sqrt();
        inv[i] = s;
        for j in 0..h {
            let norm = (row[j] - mean) * s;
            rhat[[i, j]] = norm;
            h1[[i, j]] = params.ln_gain[j] * norm + params.ln_bias[j];
        }
    }

    let hd = match dropout {
        Some(d) => {
            if d.mask.dim() != (n, h) {
                return Err(Error::LengthMismatch {
                    what: "dropout mask entries",
                    expected: n * h,
                    got: d.mask.len(),
                });
            }
            &h1 * d.mask / d.keep
        }
        None => h1,
    };

    let ahd = a_hat.dot(&hd);
    let z = ahd.dot(&params.w1);

    Ok((
        z,
        Cache {
            ax,
            s0,
            rhat,
            inv,
            ahd,
        },
    ))
}

/// Masked mean softmax cross-entropy of scores `z` against `labels`, plus
/// the weight-decay term `wd/2 (|W0|^2 + |W1|^2)`.
fn masked_loss(
    z: &Array2<f64>,
    labels: &[usize],
    mask: &[bool],
    params: &GcnParams,
    weight_decay: f64,
) -> f64 {
    let count = mask.iter().filter(|&&m| m).count() as f64;
    let mut data = 0.0;
    for i in 0..labels.len() {
        if !mask[i] {
            continue;
        }
        let row = z.row(i);
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lse = max + row.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
        data += lse - row[labels[i]];
    }
    let decay = 0.5
        * weight_decay
        * (params.w0.iter().map(|w| w * w).sum::<f64>()
            + params.w1.iter().map(|w| w * w).sum::<f64>());
    data / count + decay
}

/// Forward pass plus loss, without gradients. Used for finite differences
/// and for cheap evaluation of the training objective.
pub fn loss_only(
    params: &GcnParams,
    a_hat: ArrayView2<'_, f64>,
    x: ArrayView2<'_, f64>,
    labels: &[usize],
    mask: &[bool],
    weight_decay: f64,
    dropout: Option<Dropout<'_>>,
) -> Result<f64> {
    let (z, _) = forward(params, a_hat, x, dropout)?;
    Ok(masked_loss(&z, labels, mask, params, weight_decay))
}

/// Computes the training loss and its gradient with respect to every
/// parameter by backpropagation.
///
/// `epoch` only labels the error when the loss turns non-finite. The mask
/// must select at least one node.
#[allow(clippy::too_many_arguments)]
pub fn loss_and_grads(
    params: &GcnParams,
    a_hat: ArrayView2<'_, f64>,
    x: ArrayView2<'_, f64>,
    labels: &[usize],
    mask: &[bool],
    weight_decay: f64,
    dropout: Option<Dropout<'_>>,
    epoch: usize,
) -> Result<(f64, GcnGrads)> {
    let n = a_hat.nrows();
    if labels.len() != n || mask.len() != n {
        return Err(Error::LengthMismatch {
            what: "labels and mask",
            expected: n,
            got: labels.len().min(mask.len()),
        });
    }
    let count = mask.iter().filter(|&&m| m).count();
    if count == 0 {
        return Err(Error::InvalidConfig(
            "training mask selects no nodes".to_string(),
        ));
    }
    let classes = params.classes();
    if let Some(&bad) = labels.iter().find(|&&y| y >= classes) {
        return Err(Error::InvalidConfig(format!(
            "label {bad} out of range for {classes} classes"
        )));
    }

    let (z, cache) = forward(params, a_hat, x, dropout)?;
    let loss = masked_loss(&z, labels, mask, params, weight_decay);
    if !loss.is_finite() {
        return Err(Error::NonFiniteLoss { epoch });
    }

    // d loss / d z: (softmax - onehot) / count on masked rows, zero elsewhere.
    let mut dz = Array2::zeros(z.raw_dim());
    for i in 0..n {
        if !mask[i] {
            continue;
        }
        let row = z.row(i);
        let max = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = row.iter().map(|v| (v - max).exp()).collect();
        let total: f64 = exps.iter().sum();
        for j in 0..classes {
            let p = exps[j] / total;
            dz[[i, j]] = (p - if labels[i] == j { 1.0 } else { 0.0 }) / count as f64;
        }
    }

    let mut dw1 = cache.ahd.t().dot(&dz);
    dw1.scaled_add(weight_decay, &params.w1);

    // A is symmetric, so transposing the propagation step reuses A itself.
    let dahd = dz.dot(&params.w1.t());
    let dhd = a_hat.dot(&dahd);
    let dh1 = match dropout {
        Some(d) => &dhd * d.mask / d.keep,
        None => dhd,
    };

    let h = params.hidden();
    let mut dgain = Array1::zeros(h);
    let mut dbias = Array1::zeros(h);
    for i in 0..n {
        for j in 0..h {
            dgain[j] += dh1[[i, j]] * cache.rhat[[i, j]];
            dbias[j] += dh1[[i, j]];
        }
    }

    // Layer-norm backward, row by row.
    let mut ds0 = Array2::zeros((n, h));
    for i in 0..n {
        let mut drhat = Array1::zeros(h);
        for j in 0..h {
            drhat[j] = dh1[[i, j]] * params.ln_gain[j];
        }
        let mean_d = drhat.sum() / h as f64;
        let mean_dr: f64 = (0..h).map(|j| drhat[j] * cache.rhat[[i, j]]).sum::<f64>() / h as f64;
        for j in 0..h {
            let dr = cache.inv[i] * (drhat[j] - mean_d - cache.rhat[[i, j]] * mean_dr);
            ds0[[i, j]] = if cache.s0[[i, j]] > 0.0 { dr } else { 0.0 };
        }
    }

    let mut dw0 = cache.ax.t().dot(&ds0);
    dw0.scaled_add(weight_decay, &params.w0);

    Ok((
        loss,
        GcnGrads {
            w0: dw0,
            w1: dw1,
            ln_gain: dgain,
            ln_bias: dbias,
        },
    ))
}

/// Argmax class per row; ties resolve to the lowest index.
pub fn predict(z: &Array2<f64>) -> Vec<usize> {
    z.axis_iter(Axis(0))
        .map(|row| {
            let mut best = 0;
            for j in 1..row.len() {
                if row[j] > row[best] {
                    best = j;
                }
            }
            best
        })
        .collect()
}

/// Binary decision scores `z[:, 1] - z[:, 0]` for ROC-AUC on 2-class tasks.
pub fn binary_scores(z: &Array2<f64>) -> Result<Vec<f64>> {
    if z.ncols() != 2 {
        return Err(Error::LengthMismatch {
            what: "binary score columns",
            expected: 2,
            got: z.ncols(),
        });
    }
    Ok(z.axis_iter(Axis(0)).map(|r| r[1] - r[0]).collect())
}

/// Adam optimizer state across all four parameter tensors.
pub struct Adam {
    lr: f64,
    t: i32,
    m: GcnParams,
    v: GcnParams,
}

impl Adam {
    pub fn new(params: &GcnParams, lr: f64) -> Self {
        Adam {
            lr,
            t: 0,
            m: params.zeros_like(),
            v: params.zeros_like(),
        }
    }

    /// One update step with bias correction.
    pub fn step(&mut self, params: &mut GcnParams, grads: &GcnGrads) {
        self.t += 1;
        let c1 = 1.0 - ADAM_BETA1.powi(self.t);
        let c2 = 1.0 - ADAM_BETA2.powi(self.t);
        let lr = self.lr;

        let update = |w: &mut f64, g: f64, m: &mut f64, v: &mut f64| {
            *m = ADAM_BETA1 * *m + (1.0 - ADAM_BETA1) * g;
            *v = ADAM_BETA2 * *v + (1.0 - ADAM_BETA2) * g * g;
            let mhat = *m / c1;
            let vhat = *v / c2;
            *w -= lr * mhat / (vhat.sqrt() + ADAM_EPS);
        };

        Zip::from(&mut params.w0)
            .and(&grads.w0)
            .and(&mut self.m.w0)
            .and(&mut self.v.w0)
            .for_each(|w, &g, m, v| update(w, g, m, v));
        Zip::from(&mut params.w1)
            .and(&grads.w1)
            .and(&mut self.m.w1)
            .and(&mut self.v.w1)
            .for_each(|w, &g, m, v| update(w, g, m, v));
        Zip::from(&mut params.ln_gain)
            .and(&grads.ln_gain)
            .and(&mut self.m.ln_gain)
            .and(&mut self.v.ln_gain)
            .for_each(|w, &g, m, v| update(w, g, m, v));
        Zip::from(&mut params.ln_bias)
            .and(&grads.ln_bias)
            .and(&mut self.m.ln_bias)
            .and(&mut self.v.ln_bias)
            .for_each(|w, &g, m, v| update(w, g, m, v));
    }
}

/// Outcome of comparing analytic gradients against central differences.
#[derive(Debug, Clone)]
pub struct GradientCheckReport {
    /// Number of scalar parameters compared.
    pub checked: usize,
    pub max_abs_diff: f64,
    pub max_rel_err: f64,
    pub pass: bool,
}

/// Compares every analytic gradient entry against a central finite
/// difference of the loss.
///
/// An entry passes when the difference is within `rel_tol` of the larger
/// magnitude, or absolutely below `1e-8` (tiny gradients drown in
/// quadrature noise otherwise). The dropout mask, when given, is held
/// fixed so the loss stays differentiable in the parameters.
#[allow(clippy::too_many_arguments)]
pub fn gradient_check(
    params: &GcnParams,
    a_hat: ArrayView2<'_, f64>,
    x: ArrayView2<'_, f64>,
    labels: &[usize],
    mask: &[bool],
    weight_decay: f64,
    dropout: Option<Dropout<'_>>,
    step: f64,
    rel_tol: f64,
) -> Result<GradientCheckReport> {
    let (_, grads) = loss_and_grads(
        params, a_hat, x, labels, mask, weight_decay, dropout, 0,
    )?;

    let mut work = params.clone();
    let mut checked = 0usize;
    let mut max_abs_diff = 0.0f64;
    let mut max_rel_err = 0.0f64;
    let mut pass = true;

    // Walks every entry of one tensor; the closure selects the tensor on
    // each freshly borrowed copy so the finite-difference evaluations see
    // the perturbed parameters.
    let mut check_tensor = |select: &dyn Fn(&mut GcnParams) -> &mut [f64],
                            analytic: &[f64]|
     -> Result<()> {
        let len = analytic.len();
        for idx in 0..len {
            let orig = select(&mut work)[idx];
            select(&mut work)[idx] = orig + step;
            let plus = loss_only(&work, a_hat, x, labels, mask, weight_decay, dropout)?;
            select(&mut work)[idx] = orig - step;
            let minus = loss_only(&work, a_hat, x, labels, mask, weight_decay, dropout)?;
            select(&mut work)[idx] = orig;

            let fd = (plus - minus) / (2.0 * step);
            let a = analytic[idx];
            let diff = (a - fd).abs();
            let denom = a.abs().max(fd.abs());
            let rel = if denom > 0.0 { diff / denom } else { 0.0 };
            checked += 1;
            max_abs_diff = max_abs_diff.max(diff);
            if diff > 1e-8 {
                max_rel_err = max_rel_err.max(rel);
                if rel > rel_tol {
                    pass = false;
                }
            }
        }
        Ok(())
    };

    check_tensor(
        &|p: &mut GcnParams| p.w0.as_slice_mut().expect("contiguous"),
        grads.w0.as_slice().expect("contiguous"),
    )?;
    check_tensor(
        &|p: &mut GcnParams| p.w1.as_slice_mut().expect("contiguous"),
        grads.w1.as_slice().expect("contiguous"),
    )?;
    check_tensor(
        &|p: &mut GcnParams| p.ln_gain.as_slice_mut().expect("contiguous"),
        grads.ln_gain.as_slice().expect("contiguous"),
    )?;
    check_tensor(
        &|p: &mut GcnParams| p.ln_bias.as_slice_mut().expect("contiguous"),
        grads.ln_bias.as_slice().expect("contiguous"),
    )?;

    Ok(GradientCheckReport {
        checked,
        max_abs_diff,
        max_rel_err,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rewire::{rewire, RewireConfig};
    use crate::spectral::ops::normalized_adjacency;
    use approx::assert_abs_diff_eq;

    fn small_setup(seed: u64) -> (Array2<f64>, Array2<f64>, Vec<usize>, Vec<bool>) {
        let g = crate::randgraph::gen_erdos_renyi(12, 0.4, seed).unwrap();
        let g = rewire(&g, &RewireConfig::self_loops(1.0).unwrap()).unwrap();
        let a_hat = normalized_adjacency(&g).unwrap();
        let labels: Vec<usize> = (0..12).map(|i| i % 3).collect();
        let x = crate::gcn::data::synthetic_features(&labels, 5, 1.0, seed + 77);
        let mask: Vec<bool> = (0..12).map(|i| i % 2 == 0).collect();
        (a_hat, x, labels, mask)
    }

    #[test]
    fn zero_weights_give_zero_scores() {
        let (a_hat, x, _, _) = small_setup(3);
        let params = GcnParams {
            w0: Array2::zeros((5, 8)),
            w1: Array2::zeros((8, 3)),
            ln_gain: Array1::ones(8),
            ln_bias: Array1::zeros(8),
        };
        let (z, _) = forward(&params, a_hat.view(), x.view(), None).unwrap();
        assert!(z.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn eval_forward_is_bitwise_repeatable() {
        let (a_hat, x, _, _) = small_setup(4);
        let params = GcnParams::init(5, 8, 3, 11);
        let (z1, _) = forward(&params, a_hat.view(), x.view(), None).unwrap();
        let (z2, _) = forward(&params, a_hat.view(), x.view(), None).unwrap();
        assert_eq!(z1, z2);
    }

    #[test]
    fn single_node_with_loop_reduces_to_mlp() {
        let mut g = Graph::new(1);
        g.add_loop_weight(0, 1.0).unwrap();
        let a_hat = normalized_adjacency(&g).unwrap();
        assert_abs_diff_eq!(a_hat[[0, 0]], 1.0, epsilon = 1e-15);

        let x = Array2::from_shape_vec((1, 3), vec![0.5, -1.0, 2.0]).unwrap();
        let params = GcnParams::init(3, 4, 2, 5);
        let (z, _) = forward(&params, a_hat.view(), x.view(), None).unwrap();

        // By hand: the graph operator is the identity, so the network is a
        // plain MLP on the single feature row.
        let s0 = x.dot(&params.w0);
        let r = s0.mapv(|v| v.max(0.0));
        let mean = r.sum() / 4.0;
        let var = r.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 4.0;
        let rhat = r.mapv(|v| (v - mean) / (var + LAYER_NORM_EPS).sqrt());
        let mut h1 = rhat;
        for j in 0..4 {
            h1[[0, j]] = params.ln_gain[j] * h1[[0, j]] + params.ln_bias[j];
        }
        let expect = h1.dot(&params.w1);
        for (a, b) in z.iter().zip(expect.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn uniform_scores_give_log_class_count_loss() {
        let (a_hat, x, labels, mask) = small_setup(6);
        // Zero weights produce identical (all-zero) scores per class.
        let params = GcnParams {
            w0: Array2::zeros((5, 8)),
            w1: Array2::zeros((8, 3)),
            ln_gain: Array1::ones(8),
            ln_bias: Array1::zeros(8),
        };
        let loss = loss_only(
            &params,
            a_hat.view(),
            x.view(),
            &labels,
            &mask,
            0.0,
            None,
        )
        .unwrap();
        assert_abs_diff_eq!(loss, 3.0f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn weight_decay_adds_quadratic_term() {
        let (a_hat, x, labels, mask) = small_setup(6);
        let params = GcnParams::init(5, 8, 3, 2);
        let wd = 5e-4;
        let without = loss_only(
            &params,
            a_hat.view(),
            x.view(),
            &labels,
            &mask,
            0.0,
            None,
        )
        .unwrap();
        let with = loss_only(
            &params,
            a_hat.view(),
            x.view(),
            &labels,
            &mask,
            wd,
            None,
        )
        .unwrap();
        let norms = params.w0.iter().map(|w| w * w).sum::<f64>()
            + params.w1.iter().map(|w| w * w).sum::<f64>();
        assert_abs_diff_eq!(with - without, 0.5 * wd * norms, epsilon = 1e-12);
    }

    #[test]
    fn empty_mask_is_rejected() {
        let (a_hat, x, labels, _) = small_setup(7);
        let params = GcnParams::init(5, 8, 3, 2);
        let err = loss_and_grads(
            &params,
            a_hat.view(),
            x.view(),
            &labels,
            &vec![false; 12],
            0.0,
            None,
            0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidConfig(_)));
    }

    #[test]
    fn gradients_match_finite_differences() {
        for seed in [101u64, 102, 103] {
            let (a_hat, x, labels, mask) = small_setup(seed);
            let params = GcnParams::init(5, 6, 3, seed + 1);
            let report = gradient_check(
                &params,
                a_hat.view(),
                x.view(),
                &labels,
                &mask,
                5e-4,
                None,
                1e-4,
                1e-3,
            )
            .unwrap();
            assert!(
                report.pass,
                "seed {seed}: rel {} abs {}",
                report.max_rel_err, report.max_abs_diff
            );
        }
    }

    #[test]
    fn gradients_match_finite_differences_under_fixed_dropout() {
        let (a_hat, x, labels, mask) = small_setup(55);
        let params = GcnParams::init(5, 6, 3, 9);
        let keep = 0.5;
        let drop_mask = {
            let mut rng = ChaCha8Rng::seed_from_u64(400);
            Array2::from_shape_fn((12, 6), |_| {
                if rng.random::<f64>() < keep {
                    1.0
                } else {
                    0.0
                }
            })
        };
        let report = gradient_check(
            &params,
            a_hat.view(),
            x.view(),
            &labels,
            &mask,
            5e-4,
            Some(Dropout {
                mask: &drop_mask,
                keep,
            }),
            1e-4,
            1e-3,
        )
        .unwrap();
        assert!(
            report.pass,
            "rel {} abs {}",
            report.max_rel_err, report.max_abs_diff
        );
    }

    #[test]
    fn adam_descends_the_loss() {
        let (a_hat, x, labels, mask) = small_setup(20);
        let mut params = GcnParams::init(5, 8, 3, 21);
        let mut adam = Adam::new(&params, 0.01);
        let initial = loss_only(
            &params,
            a_hat.view(),
            x.view(),
            &labels,
            &mask,
            5e-4,
            None,
        )
        .unwrap();
        for epoch in 0..60 {
            let (_, grads) = loss_and_grads(
                &params,
                a_hat.view(),
                x.view(),
                &labels,
                &mask,
                5e-4,
                None,
                epoch,
            )
            .unwrap();
            adam.step(&mut params, &grads);
        }
        let trained = loss_only(
            &params,
            a_hat.view(),
            x.view(),
            &labels,
            &mask,
            5e-4,
            None,
        )
        .unwrap();
        assert!(
            trained < initial * 0.5,
            "loss went {initial} -> {trained}"
        );
    }

    #[test]
    fn predict_breaks_ties_low_and_binary_scores_need_two_columns() {
        let z = Array2::from_shape_vec((2, 3), vec![1.0, 1.0, 0.0, 0.0, 2.0, 2.0]).unwrap();
        assert_eq!(predict(&z), vec![0, 1]);
        assert!(binary_scores(&z).is_err());
        let z2 = Array2::from_shape_vec((2, 2), vec![0.0, 1.0, 3.0, 1.0]).unwrap();
        assert_eq!(binary_scores(&z2).unwrap(), vec![1.0, -2.0]);
    }

    #[test]
    fn shape_mismatches_are_reported() {
        let (a_hat, x, _, _) = small_setup(8);
        let params = GcnParams::init(4, 8, 3, 2); // wrong input width
        assert!(forward(&params, a_hat.view(), x.view(), None).is_err());
    }
}

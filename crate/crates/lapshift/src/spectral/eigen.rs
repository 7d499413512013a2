//! Dense symmetric eigendecomposition.
//!
//! Householder tridiagonalization followed by implicit-shift QL, the classic
//! EISPACK `tred2`/`tql2` pair. Deterministic: no pivoting choices depend on
//! anything but the input values, so repeated runs produce bit-identical
//! output. Eigenvalues come back ascending; eigenvectors are the matching
//! columns, each flipped so its largest-magnitude entry is positive.
//!
//! The solver refuses matrices larger than a configurable cap (default
//! [`DEFAULT_DIM_CAP`]) because dense O(n^3) work past that point is better
//! served by sparse iterative methods.

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

/// Largest matrix dimension accepted by default.
pub const DEFAULT_DIM_CAP: usize = 4000;

/// Absolute entrywise tolerance for the symmetry check.
pub const SYMMETRY_TOL: f64 = 1e-10;

const MAX_QL_SWEEPS: usize = 30;

/// Eigendecomposition of a symmetric matrix with the default size cap.
///
/// Returns ascending eigenvalues and, when `want_vectors` is set, the
/// orthonormal eigenvector columns. Errors on non-square, non-symmetric
/// (entrywise beyond [`SYMMETRY_TOL`]), or non-finite input.
pub fn eigendecompose(
    m: ArrayView2<'_, f64>,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Array2<f64>>)> {
    eigendecompose_capped(m, want_vectors, DEFAULT_DIM_CAP)
}

/// [`eigendecompose`] with an explicit size cap.
pub fn eigendecompose_capped(
    m: ArrayView2<'_, f64>,
    want_vectors: bool,
    cap: usize,
) -> Result<(Vec<f64>, Option<Array2<f64>>)> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows > cap {
        return Err(Error::DimensionCap { dim: rows, cap });
    }
    for ((i, j), &v) in m.indexed_iter() {
        if !v.is_finite() {
            return Err(Error::NonFiniteEntry { i, j });
        }
    }
    for i in 0..rows {
        for j in (i + 1)..cols {
            let diff = (m[[i, j]] - m[[j, i]]).abs();
            if diff > SYMMETRY_TOL {
                return Err(Error::NotSymmetric {
                    i,
                    j,
                    diff,
                    tol: SYMMETRY_TOL,
                });
            }
        }
    }

    let n = rows;
    if n == 0 {
        return Ok((
            Vec::new(),
            want_vectors.then(|| Array2::zeros((0, 0))),
        ));
    }

    // Work on the symmetrized matrix so tiny asymmetries cannot leak through.
    let mut v = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            v[[i, j]] = 0.5 * (m[[i, j]] + m[[j, i]]);
        }
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(&mut v, &mut d, &mut e);
    ql_implicit_shift(&mut v, &mut d, &mut e)?;

    // Ascending sort with the matching column permutation.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();

    let vectors = want_vectors.then(|| {
        let mut u = Array2::zeros((n, n));
        for (dst, &src) in order.iter().enumerate() {
            // sign convention: largest-magnitude entry positive, first one
            // winning ties
            let mut best = 0;
            let mut best_abs = -1.0;
            for r in 0..n {
                let a = v[[r, src]].abs();
                if a > best_abs {
                    best_abs = a;
                    best = r;
                }
            }
            let flip = if v[[best, src]] < 0.0 { -1.0 } else { 1.0 };
            for r in 0..n {
                u[[r, dst]] = flip * v[[r, src]];
            }
        }
        u
    });

    Ok((values, vectors))
}

/// Householder reduction to tridiagonal form, accumulating the orthogonal
/// transforms in `v`. On exit `d` holds the diagonal, `e[1..]` the
/// subdiagonal, and `v` the accumulated basis.
fn tridiagonalize(v: &mut Array2<f64>, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = v[[n - 1, j]];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[[i - 1, j]];
                v[[i, j]] = 0.0;
                v[[j, i]] = 0.0;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }

            // apply the Householder similarity to the active block
            for j in 0..i {
                let f = d[j];
                v[[j, i]] = f;
                let mut g = e[j] + v[[j, j]] * f;
                for k in (j + 1)..i {
                    g += v[[k, j]] * d[k];
                    e[k] += v[[k, j]] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[[k, j]] -= f * e[k] + g * d[k];
                }
                d[j] = v[[i - 1, j]];
                v[[i, j]] = 0.0;
            }
        }
        d[i] = h;
    }

    // accumulate the stored transforms into an explicit orthogonal matrix
    for i in 0..(n - 1) {
        v[[n - 1, i]] = v[[i, i]];
        v[[i, i]] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for (k, dk) in d.iter_mut().enumerate().take(i + 1) {
                *dk = v[[k, i + 1]] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[[k, i + 1]] * v[[k, j]];
                }
                for (k, dk) in d.iter().enumerate().take(i + 1) {
                    v[[k, j]] -= g * dk;
                }
            }
        }
        for k in 0..=i {
            v[[k, i + 1]] = 0.0;
        }
    }
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = v[[n - 1, j]];
        v[[n - 1, j]] = 0.0;
    }
    v[[n - 1, n - 1]] = 1.0;
    e[0] = 0.0;
}

/// Implicit-shift QL on a symmetric tridiagonal matrix, rotating the columns
/// of `v` along. Errors when an eigenvalue fails to deflate within
/// [`MAX_QL_SWEEPS`] sweeps.
fn ql_implicit_shift(v: &mut Array2<f64>, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());

        let mut m = l;
        while m < n {
            if e[m].abs() <= tst1 * f64::EPSILON {
                break;
            }
            m += 1;
        }
        if m == n {
            m = n - 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_SWEEPS {
                    return Err(Error::NoConvergence {
                        index: l,
                        iters: MAX_QL_SWEEPS,
                    });
                }

                // Wilkinson-style shift from the leading 2x2
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                // implicit QL sweep back toward l
                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..n {
                        h = v[[k, i + 1]];
                        v[[k, i + 1]] = s * v[[k, i]] + c * h;
                        v[[k, i]] = c * v[[k, i]] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= tst1 * f64::EPSILON {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

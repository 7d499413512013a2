//! Graph Fourier filtering.
//!
//! With `M = U diag(lambda) U^T` a normalized operator, a signal `x` filters
//! as `U G U^T x` where `G = diag(g(lambda_i))`: transform into the
//! eigenbasis, scale each frequency, transform back. A graph convolution
//! layer applies the response `g(lambda) = 1 - lambda`, which is exactly
//! multiplication by `I - L`, so it passes low frequencies and flips the
//! sign of components above 1.

use ndarray::{Array1, ArrayView1};

use crate::error::{Error, Result};
use crate::spectral::Spectrum;

/// Applies `U diag(coeffs) U^T x`. Needs a spectrum with eigenvectors;
/// `coeffs[i]` scales the component along eigenvector `i`.
pub fn graph_filter(sp: &Spectrum, coeffs: &[f64], x: ArrayView1<'_, f64>) -> Result<Array1<f64>> {
    let u = sp.vectors()?;
    let n = sp.n();
    if coeffs.len() != n {
        return Err(Error::LengthMismatch {
            what: "filter coefficients",
            expected: n,
            got: coeffs.len(),
        });
    }
    if x.len() != n {
        return Err(Error::LengthMismatch {
            what: "signal",
            expected: n,
            got: x.len(),
        });
    }
    let mut hat = u.t().dot(&x);
    for (h, &c) in hat.iter_mut().zip(coeffs) {
        *h *= c;
    }
    Ok(u.dot(&hat))
}

/// The convolution response `1 - lambda` for every eigenvalue.
pub fn gcn_filter_response(sp: &Spectrum) -> Vec<f64> {
    sp.eigenvalues.iter().map(|&l| 1.0 - l).collect()
}

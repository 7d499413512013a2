//! Spectra of normalized graph operators and executable spectral checks.
//!
//! The [`Spectrum`] type couples ascending eigenvalues (optionally with
//! eigenvectors) to the operator they came from: the normalized Laplacian
//! family, whose eigenvalues live in `[0, 2]`, or the normalized adjacency
//! family, whose eigenvalues live in `[-1, 1]`, each under a rewiring
//! configuration `(alpha, gamma)`.

pub mod eigen;
pub mod filter;
pub mod ops;
pub mod stats;
pub mod verify;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rewire::RewireConfig;

pub use eigen::{eigendecompose, eigendecompose_capped, DEFAULT_DIM_CAP};

/// Which normalized operator a spectrum describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorSource {
    NormalizedLaplacian,
    NormalizedAdjacency,
}

/// Eigenvalues (ascending) of a normalized operator, tagged with the
/// operator family and the rewiring strengths used to build it.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvector columns matching `eigenvalues`, if requested.
    pub eigenvectors: Option<Array2<f64>>,
    pub source: OperatorSource,
    pub alpha: f64,
    pub gamma: f64,
}

impl Spectrum {
    /// Spectrum of the normalized Laplacian of `rewire(g, cfg)`.
    pub fn laplacian(g: &Graph, cfg: &RewireConfig, want_vectors: bool) -> Result<Self> {
        Self::laplacian_capped(g, cfg, want_vectors, DEFAULT_DIM_CAP)
    }

    pub fn laplacian_capped(
        g: &Graph,
        cfg: &RewireConfig,
        want_vectors: bool,
        cap: usize,
    ) -> Result<Self> {
        let m = ops::normalized_laplacian_rewired(g, cfg)?;
        let (eigenvalues, eigenvectors) = eigendecompose_capped(m.view(), want_vectors, cap)?;
        Ok(Spectrum {
            eigenvalues,
            eigenvectors,
            source: OperatorSource::NormalizedLaplacian,
            alpha: cfg.alpha,
            gamma: cfg.gamma,
        })
    }

    /// Spectrum of the normalized adjacency of `rewire(g, cfg)`.
    pub fn adjacency(g: &Graph, cfg: &RewireConfig, want_vectors: bool) -> Result<Self> {
        let m = ops::normalized_adjacency_rewired(g, cfg)?;
        let (eigenvalues, eigenvectors) = eigendecompose(m.view(), want_vectors)?;
        Ok(Spectrum {
            eigenvalues,
            eigenvectors,
            source: OperatorSource::NormalizedAdjacency,
            alpha: cfg.alpha,
            gamma: cfg.gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Number of eigenvalues with `|lambda| <= tol`.
    pub fn zero_multiplicity(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&x| x.abs() <= tol).count()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    /// Eigenvectors or [`Error::MissingVectors`].
    pub fn vectors(&self) -> Result<&Array2<f64>> {
        self.eigenvectors.as_ref().ok_or(Error::MissingVectors)
    }

    /// The serialization form: `{source, alpha, gamma, eigenvalues}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "eigenvalues": self.eigenvalues,
        })
    }
}

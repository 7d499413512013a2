//! Error type shared across the crate.
//!
//! Errors fall into two families that the CLI maps to exit codes:
//! validation problems (bad input, bad configuration, parse failures) exit
//! with 2, numerical failures (non-convergence, NaN/divergence during
//! training) exit with 3.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed line in an edge list or CSV input. Line numbers are 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("negative weight {weight} on edge ({u}, {v}); weights must be nonnegative")]
    NegativeWeight { u: usize, v: usize, weight: f64 },

    #[error("{name} must be nonnegative, got {value}")]
    NegativeParameter { name: &'static str, value: f64 },

    #[error("node {0} has degree zero; add self-loops (alpha > 0) before normalizing")]
    ZeroDegree(usize),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {diff:e} exceeds {tol:e}")]
    NotSymmetric { i: usize, j: usize, diff: f64, tol: f64 },

    #[error("matrix has a non-finite entry at [{i}][{j}]")]
    NonFiniteEntry { i: usize, j: usize },

    #[error("matrix dimension {dim} exceeds the dense eigendecomposition cap {cap}; use a smaller graph")]
    DimensionCap { dim: usize, cap: usize },

    /// Implicit-shift QL failed to converge for one eigenvalue.
    #[error("eigenvalue iteration failed to converge at index {index} after {iters} sweeps")]
    NoConvergence { index: usize, iters: usize },

    #[error("graph is not regular: degrees range from {min} to {max}")]
    NotRegular { min: f64, max: f64 },

    #[error("spectrum carries no eigenvectors; recompute with want_vectors = true")]
    MissingVectors,

    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{name} must lie in [0, 1], got {value}")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Split resampling could not place every class in the training set.
    #[error("could not produce a training split containing all {classes} classes after {tries} tries")]
    ClassMissing { classes: usize, tries: usize },

    #[error("metric requires both classes present, got a single class")]
    SingleClass,

    #[error("trend classification needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("loss became non-finite at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },

    #[error("training diverged at epoch {epoch}: loss {loss:e} exceeds 1e6")]
    Diverged { epoch: usize, loss: f64 },

    /// Failure at one point of a parameter sweep, wrapping the cause.
    #[error("sweep point k={k}: {source}")]
    Sweep {
        k: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code the CLI uses for this error: 3 for numerical failures,
    /// 2 for everything else (validation, parse, I/O).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence { .. }
            | Error::NonFiniteLoss { .. }
            | Error::Diverged { .. } => 3,
            Error::Sweep { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_validation_from_numerical() {
        assert_eq!(
            Error::Parse {
                line: 3,
                message: "x".into()
            }
            .exit_code(),
            2
        );
        assert_eq!(Error::ZeroDegree(0).exit_code(), 2);
        assert_eq!(
            Error::NoConvergence {
                index: 1,
                iters: 30
            }
            .exit_code(),
            3
        );
        assert_eq!(Error::NonFiniteLoss { epoch: 7 }.exit_code(), 3);
        assert_eq!(
            Error::Diverged {
                epoch: 1,
                loss: 1e9
            }
            .exit_code(),
            3
        );
        // Sweep wrapping preserves the underlying code.
        let wrapped = Error::Sweep {
            k: 2,
            source: Box::new(Error::Diverged {
                epoch: 1,
                loss: 1e9,
            }),
        };
        assert_eq!(wrapped.exit_code(), 3);
        let wrapped = Error::Sweep {
            k: 2,
            source: Box::new(Error::ZeroDegree(0)),
        };
        assert_eq!(wrapped.exit_code(), 2);
    }

    #[test]
    fn messages_name_the_offending_node() {
        let e = Error::ZeroDegree(4);
        assert!(e.to_string().contains("node 4"));
        let e = Error::Parse {
            line: 12,
            message: "expected 2 or 3 fields".into(),
        };
        assert!(e.to_string().starts_with("line 12:"));
    }
}

//! Feature and label ingestion plus a synthetic feature generator.
//!
//! File formats are deliberately minimal: features are one row of
//! comma-separated reals per node, labels one nonnegative integer per line.
//! Unquoted numeric CSV needs no escaping rules, so parsing is done by hand
//! to keep 1-based line numbers in every error.

use std::io::BufRead;
use std::path::Path;

use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Reads an `n x d` feature matrix from comma-separated lines.
///
/// Every row must have the same number of fields; blank lines and lines
/// starting with `#` are skipped.
pub fn read_features<R: BufRead>(reader: R) -> Result<Array2<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row: Vec<f64> = trimmed
            .split(',')
            .map(|f| {
                f.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("expected a real number, got {:?}", f.trim()),
                })
            })
            .collect::<Result<_>>()?;
        if let Some(v) = row.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line: lineno,
                message: format!("non-finite feature value {v}"),
            });
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {w} fields, got {}", row.len()),
                });
            }
            _ => {}
        }
        rows.push(row);
    }
    let d = width.unwrap_or(0);
    let n = rows.len();
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    Array2::from_shape_vec((n, d), flat).map_err(|e| Error::InvalidConfig(e.to_string()))
}

/// Reads one class id per line.
pub fn read_labels<R: BufRead>(reader: R) -> Result<Vec<usize>> {
    let mut labels = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let label = trimmed.parse::<usize>().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("expected a nonnegative integer label, got {trimmed:?}"),
        })?;
        labels.push(label);
    }
    Ok(labels)
}

pub fn read_features_path(path: &Path) -> Result<Array2<f64>> {
    read_features(std::io::BufReader::new(std::fs::File::open(path)?))
}

pub fn read_labels_path(path: &Path) -> Result<Vec<usize>> {
    read_labels(std::io::BufReader::new(std::fs::File::open(path)?))
}

/// Writes features in the format [`read_features`] accepts.
pub fn write_features<W: std::io::Write>(mut out: W, x: &Array2<f64>) -> std::io::Result<()> {
    for row in x.rows() {
        let fields: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Gaussian class blobs: node `i` gets `separation * e_{y_i mod d}` plus
/// unit normal noise per coordinate.
///
/// Separation around 1 makes the classes overlap enough that features
/// alone are a weak signal and neighborhood aggregation pays off.
pub fn synthetic_features(labels: &[usize], d: usize, separation: f64, seed: u64) -> Array2<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = labels.len();
    let mut x = Array2::zeros((n, d));
    for i in 0..n {
        for j in 0..d {
            let noise: f64 = StandardNormal.sample(&mut rng);
            let mean = if labels[i] % d == j { separation } else { 0.0 };
            x[[i, j]] = mean + noise;
        }
    }
    x
}

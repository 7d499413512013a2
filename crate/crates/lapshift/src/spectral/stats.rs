//! Frequency statistics and histograms for Laplacian spectra.
//!
//! Eigenvalues below 1 are "lower frequencies", eigenvalues at or above 1
//! "higher frequencies"; their balance (and the number of zeros) is the
//! shape signature the trend categories reason about. Histograms bin the
//! `[0, 2]` range uniformly, with the value 2 landing in the last bin.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{OperatorSource, Spectrum};

pub const DEFAULT_BINS: usize = 20;
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Lower/higher/zero counts plus a uniform histogram over `[0, 2]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumStats {
    pub n: usize,
    /// Eigenvalues strictly below 1.
    pub lower_count: usize,
    /// Eigenvalues at or above 1.
    pub higher_count: usize,
    /// Eigenvalues with absolute value at most `zero_tol`.
    pub zero_count: usize,
    pub zero_tol: f64,
    pub bins: Vec<HistogramBin>,
}

/// Computes [`SpectrumStats`] for a Laplacian-family spectrum.
///
/// Eigenvalues are clamped into `[0, 2]` before binning, absorbing the
/// `1e-8`-scale numerical slack the spectrum invariants allow.
pub fn spectrum_stats(sp: &Spectrum, bins: usize, zero_tol: f64) -> Result<SpectrumStats> {
    if sp.source != OperatorSource::NormalizedLaplacian {
        return Err(Error::InvalidConfig(
            "spectrum statistics expect a normalized-Laplacian spectrum".into(),
        ));
    }
    if bins == 0 {
        return Err(Error::InvalidConfig("bin count must be positive".into()));
    }
    let width = 2.0 / bins as f64;
    let mut hist = vec![0usize; bins];
    let mut lower = 0;
    let mut higher = 0;
    let mut zero = 0;
    for &x in &sp.eigenvalues {
        if x < 1.0 {
            lower += 1;
        } else {
            higher += 1;
        }
        if x.abs() <= zero_tol {
            zero += 1;
        }
        let clamped = x.clamp(0.0, 2.0);
        let idx = ((clamped / width) as usize).min(bins - 1);
        hist[idx] += 1;
    }
    Ok(SpectrumStats {
        n: sp.eigenvalues.len(),
        lower_count: lower,
        higher_count: higher,
        zero_count: zero,
        zero_tol,
        bins: hist
            .into_iter()
            .enumerate()
            .map(|(i, count)| HistogramBin {
                lo: i as f64 * width,
                hi: (i + 1) as f64 * width,
                count,
            })
            .collect(),
    })
}

/// Histogram CSV: header `bin_lo,bin_hi,count`, one row per bin.
pub fn write_histogram_csv<W: std::io::Write>(stats: &SpectrumStats, mut out: W) -> Result<()> {
    writeln!(out, "bin_lo,bin_hi,count")?;
    for b in &stats.bins {
        writeln!(out, "{},{},{}", b.lo, b.hi, b.count)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::rewire::RewireConfig;

    fn k2_spectrum(alpha: f64) -> Spectrum {
        let g = Graph::from_pairs(2, [(0, 1)]).unwrap();
        Spectrum::laplacian(&g, &RewireConfig::self_loops(alpha).unwrap(), false).unwrap()
    }

    #[test]
    fn k2_counts() {
        // spectrum {0, 1}: one lower, one higher, one zero
        let s = spectrum_stats(&k2_spectrum(1.0), DEFAULT_BINS, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!((s.lower_count, s.higher_count, s.zero_count), (1, 1, 1));

        // spectrum {0, 2/3}: both lower
        let s = spectrum_stats(&k2_spectrum(2.0), DEFAULT_BINS, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!((s.lower_count, s.higher_count), (2, 0));
    }

    #[test]
    fn counts_partition_the_spectrum() {
        let g = Graph::from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let sp = Spectrum::laplacian(&g, &RewireConfig::self_loops(1.0).unwrap(), false).unwrap();
        let s = spectrum_stats(&sp, 7, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(s.lower_count + s.higher_count, s.n);
        assert_eq!(s.bins.iter().map(|b| b.count).sum::<usize>(), s.n);
    }

    #[test]
    fn disconnected_components_count_as_zeros() {
        let g = Graph::from_pairs(4, [(0, 1), (2, 3)]).unwrap();
        let sp = Spectrum::laplacian(&g, &RewireConfig::self_loops(1.0).unwrap(), false).unwrap();
        let s = spectrum_stats(&sp, DEFAULT_BINS, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(s.zero_count, 2);
    }

    #[test]
    fn top_of_range_lands_in_last_bin() {
        // plain K2 Laplacian has eigenvalue exactly 2
        let g = Graph::from_pairs(2, [(0, 1)]).unwrap();
        let sp = Spectrum::laplacian(&g, &RewireConfig::identity(), false).unwrap();
        let s = spectrum_stats(&sp, 4, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(s.bins[3].count, 1);
        assert_eq!(s.bins[0].count, 1);
    }

    #[test]
    fn zero_bins_is_invalid() {
        assert!(spectrum_stats(&k2_spectrum(1.0), 0, DEFAULT_ZERO_TOL).is_err());
    }

    #[test]
    fn adjacency_spectra_are_rejected() {
        let g = Graph::from_pairs(2, [(0, 1)]).unwrap();
        let sp = Spectrum::adjacency(&g, &RewireConfig::self_loops(1.0).unwrap(), false).unwrap();
        assert!(spectrum_stats(&sp, DEFAULT_BINS, DEFAULT_ZERO_TOL).is_err());
    }

    #[test]
    fn csv_layout() {
        let s = spectrum_stats(&k2_spectrum(1.0), 2, DEFAULT_ZERO_TOL).unwrap();
        let mut buf = Vec::new();
        write_histogram_csv(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "bin_lo,bin_hi,count\n0,1,1\n1,2,1\n");
    }
}

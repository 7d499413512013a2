//! Classification metrics: masked accuracy and ROC-AUC.

use crate::error::{Error, Result};

/// Fraction of masked nodes whose prediction matches the label.
///
/// Errors when the slices disagree in length or the mask selects nothing.
pub fn accuracy(pred: &[usize], truth: &[usize], mask: &[bool]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            what: "predictions",
            expected: truth.len(),
            got: pred.len(),
        });
    }
    if mask.len() != truth.len() {
        return Err(Error::LengthMismatch {
            what: "mask",
            expected: truth.len(),
            got: mask.len(),
        });
    }
    let mut total = 0usize;
    let mut correct = 0usize;
    for i in 0..truth.len() {
        if mask[i] {
            total += 1;
            if pred[i] == truth[i] {
                correct += 1;
            }
        }
    }
    if total == 0 {
        return Err(Error::InvalidConfig(
            "accuracy mask selects no nodes".to_string(),
        ));
    }
    Ok(correct as f64 / total as f64)
}

/// Area under the ROC curve via the rank-sum (Mann-Whitney) identity,
/// with tied scores contributing half.
///
/// `labels[i]` marks the positive class. Errors when only one class is
/// present or lengths disagree.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::LengthMismatch {
            what: "labels",
            expected: scores.len(),
            got: labels.len(),
        });
    }
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::SingleClass);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("finite scores"));

    // Midranks: every member of a tied block gets the block's average rank.
    let mut rank_sum_pos = 0.0f64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // Ranks are 1-based; block spans ranks i+1 ..= j+1.
        let midrank = (i + j + 2) as f64 / 2.0;
        for &idx in &order[i..=j] {
            if labels[idx] {
                rank_sum_pos += midrank;
            }
        }
        i = j + 1;
    }

    let np = positives as f64;
    let nn = negatives as f64;
    let u = rank_sum_pos - np * (np + 1.0) / 2.0;
    Ok(u / (np * nn))
}

use crate::data::Label;
use crate::error::{Error, Result};

/// Tie-aware ROC-AUC via the rank (Mann-Whitney) formulation: the
/// probability that a random outlier scores above a random target point,
/// counting ties as one half. Higher scores must mean more outlier-like.
pub fn roc_auc(scores: &[f64], labels: &[Label]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: scores.len(),
            right: labels.len(),
        });
    }
    if !scores.iter().all(|s| s.is_finite()) {
        return Err(Error::NonFinite { context: "scores" });
    }
    let n_outliers = labels.iter().filter(|&&l| l == Label::Outlier).count();
    let n_targets = labels.len() - n_outliers;
    if n_outliers == 0 || n_targets == 0 {
        return Err(Error::SingleClass);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&a, &b| scores[a].total_cmp(&scores[b]));

    // Average ranks over tied groups; sum the outlier ranks.
    let mut outlier_rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        // 1-based ranks i+1 ..= j share the average (i + 1 + j) / 2.
        let rank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            if labels[idx] == Label::Outlier {
                outlier_rank_sum += rank;
            }
        }
        i = j;
    }

    let n_o = n_outliers as f64;
    let u = outlier_rank_sum - n_o * (n_o + 1.0) / 2.0;
    Ok(u / (n_o * n_targets as f64))
}

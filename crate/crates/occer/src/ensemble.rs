//! The per-feature regression ensemble. Training fits one regressor per
//! feature, each predicting that feature from all the others on z-scored
//! data; scoring averages the absolute prediction errors of the active
//! models. Models can be restricted to the most accurate subset, ranked by
//! training RMSE.

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label, NormalizationParams};
use crate::error::{Error, Result};
use crate::regression::{FittedRegressor, RegressorSpec};

pub const OCCER_MODEL_VERSION: u32 = 1;

fn default_version() -> u32 {
    OCCER_MODEL_VERSION
}

/// One fitted regression model per feature, together with the shared
/// normalization statistics and the currently active model subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OccerModel {
    #[serde(default = "default_version")]
    pub version: u32,
    pub normalizer: NormalizationParams,
    pub spec: RegressorSpec,
    /// `regressors[i]` predicts feature `i` from the other `m - 1` features.
    pub regressors: Vec<FittedRegressor>,
    pub training_rmses: Vec<f64>,
    /// Strictly increasing, non-empty subset of `0..m`.
    pub active_indices: Vec<usize>,
}

impl OccerModel {
    /// Trains the ensemble on target-class rows. Labelled outlier rows are
    /// rejected; filtering is the caller's responsibility. For forests,
    /// regressor `i` is seeded with `spec.seed + i` so the per-feature
    /// models are diverse yet reproducible.
    pub fn fit(train: &Dataset, spec: &RegressorSpec) -> Result<Self> {
        spec.validate()?;
        if let Some(labels) = train.labels() {
            if labels.contains(&Label::Outlier) {
                return Err(Error::OutlierRowsInTraining);
            }
        }
        let normalizer = NormalizationParams::fit(train)?;
        let normalized = normalizer.apply(train)?;
        let m = train.n_features();

        let mut regressors = Vec::with_capacity(m);
        let mut training_rmses = Vec::with_capacity(m);
        for i in 0..m {
            let inputs = normalized.features().drop_column(i);
            let target = normalized.features().column(i);
            let mut model_spec = spec.clone();
            model_spec.seed = spec.seed.wrapping_add(i as u64);
            let regressor = FittedRegressor::fit(&model_spec, &inputs, &target)?;
            training_rmses.push(regressor.training_rmse(&inputs, &target)?);
            regressors.push(regressor);
        }

        Ok(Self {
            version: OCCER_MODEL_VERSION,
            normalizer,
            spec: spec.clone(),
            regressors,
            training_rmses,
            active_indices: (0..m).collect(),
        })
    }

    pub fn n_features(&self) -> usize {
        self.regressors.len()
    }

    /// Mean absolute prediction error of the active models on the z-scored
    /// point: `mean_i |f_i(point without i) - point_i|`.
    pub fn score_point(&self, point: &[f64]) -> Result<f64> {
        if !point.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "score input",
            });
        }
        let z = self.normalizer.apply_row(point)?;
        let mut sum = 0.0;
        let mut inputs = Vec::with_capacity(z.len() - 1);
        for &i in &self.active_indices {
            inputs.clear();
            inputs.extend(
                z.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, &v)| v),
            );
            let predicted = self.regressors[i].predict_row(&inputs)?;
            sum += (predicted - z[i]).abs();
        }
        Ok(sum / self.active_indices.len() as f64)
    }

    pub fn score_dataset(&self, data: &Dataset) -> Result<Vec<f64>> {
        if data.n_features() != self.n_features() {
            return Err(Error::ColumnMismatch {
                expected: self.n_features(),
                got: data.n_features(),
            });
        }
        data.features()
            .rows()
            .map(|row| self.score_point(row))
            .collect()
    }

    /// Restricts scoring to the `max(1, floor(keep_fraction * m))` models
    /// with the lowest training RMSE, ties broken toward the lower feature
    /// index. Returns a new view; regressors and RMSEs are kept, so pruning
    /// is reversible by re-pruning with 1.0.
    pub fn prune(&self, keep_fraction: f64) -> Result<Self> {
        if !(keep_fraction > 0.0 && keep_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "keep_fraction must be in (0, 1], got {keep_fraction}"
            )));
        }
        let m = self.n_features();
        let k = ((keep_fraction * m as f64).floor() as usize).max(1);
        let mut ranked: Vec<usize> = (0..m).collect();
        ranked.sort_by(|&a, &b| {
            self.training_rmses[a]
                .total_cmp(&self.training_rmses[b])
                .then(a.cmp(&b))
        });
        let mut active: Vec<usize> = ranked.into_iter().take(k).collect();
        active.sort_unstable();
        Ok(Self {
            active_indices: active,
            ..self.clone()
        })
    }
}

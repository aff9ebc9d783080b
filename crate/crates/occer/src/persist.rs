//! A versioned JSON envelope for persisting fitted models, together with
//! the scores of the rows they were trained on (used for quantile
//! thresholding) and an opaque snapshot of the configuration that produced
//! them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::baselines::{IsolationForestModel, LofModel};
use crate::data::Dataset;
use crate::ensemble::OccerModel;
use crate::error::{Error, Result};

pub const MODEL_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "model")]
pub enum PersistedModel {
    Occer(OccerModel),
    Lof(LofModel),
    Iforest(IsolationForestModel),
}

impl PersistedModel {
    pub fn kind(&self) -> &'static str {
        match self {
            PersistedModel::Occer(_) => "occer",
            PersistedModel::Lof(_) => "lof",
            PersistedModel::Iforest(_) => "iforest",
        }
    }

    pub fn score_dataset(&self, data: &Dataset) -> Result<Vec<f64>> {
        match self {
            PersistedModel::Occer(m) => m.score_dataset(data),
            PersistedModel::Lof(m) => m.score_dataset(data),
            PersistedModel::Iforest(m) => m.score_dataset(data),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub version: u32,
    #[serde(flatten)]
    pub model: PersistedModel,
    /// Scores of the training rows under the fitted model.
    pub training_scores: Vec<f64>,
    /// Configuration snapshot, opaque to the library.
    pub config: serde_json::Value,
}

impl ModelFile {
    pub fn new(
        model: PersistedModel,
        training_scores: Vec<f64>,
        config: serde_json::Value,
    ) -> Self {
        Self {
            version: MODEL_FILE_VERSION,
            model,
            training_scores,
            config,
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let contents = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let file: ModelFile = serde_json::from_str(&contents)?;
        if file.version != MODEL_FILE_VERSION {
            return Err(Error::ModelFormat(format!(
                "unsupported model file version {} (expected {})",
                file.version, MODEL_FILE_VERSION
            )));
        }
        Ok(file)
    }

    /// Linearly interpolated empirical quantile of the stored training
    /// scores, for `q` in [0, 1].
    pub fn training_score_quantile(&self, q: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::InvalidParameter(format!(
                "quantile must be in [0, 1], got {q}"
            )));
        }
        if self.training_scores.is_empty() {
            return Err(Error::TooFewRows { need: 1, found: 0 });
        }
        let mut sorted = self.training_scores.clone();
        sorted.sort_by(f64::total_cmp);
        let pos = q * (sorted.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        let frac = pos - lo as f64;
        Ok(sorted[lo] + (sorted[hi] - sorted[lo]) * frac)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::regression::RegressorSpec;

    fn train_data() -> Dataset {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|_| {
                let t = rng.gen_range(-1.0..1.0);
                vec![t, 2.0 * t + rng.gen_range(-0.1..0.1), -t]
            })
            .collect();
        Dataset::from_features(Matrix::from_rows(&rows).unwrap(), None).unwrap()
    }

    #[test]
    fn save_load_round_trip_reproduces_scores() {
        let train = train_data();
        let model = OccerModel::fit(&train, &RegressorSpec::ridge()).unwrap();
        let scores = model.score_dataset(&train).unwrap();
        let file = ModelFile::new(
            PersistedModel::Occer(model),
            scores.clone(),
            serde_json::json!({"method": "occer-ridge"}),
        );

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        file.save(&path).unwrap();
        let loaded = ModelFile::load(&path).unwrap();
        assert_eq!(file, loaded);
        assert_eq!(loaded.model.score_dataset(&train).unwrap(), scores);
    }

    #[test]
    fn version_mismatch_rejected() {
        let train = train_data();
        let model = OccerModel::fit(&train, &RegressorSpec::ridge()).unwrap();
        let mut file = ModelFile::new(
            PersistedModel::Occer(model),
            vec![],
            serde_json::Value::Null,
        );
        file.version = 99;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        assert!(matches!(ModelFile::load(&path), Err(Error::ModelFormat(_))));
    }

    #[test]
    fn quantile_interpolation() {
        let file = ModelFile::new(
            PersistedModel::Occer(OccerModel::fit(&train_data(), &RegressorSpec::ridge()).unwrap()),
            vec![3.0, 1.0, 2.0, 4.0],
            serde_json::Value::Null,
        );
        assert_eq!(file.training_score_quantile(0.0).unwrap(), 1.0);
        assert_eq!(file.training_score_quantile(1.0).unwrap(), 4.0);
        assert_eq!(file.training_score_quantile(0.5).unwrap(), 2.5);
        assert!(file.training_score_quantile(1.5).is_err());
    }
}

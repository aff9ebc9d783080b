use serde::{Deserialize, Serialize};

use crate::baselines::{IsolationForestModel, LofModel};
use crate::data::Dataset;
use crate::ensemble::OccerModel;
use crate::error::Result;
use crate::regression::{RegressorKind, RegressorSpec};

/// A one-class method that can be fitted on target-class rows inside the
/// cross-validation loop.
pub trait Method {
    fn name(&self) -> String;
    fn fit(&self, train: &Dataset) -> Result<Box<dyn Scorer>>;
    /// Snapshot embedded in evaluation reports.
    fn config(&self) -> serde_json::Value {
        serde_json::Value::Null
    }
}

/// A fitted model that assigns outlier scores to rows (higher = more
/// outlier-like).
pub trait Scorer {
    fn score(&self, data: &Dataset) -> Result<Vec<f64>>;
}

impl Scorer for OccerModel {
    fn score(&self, data: &Dataset) -> Result<Vec<f64>> {
        self.score_dataset(data)
    }
}

impl Scorer for LofModel {
    fn score(&self, data: &Dataset) -> Result<Vec<f64>> {
        self.score_dataset(data)
    }
}

impl Scorer for IsolationForestModel {
    fn score(&self, data: &Dataset) -> Result<Vec<f64>> {
        self.score_dataset(data)
    }
}

/// Descriptor for the built-in methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum MethodSpec {
    Occer {
        spec: RegressorSpec,
        keep_fraction: f64,
    },
    Lof {
        k: usize,
    },
    IsolationForest {
        n_trees: usize,
        subsample: usize,
        seed: u64,
    },
}

impl MethodSpec {
    pub fn occer(spec: RegressorSpec) -> Self {
        MethodSpec::Occer {
            spec,
            keep_fraction: 1.0,
        }
    }

    pub fn lof() -> Self {
        MethodSpec::Lof {
            k: LofModel::DEFAULT_K,
        }
    }

    pub fn isolation_forest(seed: u64) -> Self {
        MethodSpec::IsolationForest {
            n_trees: IsolationForestModel::DEFAULT_N_TREES,
            subsample: IsolationForestModel::DEFAULT_SUBSAMPLE,
            seed,
        }
    }
}

impl Method for MethodSpec {
    fn name(&self) -> String {
        match self {
            MethodSpec::Occer {
                spec,
                keep_fraction,
            } => {
                let base = match spec.kind {
                    RegressorKind::Ridge => "occer-ridge",
                    RegressorKind::Lasso => "occer-lasso",
                    RegressorKind::ElasticNet => "occer-elastic",
                    RegressorKind::RandomForest => "occer-rf",
                };
                if *keep_fraction < 1.0 {
                    format!("{base}@{keep_fraction}")
                } else {
                    base.to_string()
                }
            }
            MethodSpec::Lof { .. } => "lof".to_string(),
            MethodSpec::IsolationForest { .. } => "iforest".to_string(),
        }
    }

    fn fit(&self, train: &Dataset) -> Result<Box<dyn Scorer>> {
        Ok(match self {
            MethodSpec::Occer {
                spec,
                keep_fraction,
            } => Box::new(OccerModel::fit(train, spec)?.prune(*keep_fraction)?),
            MethodSpec::Lof { k } => Box::new(LofModel::fit(train, *k)?),
            MethodSpec::IsolationForest {
                n_trees,
                subsample,
                seed,
            } => Box::new(IsolationForestModel::fit(
                train, *n_trees, *subsample, *seed,
            )?),
        })
    }

    fn config(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap_or(serde_json::Value::Null)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names() {
        assert_eq!(
            MethodSpec::occer(RegressorSpec::ridge()).name(),
            "occer-ridge"
        );
        assert_eq!(
            MethodSpec::occer(RegressorSpec::random_forest()).name(),
            "occer-rf"
        );
        let pruned = MethodSpec::Occer {
            spec: RegressorSpec::lasso(),
            keep_fraction: 0.5,
        };
        assert_eq!(pruned.name(), "occer-lasso@0.5");
        assert_eq!(MethodSpec::lof().name(), "lof");
        assert_eq!(MethodSpec::isolation_forest(0).name(), "iforest");
    }

    #[test]
    fn method_spec_round_trips() {
        let m = MethodSpec::Occer {
            spec: RegressorSpec::elastic_net(),
            keep_fraction: 0.75,
        };
        let json = serde_json::to_string(&m).unwrap();
        let back: MethodSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
    }
}

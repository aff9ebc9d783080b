//! Self-contained single-output regressors: ridge (closed form), lasso and
//! elastic net (cyclic coordinate descent) and bagged CART regression trees.
//! These are the base models the per-feature ensemble is built from.

mod forest;
mod linear;

use serde::{Deserialize, Serialize};

pub use forest::{Tree, TreeNode};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegressorKind {
    Ridge,
    Lasso,
    ElasticNet,
    RandomForest,
}

impl RegressorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegressorKind::Ridge => "ridge",
            RegressorKind::Lasso => "lasso",
            RegressorKind::ElasticNet => "elastic_net",
            RegressorKind::RandomForest => "random_forest",
        }
    }
}

/// Number of candidate features considered at each tree split.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaxFeatures {
    All,
    Count(usize),
    Fraction(f64),
}

impl MaxFeatures {
    /// Resolves to a concrete count in `1..=p`.
    pub fn resolve(&self, p: usize) -> usize {
        match *self {
            MaxFeatures::All => p,
            MaxFeatures::Count(c) => c.min(p),
            MaxFeatures::Fraction(f) => ((f * p as f64).floor() as usize).clamp(1, p),
        }
    }
}

/// Hyperparameters for one regressor. Fields that do not apply to `kind`
/// are ignored by fitting but kept, so specs round-trip through
/// serialization unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressorSpec {
    pub kind: RegressorKind,
    /// Regularization strength for ridge / lasso / elastic net.
    pub alpha: f64,
    /// Elastic-net mix: 1 is pure L1, 0 is pure L2.
    pub l1_ratio: f64,
    pub n_trees: usize,
    pub max_features: MaxFeatures,
    pub min_samples_leaf: usize,
    pub max_depth: Option<usize>,
    pub cd_tolerance: f64,
    pub cd_max_iter: usize,
    pub seed: u64,
}

impl RegressorSpec {
    pub fn new(kind: RegressorKind) -> Self {
        Self {
            kind,
            alpha: 1.0,
            l1_ratio: 0.5,
            n_trees: 100,
            max_features: MaxFeatures::All,
            min_samples_leaf: 1,
            max_depth: None,
            cd_tolerance: 1e-4,
            cd_max_iter: 1000,
            seed: 0,
        }
    }

    pub fn ridge() -> Self {
        Self::new(RegressorKind::Ridge)
    }

    pub fn lasso() -> Self {
        Self::new(RegressorKind::Lasso)
    }

    pub fn elastic_net() -> Self {
        Self::new(RegressorKind::ElasticNet)
    }

    pub fn random_forest() -> Self {
        Self::new(RegressorKind::RandomForest)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite and non-negative, got {}",
                self.alpha
            )));
        }
        if !(0.0..=1.0).contains(&self.l1_ratio) {
            return Err(Error::InvalidParameter(format!(
                "l1_ratio must be in [0, 1], got {}",
                self.l1_ratio
            )));
        }
        if self.n_trees < 1 {
            return Err(Error::InvalidParameter("n_trees must be >= 1".into()));
        }
        if self.min_samples_leaf < 1 {
            return Err(Error::InvalidParameter(
                "min_samples_leaf must be >= 1".into(),
            ));
        }
        match self.max_features {
            MaxFeatures::Count(c) if c < 1 => {
                return Err(Error::InvalidParameter(
                    "max_features count must be >= 1".into(),
                ));
            }
            MaxFeatures::Fraction(f) if !(f > 0.0 && f <= 1.0) => {
                return Err(Error::InvalidParameter(format!(
                    "max_features fraction must be in (0, 1], got {f}"
                )));
            }
            _ => {}
        }
        if !(self.cd_tolerance > 0.0 && self.cd_tolerance.is_finite()) {
            return Err(Error::InvalidParameter(
                "cd_tolerance must be positive".into(),
            ));
        }
        if self.cd_max_iter < 1 {
            return Err(Error::InvalidParameter("cd_max_iter must be >= 1".into()));
        }
        Ok(())
    }
}

/// Kind-dependent fitted parameters.
///
/// JSON layout: `{"linear": {"coefficients": [...], "intercept": b}}` or
/// `{"forest": {"trees": [{"nodes": [...]}, ...]}}`, where each tree node
/// is `{"split": {"feature", "threshold", "left", "right"}}` or
/// `{"leaf": {"value"}}` and children index into the node array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelParams {
    Linear {
        coefficients: Vec<f64>,
        intercept: f64,
    },
    Forest {
        trees: Vec<Tree>,
    },
}

/// A trained single-output regression model. Serialization round-trips
/// losslessly, so persisted models reproduce scores exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedRegressor {
    pub spec: RegressorSpec,
    pub n_inputs: usize,
    pub params: ModelParams,
}

impl FittedRegressor {
    pub fn fit(spec: &RegressorSpec, x: &Matrix, y: &[f64]) -> Result<Self> {
        Ok(Self::fit_with_trace(spec, x, y)?.0)
    }

    /// Like [`fit`](Self::fit), but also returns the coordinate-descent
    /// objective value after each sweep (empty for non-iterative kinds).
    /// Useful for solver diagnostics.
    pub fn fit_with_trace(spec: &RegressorSpec, x: &Matrix, y: &[f64]) -> Result<(Self, Vec<f64>)> {
        spec.validate()?;
        let n = x.n_rows();
        let p = x.n_cols();
        if n < 2 {
            return Err(Error::TooFewRows { need: 2, found: n });
        }
        if p == 0 {
            return Err(Error::InvalidParameter(
                "design matrix has no columns".into(),
            ));
        }
        if y.len() != n {
            return Err(Error::LengthMismatch {
                left: y.len(),
                right: n,
            });
        }
        if !x.is_finite() || !y.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "regression inputs",
            });
        }

        let (params, trace) = match spec.kind {
            RegressorKind::Ridge => {
                let (coefficients, intercept) = linear::fit_ridge(x, y, spec.alpha)?;
                (
                    ModelParams::Linear {
                        coefficients,
                        intercept,
                    },
                    Vec::new(),
                )
            }
            RegressorKind::Lasso | RegressorKind::ElasticNet => {
                let (l1, l2) = match spec.kind {
                    RegressorKind::Lasso => (spec.alpha, 0.0),
                    _ => (
                        spec.alpha * spec.l1_ratio,
                        spec.alpha * (1.0 - spec.l1_ratio),
                    ),
                };
                let fit =
                    linear::coordinate_descent(x, y, l1, l2, spec.cd_tolerance, spec.cd_max_iter);
                if !fit.coefficients.iter().all(|v| v.is_finite()) || !fit.intercept.is_finite() {
                    return Err(Error::NonFinite {
                        context: "coordinate descent coefficients",
                    });
                }
                (
                    ModelParams::Linear {
                        coefficients: fit.coefficients,
                        intercept: fit.intercept,
                    },
                    fit.objectives,
                )
            }
            RegressorKind::RandomForest => {
                let params = forest::ForestParams {
                    n_trees: spec.n_trees,
                    max_features: spec.max_features.resolve(p),
                    min_samples_leaf: spec.min_samples_leaf,
                    max_depth: spec.max_depth,
                    seed: spec.seed,
                };
                (
                    ModelParams::Forest {
                        trees: forest::fit_forest(&params, x, y),
                    },
                    Vec::new(),
                )
            }
        };

        Ok((
            Self {
                spec: spec.clone(),
                n_inputs: p,
                params,
            },
            trace,
        ))
    }

    pub fn predict_row(&self, row: &[f64]) -> Result<f64> {
        if row.len() != self.n_inputs {
            return Err(Error::ColumnMismatch {
                expected: self.n_inputs,
                got: row.len(),
            });
        }
        Ok(match &self.params {
            ModelParams::Linear {
                coefficients,
                intercept,
            } => {
                coefficients
                    .iter()
                    .zip(row)
                    .map(|(w, v)| w * v)
                    .sum::<f64>()
                    + intercept
            }
            ModelParams::Forest { trees } => {
                trees.iter().map(|t| t.predict_row(row)).sum::<f64>() / trees.len() as f64
            }
        })
    }

    pub fn predict(&self, x: &Matrix) -> Result<Vec<f64>> {
        if x.n_cols() != self.n_inputs {
            return Err(Error::ColumnMismatch {
                expected: self.n_inputs,
                got: x.n_cols(),
            });
        }
        x.rows().map(|row| self.predict_row(row)).collect()
    }

    /// Root-mean-square prediction error on the given data.
    pub fn training_rmse(&self, x: &Matrix, y: &[f64]) -> Result<f64> {
        if x.n_rows() == 0 {
            return Err(Error::TooFewRows { need: 1, found: 0 });
        }
        if y.len() != x.n_rows() {
            return Err(Error::LengthMismatch {
                left: y.len(),
                right: x.n_rows(),
            });
        }
        let preds = self.predict(x)?;
        let mse = preds
            .iter()
            .zip(y)
            .map(|(p, t)| (p - t) * (p - t))
            .sum::<f64>()
            / y.len() as f64;
        Ok(mse.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(n: usize) -> (Matrix, Vec<f64>) {
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * 0.5 - 2.0).collect();
        let y: Vec<f64> = xs.iter().map(|&v| 2.0 * v + 1.0).collect();
        let x = Matrix::from_rows(&xs.iter().map(|&v| vec![v]).collect::<Vec<_>>()).unwrap();
        (x, y)
    }

    fn random_data(n: usize, p: usize, seed: u64) -> (Matrix, Vec<f64>) {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        let w: Vec<f64> = (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let y: Vec<f64> = rows
            .iter()
            .map(|r| {
                r.iter().zip(&w).map(|(v, wj)| v * wj).sum::<f64>() + rng.gen_range(-0.05..0.05)
            })
            .collect();
        (Matrix::from_rows(&rows).unwrap(), y)
    }

    #[test]
    fn ridge_exact_line_and_heldout_prediction() {
        let (x, y) = line(12);
        let mut spec = RegressorSpec::ridge();
        spec.alpha = 0.0;
        let model = FittedRegressor::fit(&spec, &x, &y).unwrap();
        match &model.params {
            ModelParams::Linear {
                coefficients,
                intercept,
            } => {
                assert!((coefficients[0] - 2.0).abs() < 1e-8);
                assert!((intercept - 1.0).abs() < 1e-8);
            }
            _ => panic!("expected linear params"),
        }
        // Held-out points on the same line.
        for v in [10.0, -7.5, 0.123] {
            let pred = model.predict_row(&[v]).unwrap();
            assert!((pred - (2.0 * v + 1.0)).abs() < 1e-8);
        }
    }

    #[test]
    fn linear_predict_direct_substitution() {
        let model = FittedRegressor {
            spec: RegressorSpec::ridge(),
            n_inputs: 1,
            params: ModelParams::Linear {
                coefficients: vec![2.0],
                intercept: 1.0,
            },
        };
        assert_eq!(model.predict_row(&[3.0]).unwrap(), 7.0);
    }

    #[test]
    fn constant_forest_predicts_leaf_mean() {
        let leaf_tree = Tree {
            nodes: vec![TreeNode::Leaf { value: 0.5 }],
        };
        let model = FittedRegressor {
            spec: RegressorSpec::random_forest(),
            n_inputs: 2,
            params: ModelParams::Forest {
                trees: vec![leaf_tree.clone(), leaf_tree.clone(), leaf_tree],
            },
        };
        for row in [[0.0, 0.0], [100.0, -3.0], [-1e6, 1e6]] {
            assert_eq!(model.predict_row(&row).unwrap(), 0.5);
        }
    }

    #[test]
    fn predict_rejects_width_mismatch() {
        let (x, y) = line(5);
        let model = FittedRegressor::fit(&RegressorSpec::ridge(), &x, &y).unwrap();
        assert!(matches!(
            model.predict_row(&[1.0, 2.0]),
            Err(Error::ColumnMismatch { .. })
        ));
        assert!(matches!(
            model.predict(&Matrix::zeros(3, 0)),
            Err(Error::ColumnMismatch { .. })
        ));
        assert!(matches!(
            model.predict(&Matrix::zeros(3, 2)),
            Err(Error::ColumnMismatch { .. })
        ));
    }

    #[test]
    fn fit_rejects_bad_inputs() {
        let (x, y) = line(5);
        assert!(matches!(
            FittedRegressor::fit(&RegressorSpec::ridge(), &x.select_rows(&[0]), &y[..1]),
            Err(Error::TooFewRows { .. })
        ));
        let mut bad = y.clone();
        bad[2] = f64::NAN;
        assert!(matches!(
            FittedRegressor::fit(&RegressorSpec::ridge(), &x, &bad),
            Err(Error::NonFinite { .. })
        ));
        let empty = Matrix::zeros(5, 0);
        assert!(FittedRegressor::fit(&RegressorSpec::ridge(), &empty, &y).is_err());
    }

    #[test]
    fn lasso_full_shrinkage_gives_zero_coefficients() {
        let (x, y) = line(10);
        let mut spec = RegressorSpec::lasso();
        spec.alpha = 1e9;
        let model = FittedRegressor::fit(&spec, &x, &y).unwrap();
        match &model.params {
            ModelParams::Linear {
                coefficients,
                intercept,
            } => {
                assert_eq!(coefficients, &vec![0.0]);
                let mean = y.iter().sum::<f64>() / y.len() as f64;
                assert!((intercept - mean).abs() < 1e-12);
            }
            _ => panic!("expected linear params"),
        }
    }

    #[test]
    fn training_rmse_cases() {
        let (x, y) = line(8);
        let mut spec = RegressorSpec::ridge();
        spec.alpha = 0.0;
        let model = FittedRegressor::fit(&spec, &x, &y).unwrap();
        // Perfect predictions.
        assert!(model.training_rmse(&x, &y).unwrap() < 1e-8);

        // Predictions constantly off by c have RMSE |c|.
        let shifted: Vec<f64> = y.iter().map(|v| v - 3.0).collect();
        let rmse = model.training_rmse(&x, &shifted).unwrap();
        assert!((rmse - 3.0).abs() < 1e-8);

        // Residuals {3, 4}: RMSE = sqrt((9 + 16) / 2) = 5 / sqrt(2),
        // computed independently from the definition.
        let oracle = (25.0_f64 / 2.0).sqrt();
        let two = Matrix::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        let targets = vec![1.0 - 3.0, 3.0 - 4.0]; // model predicts 1 and 3 here
        let rmse = model.training_rmse(&two, &targets).unwrap();
        assert!((rmse - oracle).abs() < 1e-9);

        // Empty input is an error.
        let empty_x = Matrix::zeros(0, 1);
        assert!(model.training_rmse(&empty_x, &[]).is_err());
    }

    #[test]
    fn ridge_path_continuous_in_alpha() {
        let (x, y) = random_data(60, 4, 5);
        let mut spec = RegressorSpec::ridge();
        spec.alpha = 1.0;
        let a = FittedRegressor::fit(&spec, &x, &y).unwrap();
        spec.alpha = 1.0 + 1e-9;
        let b = FittedRegressor::fit(&spec, &x, &y).unwrap();
        match (&a.params, &b.params) {
            (
                ModelParams::Linear {
                    coefficients: ca, ..
                },
                ModelParams::Linear {
                    coefficients: cb, ..
                },
            ) => {
                for (u, v) in ca.iter().zip(cb) {
                    assert!((u - v).abs() < 1e-6);
                }
            }
            _ => panic!("expected linear params"),
        }
    }

    #[test]
    fn cd_objective_monotone_non_increasing() {
        for kind in [RegressorKind::Lasso, RegressorKind::ElasticNet] {
            let (x, y) = random_data(50, 6, 11);
            let mut spec = RegressorSpec::new(kind);
            spec.alpha = 0.05;
            spec.cd_tolerance = 1e-12;
            spec.cd_max_iter = 500;
            let (_, trace) = FittedRegressor::fit_with_trace(&spec, &x, &y).unwrap();
            assert!(trace.len() > 1);
            for pair in trace.windows(2) {
                assert!(
                    pair[1] <= pair[0] + 1e-12,
                    "objective increased: {} -> {}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn elastic_net_matches_lasso_at_l1_ratio_one() {
        let (x, y) = random_data(40, 5, 3);
        let mut lasso = RegressorSpec::lasso();
        lasso.alpha = 0.1;
        let mut en = RegressorSpec::elastic_net();
        en.alpha = 0.1;
        en.l1_ratio = 1.0;
        let a = FittedRegressor::fit(&lasso, &x, &y).unwrap();
        let b = FittedRegressor::fit(&en, &x, &y).unwrap();
        match (&a.params, &b.params) {
            (
                ModelParams::Linear {
                    coefficients: ca, ..
                },
                ModelParams::Linear {
                    coefficients: cb, ..
                },
            ) => {
                for (u, v) in ca.iter().zip(cb) {
                    assert!((u - v).abs() <= lasso.cd_tolerance);
                }
            }
            _ => panic!("expected linear params"),
        }
    }

    #[test]
    fn elastic_net_matches_ridge_at_l1_ratio_zero() {
        // With l1_ratio = 0 the coordinate-descent objective is
        // (1/2n)||r||^2 + (alpha/2)||w||^2, which matches the ridge
        // objective ||r||^2 + (n * alpha)||w||^2 up to the 2n factor.
        let (x, y) = random_data(30, 4, 8);
        let n = x.n_rows() as f64;
        let mut en = RegressorSpec::elastic_net();
        en.alpha = 0.2;
        en.l1_ratio = 0.0;
        en.cd_tolerance = 1e-12;
        en.cd_max_iter = 100_000;
        let mut ridge = RegressorSpec::ridge();
        ridge.alpha = 0.2 * n;
        let a = FittedRegressor::fit(&en, &x, &y).unwrap();
        let b = FittedRegressor::fit(&ridge, &x, &y).unwrap();
        match (&a.params, &b.params) {
            (
                ModelParams::Linear {
                    coefficients: ca,
                    intercept: ia,
                },
                ModelParams::Linear {
                    coefficients: cb,
                    intercept: ib,
                },
            ) => {
                for (u, v) in ca.iter().zip(cb) {
                    assert!((u - v).abs() < 1e-6, "{u} vs {v}");
                }
                assert!((ia - ib).abs() < 1e-6);
            }
            _ => panic!("expected linear params"),
        }
    }

    #[test]
    fn forest_beats_best_linear_fit_on_quadratic() {
        // Oracle: closed-form least squares of y = x^2 sampled on [-1, 1].
        let xs: Vec<f64> = (0..50).map(|i| -1.0 + 2.0 * i as f64 / 49.0).collect();
        let y: Vec<f64> = xs.iter().map(|v| v * v).collect();
        let x_mean = xs.iter().sum::<f64>() / 50.0;
        let y_mean = y.iter().sum::<f64>() / 50.0;
        let sxy: f64 = xs
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - x_mean) * (b - y_mean))
            .sum();
        let sxx: f64 = xs.iter().map(|a| (a - x_mean) * (a - x_mean)).sum();
        let slope = sxy / sxx;
        let intercept = y_mean - slope * x_mean;
        let linear_rmse = (xs
            .iter()
            .zip(&y)
            .map(|(a, b)| {
                let r = slope * a + intercept - b;
                r * r
            })
            .sum::<f64>()
            / 50.0)
            .sqrt();

        let x = Matrix::from_rows(&xs.iter().map(|&v| vec![v]).collect::<Vec<_>>()).unwrap();
        let spec = RegressorSpec::random_forest().with_seed(4);
        let model = FittedRegressor::fit(&spec, &x, &y).unwrap();
        let forest_rmse = model.training_rmse(&x, &y).unwrap();
        assert!(
            forest_rmse < linear_rmse,
            "forest {forest_rmse} not below linear oracle {linear_rmse}"
        );
    }

    #[test]
    fn forest_seed_determinism() {
        let (x, y) = random_data(60, 3, 21);
        let spec = RegressorSpec::random_forest().with_seed(77);
        let a = FittedRegressor::fit(&spec, &x, &y).unwrap();
        let b = FittedRegressor::fit(&spec, &x, &y).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.predict(&x).unwrap(), b.predict(&x).unwrap());
    }

    #[test]
    fn forest_predictions_bounded_by_training_targets() {
        let (x, y) = random_data(80, 2, 31);
        let lo = y.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let spec = RegressorSpec::random_forest().with_seed(2);
        let model = FittedRegressor::fit(&spec, &x, &y).unwrap();
        for probe in [[-5.0, -5.0], [5.0, 5.0], [0.0, 0.0]] {
            let pred = model.predict_row(&probe).unwrap();
            assert!(pred >= lo && pred <= hi);
        }
    }

    #[test]
    fn linear_fit_row_order_invariance() {
        let (x, y) = random_data(25, 3, 13);
        let perm: Vec<usize> = vec![
            24, 3, 17, 8, 0, 11, 20, 5, 14, 22, 1, 9, 18, 6, 13, 2, 21, 10, 19, 4, 12, 23, 7, 16,
            15,
        ];
        let xp = x.select_rows(&perm);
        let yp: Vec<f64> = perm.iter().map(|&i| y[i]).collect();
        for kind in [
            RegressorKind::Ridge,
            RegressorKind::Lasso,
            RegressorKind::ElasticNet,
        ] {
            let mut spec = RegressorSpec::new(kind);
            spec.alpha = if kind == RegressorKind::Ridge {
                0.5
            } else {
                0.01
            };
            spec.cd_tolerance = 1e-10;
            spec.cd_max_iter = 10_000;
            let a = FittedRegressor::fit(&spec, &x, &y).unwrap();
            let b = FittedRegressor::fit(&spec, &xp, &yp).unwrap();
            match (&a.params, &b.params) {
                (
                    ModelParams::Linear {
                        coefficients: ca,
                        intercept: ia,
                    },
                    ModelParams::Linear {
                        coefficients: cb,
                        intercept: ib,
                    },
                ) => {
                    for (u, v) in ca.iter().zip(cb) {
                        assert!((u - v).abs() < 1e-9, "{kind:?}: {u} vs {v}");
                    }
                    assert!((ia - ib).abs() < 1e-9);
                }
                _ => panic!("expected linear params"),
            }
        }
    }

    #[test]
    fn spec_round_trips_through_json() {
        let mut spec = RegressorSpec::elastic_net();
        spec.max_features = MaxFeatures::Fraction(0.5);
        spec.max_depth = Some(7);
        let json = serde_json::to_string(&spec).unwrap();
        let back: RegressorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn spec_validation_rejects_bad_values() {
        let mut spec = RegressorSpec::ridge();
        spec.alpha = -1.0;
        assert!(spec.validate().is_err());

        let mut spec = RegressorSpec::elastic_net();
        spec.l1_ratio = 1.5;
        assert!(spec.validate().is_err());

        let mut spec = RegressorSpec::random_forest();
        spec.n_trees = 0;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn max_features_resolution() {
        assert_eq!(MaxFeatures::All.resolve(7), 7);
        assert_eq!(MaxFeatures::Count(3).resolve(7), 3);
        assert_eq!(MaxFeatures::Count(30).resolve(7), 7);
        assert_eq!(MaxFeatures::Fraction(0.5).resolve(7), 3);
        assert_eq!(MaxFeatures::Fraction(0.01).resolve(7), 1);
        assert_eq!(MaxFeatures::Fraction(1.0).resolve(7), 7);
    }
}

//! One-class classification by ensembles of regression models.
//!
//! An m-feature target-class dataset is turned into m regression problems:
//! model `i` predicts feature `i` from the other `m - 1` features on
//! z-scored data. A test point's outlier score is the mean absolute
//! prediction error across the (active) models, so points that break the
//! feature relationships learned from the target class score high.
//!
//! The crate ships four base regressors (ridge, lasso, elastic net, random
//! forest), local-outlier-factor and isolation-forest baselines, and a
//! stratified 5x2 cross-validation harness reporting tie-aware ROC-AUC.
//!
//! ```
//! use occer::data::Dataset;
//! use occer::ensemble::OccerModel;
//! use occer::matrix::Matrix;
//! use occer::regression::RegressorSpec;
//!
//! let rows: Vec<Vec<f64>> = (0..50)
//!     .map(|i| {
//!         let t = i as f64 / 25.0 - 1.0;
//!         vec![t, 2.0 * t, -t + 1.0]
//!     })
//!     .collect();
//! let train = Dataset::from_features(Matrix::from_rows(&rows)?, None)?;
//! let model = OccerModel::fit(&train, &RegressorSpec::ridge())?;
//!
//! // On-manifold points score low, off-manifold points high.
//! let on = model.score_point(&[0.5, 1.0, 0.5])?;
//! let off = model.score_point(&[0.5, -3.0, 4.0])?;
//! assert!(on < off);
//! # Ok::<(), occer::Error>(())
//! ```

pub mod baselines;
pub mod data;
pub mod ensemble;
mod error;
pub mod eval;
pub mod matrix;
pub mod persist;
pub mod regression;

pub use error::{Error, Result};

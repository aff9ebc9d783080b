//! ROC-AUC computation and the stratified 5x2 cross-validation protocol:
//! models train on the target-class rows of each training fold only and are
//! scored on full test folds.

mod auc;
mod cv;
mod folds;
mod method;

pub use auc::roc_auc;
pub use cv::{folds_csv, run_cv, EvalReport};
pub use folds::{Fold, FoldPlan, CV_REPETITIONS};
pub use method::{Method, MethodSpec, Scorer};

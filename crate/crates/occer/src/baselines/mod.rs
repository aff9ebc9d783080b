//! Reference comparison methods. Both consume the same z-scored data path
//! as the regression ensemble (their own fitted [`NormalizationParams`]
//! from the training rows), so benchmark comparisons are like-for-like.
//!
//! [`NormalizationParams`]: crate::data::NormalizationParams

mod iforest;
mod lof;

pub use iforest::IsolationForestModel;
pub use lof::LofModel;

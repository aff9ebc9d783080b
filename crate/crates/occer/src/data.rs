//! Dataset representation, CSV ingestion and z-score normalization.
//!
//! Training statistics are always learned with [`NormalizationParams::fit`]
//! on training data and applied unchanged to test data, so test points never
//! influence the scaling.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Class tag for a row: the modelled class or everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Target,
    Outlier,
}

/// Row-major feature matrix with optional per-row labels and feature names.
///
/// Invariants enforced at construction: every value is finite, there are at
/// least two feature columns, and label/name lengths match the matrix shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Matrix,
    labels: Option<Vec<Label>>,
    feature_names: Vec<String>,
}

impl Dataset {
    pub fn new(
        features: Matrix,
        labels: Option<Vec<Label>>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if features.n_cols() < 2 {
            return Err(Error::TooFewFeatures {
                found: features.n_cols(),
            });
        }
        if !features.is_finite() {
            return Err(Error::NonFinite {
                context: "dataset features",
            });
        }
        if let Some(ref l) = labels {
            if l.len() != features.n_rows() {
                return Err(Error::LengthMismatch {
                    left: l.len(),
                    right: features.n_rows(),
                });
            }
        }
        if feature_names.len() != features.n_cols() {
            return Err(Error::LengthMismatch {
                left: feature_names.len(),
                right: features.n_cols(),
            });
        }
        Ok(Self {
            features,
            labels,
            feature_names,
        })
    }

    /// Convenience constructor that names features `f0..f{m-1}`.
    pub fn from_features(features: Matrix, labels: Option<Vec<Label>>) -> Result<Self> {
        let names = (0..features.n_cols()).map(|i| format!("f{i}")).collect();
        Self::new(features, labels, names)
    }

    pub fn n_rows(&self) -> usize {
        self.features.n_rows()
    }

    pub fn n_features(&self) -> usize {
        self.features.n_cols()
    }

    pub fn features(&self) -> &Matrix {
        &self.features
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.features.row(i)
    }

    /// Copy of the given rows (labels carried along), in index order.
    pub fn select_rows(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: self.features.select_rows(indices),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i]).collect()),
            feature_names: self.feature_names.clone(),
        }
    }

    /// Indices of rows labelled `Target`. Empty when the data is unlabelled.
    pub fn target_indices(&self) -> Vec<usize> {
        match &self.labels {
            Some(labels) => labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == Label::Target)
                .map(|(i, _)| i)
                .collect(),
            None => Vec::new(),
        }
    }

    /// (target count, outlier count), if labelled.
    pub fn class_counts(&self) -> Option<(usize, usize)> {
        self.labels.as_ref().map(|labels| {
            let t = labels.iter().filter(|&&l| l == Label::Target).count();
            (t, labels.len() - t)
        })
    }
}

/// Loads a CSV file with a header row, comma delimiter and `.` decimal point.
///
/// If `label_column` is given, that column is removed from the features and
/// rows whose cell equals `target_label` are tagged [`Label::Target`]; every
/// other row becomes [`Label::Outlier`]. Both or neither of `label_column`
/// and `target_label` must be supplied. Missing or non-numeric feature cells
/// are rejected, not imputed.
pub fn load_csv(
    path: &Path,
    label_column: Option<&str>,
    target_label: Option<&str>,
) -> Result<Dataset> {
    if label_column.is_some() != target_label.is_some() {
        return Err(Error::InvalidParameter(
            "label_column and target_label must be given together".into(),
        ));
    }

    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };

    let contents = std::fs::read_to_string(path).map_err(io_err)?;
    if contents.trim().is_empty() {
        return Err(Error::EmptyFile {
            path: path.to_path_buf(),
        });
    }

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(contents.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();

    let label_idx =
        match label_column {
            Some(name) => Some(headers.iter().position(|h| h == name).ok_or_else(|| {
                Error::UnknownColumn {
                    path: path.to_path_buf(),
                    name: name.to_string(),
                }
            })?),
            None => None,
        };

    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != label_idx)
        .map(|(_, h)| h.clone())
        .collect();
    if feature_names.len() < 2 {
        return Err(Error::TooFewFeatures {
            found: feature_names.len(),
        });
    }

    let m = feature_names.len();
    let mut data = Vec::new();
    let mut labels = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        if record.len() != headers.len() {
            return Err(Error::ColumnMismatch {
                expected: headers.len(),
                got: record.len(),
            });
        }
        for (col_idx, cell) in record.iter().enumerate() {
            if Some(col_idx) == label_idx {
                labels.push(if cell.trim() == target_label.unwrap() {
                    Label::Target
                } else {
                    Label::Outlier
                });
                continue;
            }
            let value: f64 = cell.trim().parse().unwrap_or(f64::NAN);
            if !value.is_finite() {
                return Err(Error::NonNumericCell {
                    path: path.to_path_buf(),
                    row: row_idx + 1,
                    col: col_idx + 1,
                    value: cell.to_string(),
                });
            }
            data.push(value);
        }
    }

    let n = data.len() / m;
    let features = Matrix::new(n, m, data)?;
    Dataset::new(features, label_idx.map(|_| labels), feature_names)
}

/// Per-feature mean and standard deviation learned from training data.
///
/// Standard deviations use the population (divisor `n`) convention. Columns
/// that are constant in the training sample are flagged and given a stored
/// std of 1 so that applying the transform maps them to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub constant_feature_mask: Vec<bool>,
}

impl NormalizationParams {
    /// Learns z-score statistics from the training rows.
    pub fn fit(train: &Dataset) -> Result<Self> {
        let n = train.n_rows();
        if n < 2 {
            return Err(Error::TooFewRows { need: 2, found: n });
        }
        let m = train.n_features();
        let mut means = vec![0.0; m];
        for row in train.features().rows() {
            for (j, &v) in row.iter().enumerate() {
                means[j] += v;
            }
        }
        for mean in &mut means {
            *mean /= n as f64;
        }

        let mut variances = vec![0.0; m];
        for row in train.features().rows() {
            for (j, &v) in row.iter().enumerate() {
                let d = v - means[j];
                variances[j] += d * d;
            }
        }
        let mut stds = vec![0.0; m];
        let mut mask = vec![false; m];
        for j in 0..m {
            let var = variances[j] / n as f64;
            if var == 0.0 {
                mask[j] = true;
                stds[j] = 1.0;
            } else {
                stds[j] = var.sqrt();
            }
        }
        Ok(Self {
            means,
            stds,
            constant_feature_mask: mask,
        })
    }

    pub fn n_features(&self) -> usize {
        self.means.len()
    }

    /// z-scores a single raw row; constant-masked columns map to 0.
    pub fn apply_row(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.n_features() {
            return Err(Error::ColumnMismatch {
                expected: self.n_features(),
                got: row.len(),
            });
        }
        Ok(row
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                if self.constant_feature_mask[j] {
                    0.0
                } else {
                    (v - self.means[j]) / self.stds[j]
                }
            })
            .collect())
    }

    /// z-scores every row of `data`; labels pass through unchanged.
    pub fn apply(&self, data: &Dataset) -> Result<Dataset> {
        if data.n_features() != self.n_features() {
            return Err(Error::ColumnMismatch {
                expected: self.n_features(),
                got: data.n_features(),
            });
        }
        let mut out = Matrix::zeros(data.n_rows(), data.n_features());
        for i in 0..data.n_rows() {
            let z = self.apply_row(data.row(i))?;
            for (j, v) in z.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Dataset::new(
            out,
            data.labels().map(|l| l.to_vec()),
            data.feature_names().to_vec(),
        )
    }
}

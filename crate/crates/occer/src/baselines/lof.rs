//! Local Outlier Factor on z-scored features with brute-force Euclidean
//! nearest neighbours.

use serde::{Deserialize, Serialize};

use crate::data::{Dataset, NormalizationParams};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Guards the density ratio when reachability distances collapse to zero
/// (exactly duplicated points); mirrors the usual library behaviour of
/// scoring such points ~1.
const LRD_EPSILON: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LofModel {
    normalizer: NormalizationParams,
    /// Normalized training points.
    points: Matrix,
    k: usize,
    /// Distance to the k-th nearest other training point, per training point.
    k_distances: Vec<f64>,
    /// Local reachability density, per training point.
    lrds: Vec<f64>,
}

impl LofModel {
    pub const DEFAULT_K: usize = 20;

    /// Fits on training rows, which are z-scored internally. Requires
    /// `1 <= k < n`.
    pub fn fit(train: &Dataset, k: usize) -> Result<Self> {
        let n = train.n_rows();
        if k < 1 || k >= n {
            return Err(Error::InvalidParameter(format!(
                "k must be in [1, n); got k={k} with n={n}"
            )));
        }
        let normalizer = NormalizationParams::fit(train)?;
        let points = normalizer.apply(train)?.features().clone();

        // Pass 1: k nearest other training points and the k-distance.
        let mut neighbor_lists: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut k_distances = Vec::with_capacity(n);
        for i in 0..n {
            let neighbors = nearest(&points, points.row(i), k, Some(i));
            k_distances.push(neighbors.last().unwrap().0);
            neighbor_lists.push(neighbors.into_iter().map(|(_, j)| j).collect());
        }

        // Pass 2: local reachability densities.
        let mut lrds = vec![0.0; n];
        for i in 0..n {
            let mut reach_sum = 0.0;
            for &j in &neighbor_lists[i] {
                let d = euclidean(points.row(i), points.row(j));
                reach_sum += d.max(k_distances[j]);
            }
            lrds[i] = 1.0 / (reach_sum / k as f64 + LRD_EPSILON);
        }

        Ok(Self {
            normalizer,
            points,
            k,
            k_distances,
            lrds,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// LOF of a raw query point: mean neighbour density over own density.
    /// Values near 1 indicate target-like local density; larger values are
    /// more outlying.
    pub fn score(&self, point: &[f64]) -> Result<f64> {
        if !point.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "score input",
            });
        }
        let z = self.normalizer.apply_row(point)?;
        let neighbors = nearest(&self.points, &z, self.k, None);

        let mut reach_sum = 0.0;
        let mut neighbor_lrd_sum = 0.0;
        for &(d, j) in &neighbors {
            reach_sum += d.max(self.k_distances[j]);
            neighbor_lrd_sum += self.lrds[j];
        }
        let own_lrd = 1.0 / (reach_sum / self.k as f64 + LRD_EPSILON);
        Ok(neighbor_lrd_sum / self.k as f64 / own_lrd)
    }

    pub fn score_dataset(&self, data: &Dataset) -> Result<Vec<f64>> {
        data.features().rows().map(|row| self.score(row)).collect()
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// The `k` nearest training points to `query`, as (distance, index) sorted
/// ascending with index tie-breaks, optionally excluding one index.
fn nearest(points: &Matrix, query: &[f64], k: usize, exclude: Option<usize>) -> Vec<(f64, usize)> {
    let mut dists: Vec<(f64, usize)> = (0..points.n_rows())
        .filter(|&j| Some(j) != exclude)
        .map(|j| (euclidean(points.row(j), query), j))
        .collect();
    dists.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    dists.truncate(k);
    dists
}

//! Isolation forest on z-scored features: random-split trees grown on
//! seeded subsamples, scored by the usual `2^(-E[h] / c(psi))` path-length
//! normalization, so values near 1 are strongly anomalous.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, NormalizationParams};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsolationForestModel {
    normalizer: NormalizationParams,
    trees: Vec<IsoTree>,
    subsample_size: usize,
    seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoTree {
    nodes: Vec<IsoNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum IsoNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        size: usize,
    },
}

impl IsolationForestModel {
    pub const DEFAULT_N_TREES: usize = 100;
    pub const DEFAULT_SUBSAMPLE: usize = 256;

    /// Fits `n_trees` isolation trees, each on a distinct subsample of
    /// `min(subsample, n)` rows. Tree `t` is seeded with `seed + t`. Tree
    /// height is capped at `ceil(log2(subsample))`.
    pub fn fit(train: &Dataset, n_trees: usize, subsample: usize, seed: u64) -> Result<Self> {
        if n_trees < 1 {
            return Err(Error::InvalidParameter("n_trees must be >= 1".into()));
        }
        if subsample < 2 {
            return Err(Error::InvalidParameter("subsample must be >= 2".into()));
        }
        let n = train.n_rows();
        if n < 2 {
            return Err(Error::TooFewRows { need: 2, found: n });
        }
        let normalizer = NormalizationParams::fit(train)?;
        let points = normalizer.apply(train)?.features().clone();
        let psi = subsample.min(n);
        let height_limit = (psi as f64).log2().ceil() as usize;

        let trees = (0..n_trees)
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
                let sample = subsample_indices(n, psi, &mut rng);
                build_tree(&points, sample, height_limit, &mut rng)
            })
            .collect();

        Ok(Self {
            normalizer,
            trees,
            subsample_size: psi,
            seed,
        })
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn subsample_size(&self) -> usize {
        self.subsample_size
    }

    /// Anomaly score in (0, 1); higher is more anomalous.
    pub fn score(&self, point: &[f64]) -> Result<f64> {
        if !point.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite {
                context: "score input",
            });
        }
        let z = self.normalizer.apply_row(point)?;
        let mean_path =
            self.trees.iter().map(|t| t.path_length(&z)).sum::<f64>() / self.trees.len() as f64;
        Ok(2.0_f64.powf(-mean_path / average_path_length(self.subsample_size)))
    }

    pub fn score_dataset(&self, data: &Dataset) -> Result<Vec<f64>> {
        data.features().rows().map(|row| self.score(row)).collect()
    }
}

impl IsoTree {
    fn path_length(&self, point: &[f64]) -> f64 {
        let mut idx = 0;
        let mut depth = 0usize;
        loop {
            match &self.nodes[idx] {
                IsoNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    idx = if point[*feature] < *threshold {
                        *left
                    } else {
                        *right
                    };
                    depth += 1;
                }
                IsoNode::Leaf { size } => {
                    return depth as f64 + average_path_length(*size);
                }
            }
        }
    }

    #[cfg(test)]
    fn depth(&self) -> usize {
        fn walk(nodes: &[IsoNode], idx: usize) -> usize {
            match &nodes[idx] {
                IsoNode::Leaf { .. } => 0,
                IsoNode::Split { left, right, .. } => {
                    1 + walk(nodes, *left).max(walk(nodes, *right))
                }
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Expected path length of an unsuccessful binary search over `n` points:
/// `2 H(n-1) - 2 (n-1) / n`, with the small-size special cases.
fn average_path_length(n: usize) -> f64 {
    match n {
        0 | 1 => 0.0,
        2 => 1.0,
        _ => {
            let nf = n as f64;
            2.0 * ((nf - 1.0).ln() + EULER_MASCHERONI) - 2.0 * (nf - 1.0) / nf
        }
    }
}

/// `psi` distinct row indices drawn without replacement.
fn subsample_indices(n: usize, psi: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    if psi >= n {
        return (0..n).collect();
    }
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..psi {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(psi);
    pool
}

fn build_tree(
    points: &Matrix,
    indices: Vec<usize>,
    height_limit: usize,
    rng: &mut ChaCha8Rng,
) -> IsoTree {
    let p = points.n_cols();
    let mut nodes = Vec::new();
    grow(points, p, indices, 0, height_limit, rng, &mut nodes);
    IsoTree { nodes }
}

fn grow(
    points: &Matrix,
    p: usize,
    indices: Vec<usize>,
    depth: usize,
    height_limit: usize,
    rng: &mut ChaCha8Rng,
    nodes: &mut Vec<IsoNode>,
) -> usize {
    let slot = nodes.len();
    if depth >= height_limit || indices.len() <= 1 {
        nodes.push(IsoNode::Leaf {
            size: indices.len(),
        });
        return slot;
    }

    // Features that still vary within this node.
    let mut candidates = Vec::new();
    for f in 0..p {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &i in &indices {
            let v = points.get(i, f);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo < hi {
            candidates.push((f, lo, hi));
        }
    }
    if candidates.is_empty() {
        nodes.push(IsoNode::Leaf {
            size: indices.len(),
        });
        return slot;
    }

    let (feature, lo, hi) = candidates[rng.gen_range(0..candidates.len())];
    let threshold = rng.gen_range(lo..hi);
    let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
        .into_iter()
        .partition(|&i| points.get(i, feature) < threshold);

    nodes.push(IsoNode::Leaf { size: 0 }); // placeholder
    let left = grow(points, p, left_idx, depth + 1, height_limit, rng, nodes);
    let right = grow(points, p, right_idx, depth + 1, height_limit, rng, nodes);
    nodes[slot] = IsoNode::Split {
        feature,
        threshold,
        left,
        right,
    };
    slot
}

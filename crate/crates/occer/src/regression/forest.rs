//! Bagged CART regression trees. Each tree is grown on a seeded bootstrap
//! sample; splits minimize the summed child squared error over a (possibly
//! random) subset of candidate features. Thresholds are midpoints between
//! consecutive distinct sorted values; ties between equally good splits break
//! toward the lowest feature index, then the lowest threshold.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    /// Node 0 is the root; children refer to indices in this arena.
    pub nodes: Vec<TreeNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

impl Tree {
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        let mut idx = 0;
        loop {
            match &self.nodes[idx] {
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    idx = if row[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
                TreeNode::Leaf { value } => return *value,
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[TreeNode], idx: usize) -> usize {
            match &nodes[idx] {
                TreeNode::Leaf { .. } => 0,
                TreeNode::Split { left, right, .. } => {
                    1 + walk(nodes, *left).max(walk(nodes, *right))
                }
            }
        }
        walk(&self.nodes, 0)
    }
}

pub(crate) struct ForestParams {
    pub n_trees: usize,
    /// Number of candidate features per split, already resolved to 1..=p.
    pub max_features: usize,
    pub min_samples_leaf: usize,
    pub max_depth: Option<usize>,
    pub seed: u64,
}

/// Tree `t` draws all of its randomness from a generator seeded with
/// `seed + t`, so fits are reproducible and independent of scheduling.
pub(crate) fn fit_forest(params: &ForestParams, x: &Matrix, y: &[f64]) -> Vec<Tree> {
    (0..params.n_trees)
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(t as u64));
            grow_tree(params, x, y, &mut rng)
        })
        .collect()
}

fn grow_tree(params: &ForestParams, x: &Matrix, y: &[f64], rng: &mut ChaCha8Rng) -> Tree {
    let n = x.n_rows();
    let p = x.n_cols();
    let max_depth = params.max_depth.unwrap_or(usize::MAX);
    let min_leaf = params.min_samples_leaf;

    // Bootstrap sample: n draws with replacement.
    let sample: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let ys: Vec<f64> = sample.iter().map(|&r| y[r]).collect();
    let cols: Vec<Vec<f64>> = (0..p)
        .map(|f| sample.iter().map(|&r| x.get(r, f)).collect())
        .collect();

    // Positions 0..n sorted per feature once; splits then partition these
    // orderings stably, so no per-node sorting is needed.
    let mut order: Vec<Vec<u32>> = (0..p)
        .map(|f| {
            let mut ord: Vec<u32> = (0..n as u32).collect();
            ord.sort_unstable_by(|&a, &b| {
                cols[f][a as usize]
                    .total_cmp(&cols[f][b as usize])
                    .then(a.cmp(&b))
            });
            ord
        })
        .collect();

    let mut nodes = vec![TreeNode::Leaf { value: 0.0 }];
    let mut marks = vec![false; n];
    let mut scratch = vec![0u32; n];
    let mut feature_pool: Vec<usize> = (0..p).collect();

    struct Job {
        slot: usize,
        lo: usize,
        hi: usize,
        depth: usize,
    }
    let mut stack = vec![Job {
        slot: 0,
        lo: 0,
        hi: n,
        depth: 0,
    }];

    while let Some(job) = stack.pop() {
        let size = job.hi - job.lo;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        let mut y_min = f64::INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        for &pos in &order[0][job.lo..job.hi] {
            let v = ys[pos as usize];
            sum += v;
            sum2 += v * v;
            y_min = y_min.min(v);
            y_max = y_max.max(v);
        }
        let mean = sum / size as f64;

        let splittable = size >= 2 * min_leaf && job.depth < max_depth && y_min < y_max;
        let chosen = if splittable {
            let candidates = pick_features(&mut feature_pool, params.max_features, p, rng);
            best_split(
                &cols,
                &ys,
                &order,
                job.lo,
                job.hi,
                &candidates,
                min_leaf,
                sum,
                sum2,
            )
        } else {
            None
        };

        let (feature, threshold) = match chosen {
            Some(s) => s,
            None => {
                nodes[job.slot] = TreeNode::Leaf { value: mean };
                continue;
            }
        };

        let mut n_left = 0;
        for &pos in &order[0][job.lo..job.hi] {
            let goes_left = cols[feature][pos as usize] <= threshold;
            marks[pos as usize] = goes_left;
            n_left += goes_left as usize;
        }
        if n_left == 0 || n_left == size {
            // Degenerate threshold from floating-point midpoint rounding.
            nodes[job.slot] = TreeNode::Leaf { value: mean };
            continue;
        }

        // Stable partition of every feature ordering around the split.
        for ord in order.iter_mut() {
            let slice = &mut ord[job.lo..job.hi];
            let mut l = 0;
            let mut r = n_left;
            for &pos in slice.iter() {
                if marks[pos as usize] {
                    scratch[l] = pos;
                    l += 1;
                } else {
                    scratch[r] = pos;
                    r += 1;
                }
            }
            slice.copy_from_slice(&scratch[..size]);
        }

        let left_slot = nodes.len();
        nodes.push(TreeNode::Leaf { value: 0.0 });
        nodes.push(TreeNode::Leaf { value: 0.0 });
        nodes[job.slot] = TreeNode::Split {
            feature,
            threshold,
            left: left_slot,
            right: left_slot + 1,
        };
        let mid = job.lo + n_left;
        stack.push(Job {
            slot: left_slot + 1,
            lo: mid,
            hi: job.hi,
            depth: job.depth + 1,
        });
        stack.push(Job {
            slot: left_slot,
            lo: job.lo,
            hi: mid,
            depth: job.depth + 1,
        });
    }

    Tree { nodes }
}

/// Candidate features for one split, in ascending index order.
fn pick_features(
    pool: &mut [usize],
    max_features: usize,
    p: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    if max_features >= p {
        return (0..p).collect();
    }
    // Partial Fisher-Yates over the reusable pool.
    for i in 0..max_features {
        let j = rng.gen_range(i..p);
        pool.swap(i, j);
    }
    let mut picked = pool[..max_features].to_vec();
    picked.sort_unstable();
    picked
}

type Split = (usize, f64);

#[allow(clippy::too_many_arguments)]
fn best_split(
    cols: &[Vec<f64>],
    ys: &[f64],
    order: &[Vec<u32>],
    lo: usize,
    hi: usize,
    candidates: &[usize],
    min_leaf: usize,
    total_sum: f64,
    total_sum2: f64,
) -> Option<Split> {
    let size = hi - lo;
    let mut best_sse = f64::INFINITY;
    let mut best: Option<Split> = None;

    for &f in candidates {
        let ord = &order[f][lo..hi];
        let mut left_sum = 0.0;
        let mut left_sum2 = 0.0;
        for k in 0..size - 1 {
            let pos = ord[k] as usize;
            let v = ys[pos];
            left_sum += v;
            left_sum2 += v * v;
            let cur = cols[f][pos];
            let next = cols[f][ord[k + 1] as usize];
            if cur == next {
                continue;
            }
            let n_l = k + 1;
            let n_r = size - n_l;
            if n_l < min_leaf || n_r < min_leaf {
                continue;
            }
            let sse_l = (left_sum2 - left_sum * left_sum / n_l as f64).max(0.0);
            let right_sum = total_sum - left_sum;
            let right_sum2 = total_sum2 - left_sum2;
            let sse_r = (right_sum2 - right_sum * right_sum / n_r as f64).max(0.0);
            let sse = sse_l + sse_r;
            // Strict improvement keeps the earliest (lowest feature index,
            // lowest threshold) candidate on ties.
            if sse < best_sse {
                best_sse = sse;
                best = Some((f, 0.5 * (cur + next)));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest_params(n_trees: usize, seed: u64) -> ForestParams {
        ForestParams {
            n_trees,
            max_features: 1,
            min_samples_leaf: 1,
            max_depth: None,
            seed,
        }
    }

    #[test]
    fn single_feature_tree_fits_step_data() {
        let x = Matrix::from_rows(&[vec![0.0], vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let y = vec![0.0, 0.0, 10.0, 10.0];
        let mut params = forest_params(1, 7);
        params.max_features = 1;
        let trees = fit_forest(&params, &x, &y);
        // Bootstrap may not contain all rows, but predictions must stay
        // within the target range.
        for v in [-1.0, 0.5, 2.5, 9.0] {
            let pred = trees[0].predict_row(&[v]);
            assert!((0.0..=10.0).contains(&pred));
        }
    }

    #[test]
    fn equal_seeds_grow_identical_trees() {
        let x = Matrix::from_rows(
            &(0..40)
                .map(|i| vec![(i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let y: Vec<f64> = (0..40).map(|i| (i as f64 * 0.11).tan().atan()).collect();
        let params = ForestParams {
            n_trees: 5,
            max_features: 2,
            min_samples_leaf: 1,
            max_depth: None,
            seed: 123,
        };
        let a = fit_forest(&params, &x, &y);
        let b = fit_forest(&params, &x, &y);
        assert_eq!(a, b);
    }

    #[test]
    fn max_depth_limits_tree_height() {
        let x = Matrix::from_rows(&(0..64).map(|i| vec![i as f64]).collect::<Vec<_>>()).unwrap();
        let y: Vec<f64> = (0..64).map(|i| i as f64).collect();
        let params = ForestParams {
            n_trees: 3,
            max_features: 1,
            min_samples_leaf: 1,
            max_depth: Some(4),
            seed: 9,
        };
        for tree in fit_forest(&params, &x, &y) {
            assert!(tree.depth() <= 4);
        }
    }
}

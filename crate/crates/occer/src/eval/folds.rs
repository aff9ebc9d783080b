use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};

/// One train/test split; index lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fold {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Five seeded repetitions of stratified two-fold splits. Repetition `r`
/// draws its shuffle from `seed + r`; within a repetition the two test
/// sets partition the rows and each half preserves the class ratio to
/// within one row per class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub repetitions: Vec<[Fold; 2]>,
    pub seed: u64,
}

pub const CV_REPETITIONS: usize = 5;

impl FoldPlan {
    pub fn new(data: &Dataset, seed: u64) -> Result<Self> {
        let labels = data.labels().ok_or(Error::Unlabeled)?;
        let target_idx: Vec<usize> = (0..labels.len())
            .filter(|&i| labels[i] == Label::Target)
            .collect();
        let outlier_idx: Vec<usize> = (0..labels.len())
            .filter(|&i| labels[i] == Label::Outlier)
            .collect();
        if target_idx.len() < 2 {
            return Err(Error::ClassTooSmall {
                class: "target",
                found: target_idx.len(),
                need: 2,
            });
        }
        if outlier_idx.len() < 2 {
            return Err(Error::ClassTooSmall {
                class: "outlier",
                found: outlier_idx.len(),
                need: 2,
            });
        }

        let repetitions = (0..CV_REPETITIONS)
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
                let mut targets = target_idx.clone();
                let mut outliers = outlier_idx.clone();
                targets.shuffle(&mut rng);
                outliers.shuffle(&mut rng);

                let (t_first, t_second) = targets.split_at(targets.len().div_ceil(2));
                let (o_first, o_second) = outliers.split_at(outliers.len().div_ceil(2));

                let mut half_a: Vec<usize> =
                    t_first.iter().chain(o_first.iter()).copied().collect();
                let mut half_b: Vec<usize> =
                    t_second.iter().chain(o_second.iter()).copied().collect();
                half_a.sort_unstable();
                half_b.sort_unstable();

                [
                    Fold {
                        train: half_a.clone(),
                        test: half_b.clone(),
                    },
                    Fold {
                        train: half_b,
                        test: half_a,
                    },
                ]
            })
            .collect();

        Ok(Self { repetitions, seed })
    }
}

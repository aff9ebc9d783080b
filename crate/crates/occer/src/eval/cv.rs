use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::data::{Dataset, Label};
use crate::error::{Error, Result};
use crate::eval::auc::roc_auc;
use crate::eval::folds::FoldPlan;
use crate::eval::method::Method;

/// Per-fold and averaged AUC results for one (dataset, method, config)
/// combination, ordered by (repetition, fold).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub method: String,
    pub fold_aucs: Vec<f64>,
    pub mean_auc: f64,
    pub config: serde_json::Value,
}

/// Runs stratified 5x2 cross-validation: for each of the ten train/test
/// pairs, the method is fitted on the training fold's target-class rows
/// only (each fit re-learns its own normalization from those rows), all
/// test rows of both classes are scored, and the tie-aware ROC-AUC is
/// recorded. Failures carry the (repetition, fold) they happened in.
pub fn run_cv(
    data: &Dataset,
    dataset_name: &str,
    method: &dyn Method,
    seed: u64,
) -> Result<EvalReport> {
    let plan = FoldPlan::new(data, seed)?;
    let labels = data.labels().expect("fold plan requires labels");

    let mut fold_aucs = Vec::with_capacity(plan.repetitions.len() * 2);
    for (repetition, folds) in plan.repetitions.iter().enumerate() {
        for (fold_idx, fold) in folds.iter().enumerate() {
            let wrap = |source: Error| Error::Fold {
                repetition,
                fold: fold_idx,
                source: Box::new(source),
            };
            let target_train: Vec<usize> = fold
                .train
                .iter()
                .copied()
                .filter(|&i| labels[i] == Label::Target)
                .collect();
            let train = data.select_rows(&target_train);
            let scorer = method.fit(&train).map_err(wrap)?;
            let test = data.select_rows(&fold.test);
            let scores = scorer.score(&test).map_err(wrap)?;
            let auc = roc_auc(&scores, test.labels().unwrap()).map_err(wrap)?;
            fold_aucs.push(auc);
        }
    }

    let mean_auc = fold_aucs.iter().sum::<f64>() / fold_aucs.len() as f64;
    Ok(EvalReport {
        dataset: dataset_name.to_string(),
        method: method.name(),
        fold_aucs,
        mean_auc,
        config: json!({ "method": method.config(), "seed": seed }),
    })
}

/// Fixed-column CSV (dataset, method, fold, auc) for a batch of reports.
pub fn folds_csv(reports: &[EvalReport]) -> String {
    let mut out = String::from("dataset,method,fold,auc\n");
    for report in reports {
        for (fold, auc) in report.fold_aucs.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                report.dataset, report.method, fold, auc
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::method::{MethodSpec, Scorer};
    use crate::matrix::Matrix;
    use crate::regression::RegressorSpec;

    fn synthetic(n_targets: usize, n_outliers: usize, seed: u64) -> Dataset {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::with_capacity(n_targets + n_outliers);
        for _ in 0..n_targets {
            let t = rng.gen_range(-1.0..1.0);
            let u = rng.gen_range(-1.0..1.0);
            rows.push(vec![t, u, t - 2.0 * u, 3.0 * t + u]);
        }
        for _ in 0..n_outliers {
            rows.push((0..4).map(|_| rng.gen_range(-4.0..4.0)).collect());
        }
        let mut labels = vec![Label::Target; n_targets];
        labels.extend(vec![Label::Outlier; n_outliers]);
        Dataset::from_features(Matrix::from_rows(&rows).unwrap(), Some(labels)).unwrap()
    }

    /// Scores each row by a label-blind hash of its bytes: a deterministic
    /// stand-in for a random scorer.
    struct HashScores;

    struct HashScorer;

    impl Scorer for HashScorer {
        fn score(&self, data: &Dataset) -> Result<Vec<f64>> {
            Ok((0..data.n_rows())
                .map(|i| {
                    let mut h: u64 = 0xcbf29ce484222325;
                    for v in data.row(i) {
                        for b in v.to_bits().to_le_bytes() {
                            h ^= b as u64;
                            h = h.wrapping_mul(0x100000001b3);
                        }
                    }
                    (h >> 11) as f64 / (1u64 << 53) as f64
                })
                .collect())
        }
    }

    impl Method for HashScores {
        fn name(&self) -> String {
            "hash".to_string()
        }
        fn fit(&self, _train: &Dataset) -> Result<Box<dyn Scorer>> {
            Ok(Box::new(HashScorer))
        }
    }

    #[test]
    fn label_blind_scores_give_chance_auc() {
        let data = synthetic(500, 50, 8);
        let report = run_cv(&data, "synthetic", &HashScores, 0).unwrap();
        assert_eq!(report.fold_aucs.len(), 10);
        assert!(
            (report.mean_auc - 0.5).abs() < 0.1,
            "mean {}",
            report.mean_auc
        );
    }

    #[test]
    fn manifold_data_scores_high_with_ridge_ensemble() {
        let data = synthetic(300, 30, 4);
        let method = MethodSpec::occer(RegressorSpec::ridge());
        let report = run_cv(&data, "manifold", &method, 0).unwrap();
        assert!(report.mean_auc > 0.95, "mean {}", report.mean_auc);
        for auc in &report.fold_aucs {
            assert!((0.0..=1.0).contains(auc));
        }
        let mean = report.fold_aucs.iter().sum::<f64>() / 10.0;
        assert_eq!(mean, report.mean_auc);
    }

    #[test]
    fn rerun_with_same_seed_is_bit_identical() {
        let data = synthetic(120, 12, 5);
        let method = MethodSpec::occer(RegressorSpec::ridge());
        let a = run_cv(&data, "d", &method, 42).unwrap();
        let b = run_cv(&data, "d", &method, 42).unwrap();
        assert_eq!(a.fold_aucs, b.fold_aucs);
        assert_eq!(a.mean_auc, b.mean_auc);
    }

    #[test]
    fn errors_carry_fold_context() {
        struct FailingMethod;
        impl Method for FailingMethod {
            fn name(&self) -> String {
                "failing".into()
            }
            fn fit(&self, _train: &Dataset) -> Result<Box<dyn Scorer>> {
                Err(Error::InvalidParameter("boom".into()))
            }
        }
        let data = synthetic(40, 6, 2);
        let err = run_cv(&data, "d", &FailingMethod, 0).unwrap_err();
        match err {
            Error::Fold {
                repetition, fold, ..
            } => {
                assert_eq!((repetition, fold), (0, 0));
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn folds_csv_layout() {
        let report = EvalReport {
            dataset: "d".into(),
            method: "m".into(),
            fold_aucs: vec![0.5, 0.75],
            mean_auc: 0.625,
            config: serde_json::Value::Null,
        };
        let csv = folds_csv(&[report]);
        assert_eq!(csv, "dataset,method,fold,auc\nd,m,0,0.5\nd,m,1,0.75\n");
    }

    #[test]
    fn report_round_trips_through_json() {
        let data = synthetic(60, 8, 3);
        let method = MethodSpec::lof();
        let report = run_cv(&data, "d", &method, 7).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: EvalReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
    }
}

use std::path::{Path, PathBuf};

use occer::data::{load_csv, Dataset};
use occer::ensemble::OccerModel;
use occer::eval::{folds_csv, run_cv, EvalReport, Method, MethodSpec};
use occer::persist::{ModelFile, PersistedModel};

use crate::config::{Cli, CliError, Command, OutputFormat, RunConfig};

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fit(opts) => cmd_fit(RunConfig::resolve(opts)?),
        Command::Score(opts) => cmd_score(RunConfig::resolve(opts)?),
        Command::Bench(opts) => cmd_bench(RunConfig::resolve(opts)?),
    }
}

fn load_dataset(config: &RunConfig, path: &Path) -> Result<Dataset, CliError> {
    let (label_col, target_label) = match &config.label {
        Some((c, t)) => (Some(c.as_str()), Some(t.as_str())),
        None => (None, None),
    };
    Ok(load_csv(path, label_col, target_label)?)
}

/// Rows used for training: the target-class subset when labels are present,
/// everything otherwise.
fn training_rows(data: &Dataset) -> Result<Dataset, CliError> {
    match data.labels() {
        Some(_) => {
            let target = data.target_indices();
            if target.is_empty() {
                return Err(CliError::Data(occer::Error::ClassTooSmall {
                    class: "target",
                    found: 0,
                    need: 1,
                }));
            }
            Ok(data.select_rows(&target))
        }
        None => Ok(data.clone()),
    }
}

fn fit_model(method: &MethodSpec, train: &Dataset) -> Result<PersistedModel, CliError> {
    Ok(match method {
        MethodSpec::Occer {
            spec,
            keep_fraction,
        } => PersistedModel::Occer(OccerModel::fit(train, spec)?.prune(*keep_fraction)?),
        MethodSpec::Lof { k } => PersistedModel::Lof(occer::baselines::LofModel::fit(train, *k)?),
        MethodSpec::IsolationForest {
            n_trees,
            subsample,
            seed,
        } => PersistedModel::Iforest(occer::baselines::IsolationForestModel::fit(
            train, *n_trees, *subsample, *seed,
        )?),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| {
        CliError::Data(occer::Error::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

fn cmd_fit(config: RunConfig) -> Result<(), CliError> {
    if config.data.len() != 1 {
        return Err(CliError::Config(
            "fit requires exactly one --data path".into(),
        ));
    }
    if config.methods.len() != 1 {
        return Err(CliError::Config("fit requires exactly one --method".into()));
    }
    if config.keep_fractions.len() != 1 {
        return Err(CliError::Config(
            "fit takes a single --keep-fraction".into(),
        ));
    }
    let out = config
        .out
        .clone()
        .ok_or_else(|| CliError::Config("fit requires --out for the model file".into()))?;

    let method = config.build_method(&config.methods[0], config.keep_fractions[0])?;
    let data = load_dataset(&config, &config.data[0])?;
    let train = training_rows(&data)?;
    let model = fit_model(&method, &train)?;
    let training_scores = model.score_dataset(&train)?;

    println!(
        "fitted {} on {} rows, {} features",
        method.name(),
        train.n_rows(),
        train.n_features()
    );
    if let PersistedModel::Occer(ref m) = model {
        for (name, rmse) in train.feature_names().iter().zip(&m.training_rmses) {
            println!("  {name}: training rmse {rmse}");
        }
    }

    ModelFile::new(model, training_scores, config.snapshot()).save(&out)?;
    println!("model written to {}", out.display());
    Ok(())
}

fn cmd_score(config: RunConfig) -> Result<(), CliError> {
    if config.data.len() != 1 {
        return Err(CliError::Config(
            "score requires exactly one --data path".into(),
        ));
    }
    let model_path = config
        .model
        .clone()
        .ok_or_else(|| CliError::Config("score requires --model".into()))?;
    let out = config
        .out
        .clone()
        .ok_or_else(|| CliError::Config("score requires --out for the score file".into()))?;

    let file = ModelFile::load(&model_path)?;
    let data = load_dataset(&config, &config.data[0])?;
    let scores = file.model.score_dataset(&data)?;

    let threshold = config
        .threshold_quantile
        .map(|q| file.training_score_quantile(q))
        .transpose()?;

    let mut csv = format!("# config: {}\n", config.snapshot());
    match threshold {
        Some(t) => {
            csv.push_str("outlier_score,flag\n");
            for s in &scores {
                csv.push_str(&format!("{},{}\n", s, (*s > t) as u8));
            }
        }
        None => {
            csv.push_str("outlier_score\n");
            for s in &scores {
                csv.push_str(&format!("{s}\n"));
            }
        }
    }
    write_file(&out, &csv)?;
    println!("wrote {} scores to {}", scores.len(), out.display());
    Ok(())
}

/// One benchmark column: a method token expanded with a keep fraction.
struct BenchColumn {
    name: String,
    method: MethodSpec,
}

fn bench_columns(config: &RunConfig) -> Result<Vec<BenchColumn>, CliError> {
    let mut columns = Vec::new();
    for token in &config.methods {
        if token.starts_with("occer-") {
            for &kf in &config.keep_fractions {
                let method = config.build_method(token, kf)?;
                columns.push(BenchColumn {
                    name: method.name(),
                    method,
                });
            }
        } else {
            let method = config.build_method(token, 1.0)?;
            columns.push(BenchColumn {
                name: method.name(),
                method,
            });
        }
    }
    Ok(columns)
}

fn cmd_bench(config: RunConfig) -> Result<(), CliError> {
    if config.data.is_empty() {
        return Err(CliError::Config(
            "bench requires at least one --data".into(),
        ));
    }
    if config.methods.is_empty() {
        return Err(CliError::Config(
            "bench requires at least one --method".into(),
        ));
    }
    if config.label.is_none() {
        return Err(CliError::Config(
            "bench requires --label-col and --target-label".into(),
        ));
    }
    let out_dir = config.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out_dir).map_err(|source| {
        CliError::Data(occer::Error::Io {
            path: out_dir.clone(),
            source,
        })
    })?;

    let columns = bench_columns(&config)?;
    let mut reports: Vec<EvalReport> = Vec::new();
    // Cells in dataset-major order; "error" marks failed combinations.
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut dataset_names = Vec::new();

    for path in &config.data {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let mut row = Vec::with_capacity(columns.len());
        match load_dataset(&config, path) {
            Ok(data) => {
                for column in &columns {
                    match run_cv(&data, &name, &column.method, config.seed) {
                        Ok(report) => {
                            row.push(format!("{}", report.mean_auc));
                            reports.push(report);
                        }
                        Err(err) => {
                            eprintln!("bench: {name} x {}: {err}", column.name);
                            row.push("error".to_string());
                        }
                    }
                }
            }
            Err(err) => {
                eprintln!("bench: {name}: {err}");
                row = vec!["error".to_string(); columns.len()];
            }
        }
        dataset_names.push(name);
        table.push(row);
    }

    let config_line = format!("# config: {}\n", config.snapshot());

    let mut summary = config_line.clone();
    summary.push_str("dataset");
    for column in &columns {
        summary.push(',');
        summary.push_str(&column.name);
    }
    summary.push('\n');
    for (name, row) in dataset_names.iter().zip(&table) {
        summary.push_str(name);
        for cell in row {
            summary.push(',');
            summary.push_str(cell);
        }
        summary.push('\n');
    }
    let summary_path = out_dir.join("bench_summary.csv");
    write_file(&summary_path, &summary)?;

    let folds_path = out_dir.join("bench_folds.csv");
    write_file(
        &folds_path,
        &format!("{config_line}{}", folds_csv(&reports)),
    )?;

    if config.format == OutputFormat::Json {
        let json = serde_json::json!({
            "config": config.snapshot(),
            "reports": reports,
        });
        let json_path = out_dir.join("bench_reports.json");
        write_file(
            &json_path,
            &serde_json::to_string_pretty(&json).map_err(occer::Error::from)?,
        )?;
    }

    println!(
        "wrote {} and {}",
        summary_path.display(),
        folds_path.display()
    );
    Ok(())
}

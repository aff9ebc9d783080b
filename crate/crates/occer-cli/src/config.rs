use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use occer::baselines::{IsolationForestModel, LofModel};
use occer::eval::MethodSpec;
use occer::regression::{MaxFeatures, RegressorKind, RegressorSpec};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config file entries or method names (exit code 2).
    Config(String),
    /// Problems with dataset or model files (exit code 3).
    Data(occer::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Data(err) => write!(f, "{err}"),
        }
    }
}

impl From<occer::Error> for CliError {
    fn from(err: occer::Error) -> Self {
        CliError::Data(err)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "occer",
    about = "One-class classification by ensembles of regression models",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Train a model on the target-class rows of a dataset and save it
    Fit(Options),
    /// Score dataset rows with a saved model
    Score(Options),
    /// Cross-validated AUC benchmark over datasets and methods
    Bench(Options),
}

/// Raw command-line options. Every setting can also come from a flat
/// `key = value` config file; precedence is flags > file > defaults.
#[derive(Args, Debug, Default)]
pub struct Options {
    /// Flat key = value config file (keys named like the long flags)
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Dataset CSV path (repeat or comma-separate for bench)
    #[arg(long = "data", value_delimiter = ',')]
    pub data: Vec<PathBuf>,

    /// Saved model file (for score)
    #[arg(long)]
    pub model: Option<PathBuf>,

    /// Name of the column holding class labels
    #[arg(long = "label-col")]
    pub label_col: Option<String>,

    /// Label value marking the modelled (target) class
    #[arg(long = "target-label")]
    pub target_label: Option<String>,

    /// occer-ridge | occer-lasso | occer-elastic | occer-rf | lof | iforest
    #[arg(long = "method", value_delimiter = ',')]
    pub method: Vec<String>,

    /// Fraction of lowest-RMSE models kept for scoring, in (0, 1]
    #[arg(long = "keep-fraction", value_delimiter = ',')]
    pub keep_fraction: Vec<f64>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Output path (fit: model file; score: score CSV; bench: directory)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Extra bench report format: json | csv
    #[arg(long)]
    pub format: Option<String>,

    /// Add a binary flag column for scores above this quantile of the
    /// model's training scores
    #[arg(long = "threshold-quantile")]
    pub threshold_quantile: Option<f64>,

    /// Regularization strength (ridge / lasso / elastic net)
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Elastic-net L1 share, in [0, 1]
    #[arg(long = "l1-ratio")]
    pub l1_ratio: Option<f64>,

    /// Trees per forest (random-forest regressor and iforest baseline)
    #[arg(long = "n-trees")]
    pub n_trees: Option<usize>,

    /// Candidate features per tree split: "all", a count, or a fraction
    #[arg(long = "max-features")]
    pub max_features: Option<String>,

    #[arg(long = "min-samples-leaf")]
    pub min_samples_leaf: Option<usize>,

    #[arg(long = "max-depth")]
    pub max_depth: Option<usize>,

    #[arg(long = "cd-tolerance")]
    pub cd_tolerance: Option<f64>,

    #[arg(long = "cd-max-iter")]
    pub cd_max_iter: Option<usize>,

    /// LOF neighbour count
    #[arg(long = "lof-k")]
    pub lof_k: Option<usize>,

    /// Isolation-forest subsample size
    #[arg(long)]
    pub subsample: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully resolved run configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub data: Vec<PathBuf>,
    pub model: Option<PathBuf>,
    pub label: Option<(String, String)>,
    pub methods: Vec<String>,
    pub keep_fractions: Vec<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub threshold_quantile: Option<f64>,
    alpha: Option<f64>,
    l1_ratio: Option<f64>,
    n_trees: Option<usize>,
    max_features: Option<MaxFeatures>,
    min_samples_leaf: Option<usize>,
    max_depth: Option<usize>,
    cd_tolerance: Option<f64>,
    cd_max_iter: Option<usize>,
    lof_k: Option<usize>,
    subsample: Option<usize>,
}

impl RunConfig {
    pub fn resolve(opts: Options) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(path) => parse_config_file(path)?,
            None => HashMap::new(),
        };
        let get = |key: &str| file.get(key).cloned();

        let mut data = opts.data;
        if data.is_empty() {
            if let Some(v) = get("data") {
                data = split_list(&v).into_iter().map(PathBuf::from).collect();
            }
        }
        let model = opts.model.or_else(|| get("model").map(PathBuf::from));
        let label_col = opts.label_col.or_else(|| get("label-col"));
        let target_label = opts.target_label.or_else(|| get("target-label"));
        let label = match (label_col, target_label) {
            (Some(c), Some(t)) => Some((c, t)),
            (None, None) => None,
            _ => {
                return Err(CliError::Config(
                    "--label-col and --target-label must be given together".into(),
                ))
            }
        };

        let mut methods = opts.method;
        if methods.is_empty() {
            if let Some(v) = get("method") {
                methods = split_list(&v);
            }
        }
        methods = methods.iter().flat_map(|m| split_list(m)).collect();

        let mut keep_fractions = opts.keep_fraction;
        if keep_fractions.is_empty() {
            if let Some(v) = get("keep-fraction") {
                keep_fractions = split_list(&v)
                    .iter()
                    .map(|s| parse_value(s, "keep-fraction"))
                    .collect::<Result<_, _>>()?;
            }
        }
        if keep_fractions.is_empty() {
            keep_fractions.push(1.0);
        }
        for &kf in &keep_fractions {
            if !(kf > 0.0 && kf <= 1.0) {
                return Err(CliError::Config(format!(
                    "keep-fraction must be in (0, 1], got {kf}"
                )));
            }
        }

        let seed = resolve_field(opts.seed, get("seed"), "seed")?.unwrap_or(0);
        let out = opts.out.or_else(|| get("out").map(PathBuf::from));
        let format = match opts
            .format
            .or_else(|| get("format"))
            .as_deref()
            .unwrap_or("csv")
        {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => {
                return Err(CliError::Config(format!(
                    "format must be json or csv, got {other:?}"
                )))
            }
        };

        let threshold_quantile = resolve_field(
            opts.threshold_quantile,
            get("threshold-quantile"),
            "threshold-quantile",
        )?;
        if let Some(q) = threshold_quantile {
            if !(0.0..=1.0).contains(&q) {
                return Err(CliError::Config(format!(
                    "threshold-quantile must be in [0, 1], got {q}"
                )));
            }
        }

        let max_features = opts
            .max_features
            .or_else(|| get("max-features"))
            .map(|s| parse_max_features(&s))
            .transpose()?;

        Ok(Self {
            data,
            model,
            label,
            methods,
            keep_fractions,
            seed,
            out,
            format,
            threshold_quantile,
            alpha: resolve_field(opts.alpha, get("alpha"), "alpha")?,
            l1_ratio: resolve_field(opts.l1_ratio, get("l1-ratio"), "l1-ratio")?,
            n_trees: resolve_field(opts.n_trees, get("n-trees"), "n-trees")?,
            max_features,
            min_samples_leaf: resolve_field(
                opts.min_samples_leaf,
                get("min-samples-leaf"),
                "min-samples-leaf",
            )?,
            max_depth: resolve_field(opts.max_depth, get("max-depth"), "max-depth")?,
            cd_tolerance: resolve_field(opts.cd_tolerance, get("cd-tolerance"), "cd-tolerance")?,
            cd_max_iter: resolve_field(opts.cd_max_iter, get("cd-max-iter"), "cd-max-iter")?,
            lof_k: resolve_field(opts.lof_k, get("lof-k"), "lof-k")?,
            subsample: resolve_field(opts.subsample, get("subsample"), "subsample")?,
        })
    }

    fn regressor_spec(&self, kind: RegressorKind) -> RegressorSpec {
        let mut spec = RegressorSpec::new(kind);
        spec.seed = self.seed;
        if let Some(v) = self.alpha {
            spec.alpha = v;
        }
        if let Some(v) = self.l1_ratio {
            spec.l1_ratio = v;
        }
        if let Some(v) = self.n_trees {
            spec.n_trees = v;
        }
        if let Some(v) = self.max_features {
            spec.max_features = v;
        }
        if let Some(v) = self.min_samples_leaf {
            spec.min_samples_leaf = v;
        }
        if self.max_depth.is_some() {
            spec.max_depth = self.max_depth;
        }
        if let Some(v) = self.cd_tolerance {
            spec.cd_tolerance = v;
        }
        if let Some(v) = self.cd_max_iter {
            spec.cd_max_iter = v;
        }
        spec
    }

    /// Maps a method token to a validated method descriptor.
    pub fn build_method(&self, token: &str, keep_fraction: f64) -> Result<MethodSpec, CliError> {
        let kind = match token {
            "occer-ridge" => Some(RegressorKind::Ridge),
            "occer-lasso" => Some(RegressorKind::Lasso),
            "occer-elastic" => Some(RegressorKind::ElasticNet),
            "occer-rf" => Some(RegressorKind::RandomForest),
            _ => None,
        };
        let method = match (kind, token) {
            (Some(kind), _) => {
                let spec = self.regressor_spec(kind);
                spec.validate()
                    .map_err(|e| CliError::Config(e.to_string()))?;
                MethodSpec::Occer {
                    spec,
                    keep_fraction,
                }
            }
            (None, "lof") => MethodSpec::Lof {
                k: self.lof_k.unwrap_or(LofModel::DEFAULT_K),
            },
            (None, "iforest") => MethodSpec::IsolationForest {
                n_trees: self
                    .n_trees
                    .unwrap_or(IsolationForestModel::DEFAULT_N_TREES),
                subsample: self
                    .subsample
                    .unwrap_or(IsolationForestModel::DEFAULT_SUBSAMPLE),
                seed: self.seed,
            },
            (None, other) => {
                return Err(CliError::Config(format!(
                    "unknown method {other:?}; expected one of occer-ridge, occer-lasso, \
                     occer-elastic, occer-rf, lof, iforest"
                )))
            }
        };
        Ok(method)
    }

    /// Snapshot embedded in every output for reproducibility.
    pub fn snapshot(&self) -> serde_json::Value {
        serde_json::json!({
            "data": self.data,
            "model": self.model,
            "label_col": self.label.as_ref().map(|(c, _)| c),
            "target_label": self.label.as_ref().map(|(_, t)| t),
            "methods": self.methods,
            "keep_fractions": self.keep_fractions,
            "seed": self.seed,
            "format": match self.format { OutputFormat::Csv => "csv", OutputFormat::Json => "json" },
            "threshold_quantile": self.threshold_quantile,
            "alpha": self.alpha,
            "l1_ratio": self.l1_ratio,
            "n_trees": self.n_trees,
            "min_samples_leaf": self.min_samples_leaf,
            "max_depth": self.max_depth,
            "cd_tolerance": self.cd_tolerance,
            "cd_max_iter": self.cd_max_iter,
            "lof_k": self.lof_k,
            "subsample": self.subsample,
        })
    }
}

fn split_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_value<T: std::str::FromStr>(raw: &str, key: &str) -> Result<T, CliError> {
    raw.parse()
        .map_err(|_| CliError::Config(format!("invalid value {raw:?} for {key}")))
}

fn resolve_field<T: std::str::FromStr>(
    flag: Option<T>,
    file: Option<String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    match (flag, file) {
        (Some(v), _) => Ok(Some(v)),
        (None, Some(raw)) => parse_value(&raw, key).map(Some),
        (None, None) => Ok(None),
    }
}

fn parse_max_features(raw: &str) -> Result<MaxFeatures, CliError> {
    if raw == "all" {
        return Ok(MaxFeatures::All);
    }
    if let Ok(count) = raw.parse::<usize>() {
        return Ok(MaxFeatures::Count(count));
    }
    if let Ok(fraction) = raw.parse::<f64>() {
        return Ok(MaxFeatures::Fraction(fraction));
    }
    Err(CliError::Config(format!(
        "max-features must be \"all\", a count or a fraction, got {raw:?}"
    )))
}

/// Parses a flat `key = value` file; `#` starts a comment line.
fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>, CliError> {
    let contents = std::fs::read_to_string(path).map_err(|e| {
        CliError::Config(format!("cannot read config file {}: {e}", path.display()))
    })?;
    let mut map = HashMap::new();
    for (lineno, line) in contents.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

//! Flat key-value configuration files mirroring the experiment settings.
//!
//! Format: one `key = value` per line, `#` comments and blank lines ignored.
//! Keys (all optional; defaults in parentheses):
//!
//! ```text
//! subsets = 66                    # number of row subsets (66)
//! subset_size = 500               # rows per subset (500)
//! split_fraction = 0.8            # training share of each split (0.8)
//! curve_fractions = 0.1,...,1.0   # learning-curve grid (0.1..1.0 step 0.1)
//! granularity = model-averaged    # or per-model
//! d_clamp = 10                    # magnitude cap for infinite Cohen's d
//! seed = 42                       # master seed (overridden by --seed)
//! logistic.learning_rate = 0.1
//! logistic.max_iterations = 1000
//! logistic.tolerance = 1e-6
//! tree.max_depth = 10             # or "unlimited"
//! tree.min_samples_split = 2
//! forest.n_trees = 100
//! forest.features_per_split = auto  # auto = ceil(sqrt(p))
//! forest.bootstrap = true
//! forest.max_depth = 10           # or "unlimited"
//! forest.min_samples_split = 2
//! mlp.hidden_units = 32
//! mlp.epochs = 200
//! mlp.batch_size = 32
//! mlp.learning_rate = 0.01
//! ```

use suffstat_core::effects::EffectOptions;
use suffstat_core::experiments::{ExperimentConfig, Granularity};
use suffstat_core::learners::{
    ForestParams, LearnerSpec, LogisticParams, MlpParams, TreeParams,
};

use crate::fmt::sig12;
use crate::{CliError, CliResult};

/// Where the master seed came from, for the manifest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedSource {
    Flag,
    ConfigFile,
    Environment,
    Default,
}

impl SeedSource {
    pub fn name(self) -> &'static str {
        match self {
            SeedSource::Flag => "--seed",
            SeedSource::ConfigFile => "config file",
            SeedSource::Environment => "SUFFSTAT_SEED",
            SeedSource::Default => "default",
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;

pub fn parse_pairs(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::usage(format!("config line {}: expected key = value", lineno + 1))
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn parse_as<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::usage(format!("config key '{key}': cannot parse '{value}'")))
}

/// Applies config pairs over the defaults and resolves the master seed with
/// precedence: `--seed` flag, config `seed`, `SUFFSTAT_SEED`, default.
pub fn resolve(
    pairs: &[(String, String)],
    flag_seed: Option<u64>,
    env_seed: Option<u64>,
) -> CliResult<(ExperimentConfig, SeedSource)> {
    let mut subsets = 66usize;
    let mut subset_size = 500usize;
    let mut split_fraction = 0.8f64;
    let mut curve_fractions: Vec<f64> = (1..=10).map(|i| f64::from(i) / 10.0).collect();
    let mut granularity = Granularity::ModelAveraged;
    let mut d_clamp = 10.0f64;
    let mut config_seed: Option<u64> = None;
    let mut logistic = LogisticParams::default();
    let mut tree = TreeParams::default();
    let mut forest = ForestParams::default();
    let mut mlp = MlpParams::default();

    for (key, value) in pairs {
        match key.as_str() {
            "subsets" => subsets = parse_as(key, value)?,
            "subset_size" => subset_size = parse_as(key, value)?,
            "split_fraction" => split_fraction = parse_as(key, value)?,
            "curve_fractions" => {
                curve_fractions = value
                    .split(',')
                    .map(|f| parse_as::<f64>(key, f.trim()))
                    .collect::<CliResult<Vec<f64>>>()?;
            }
            "granularity" => {
                granularity = match value.as_str() {
                    "model-averaged" => Granularity::ModelAveraged,
                    "per-model" => Granularity::PerModel,
                    other => {
                        return Err(CliError::usage(format!(
                            "config key 'granularity': unknown value '{other}'"
                        )))
                    }
                }
            }
            "d_clamp" => d_clamp = parse_as(key, value)?,
            "seed" => config_seed = Some(parse_as(key, value)?),
            "logistic.learning_rate" => logistic.learning_rate = parse_as(key, value)?,
            "logistic.max_iterations" => logistic.max_iterations = parse_as(key, value)?,
            "logistic.tolerance" => logistic.tolerance = parse_as(key, value)?,
            "tree.max_depth" => tree.max_depth = parse_depth(key, value)?,
            "tree.min_samples_split" => tree.min_samples_split = parse_as(key, value)?,
            "forest.n_trees" => forest.n_trees = parse_as(key, value)?,
            "forest.features_per_split" => {
                forest.features_per_split = if value == "auto" {
                    None
                } else {
                    Some(parse_as(key, value)?)
                }
            }
            "forest.bootstrap" => forest.bootstrap = parse_as(key, value)?,
            "forest.max_depth" => forest.tree.max_depth = parse_depth(key, value)?,
            "forest.min_samples_split" => forest.tree.min_samples_split = parse_as(key, value)?,
            "mlp.hidden_units" => mlp.hidden_units = parse_as(key, value)?,
            "mlp.epochs" => mlp.epochs = parse_as(key, value)?,
            "mlp.batch_size" => mlp.batch_size = parse_as(key, value)?,
            "mlp.learning_rate" => mlp.learning_rate = parse_as(key, value)?,
            other => return Err(CliError::usage(format!("unknown config key '{other}'"))),
        }
    }

    let (master_seed, source) = match (flag_seed, config_seed, env_seed) {
        (Some(s), _, _) => (s, SeedSource::Flag),
        (None, Some(s), _) => (s, SeedSource::ConfigFile),
        (None, None, Some(s)) => (s, SeedSource::Environment),
        (None, None, None) => (DEFAULT_SEED, SeedSource::Default),
    };

    let config = ExperimentConfig {
        subsets,
        subset_size,
        split_fraction,
        curve_fractions,
        learners: vec![
            LearnerSpec::Logistic(logistic),
            LearnerSpec::Tree(tree),
            LearnerSpec::Forest(forest),
            LearnerSpec::Mlp(mlp),
        ],
        master_seed,
        granularity,
        effect: EffectOptions { d_clamp },
    };
    config
        .validate()
        .map_err(|e| CliError::usage(format!("invalid configuration: {e}")))?;
    Ok((config, source))
}

fn parse_depth(key: &str, value: &str) -> CliResult<Option<usize>> {
    if value == "unlimited" {
        Ok(None)
    } else {
        Ok(Some(parse_as(key, value)?))
    }
}

fn depth_string(depth: Option<usize>) -> String {
    depth.map_or("unlimited".to_string(), |d| d.to_string())
}

/// The fully resolved configuration as canonical key-value pairs; this is the
/// manifest's config snapshot and suffices to reproduce a run.
pub fn snapshot(config: &ExperimentConfig) -> Vec<(String, String)> {
    let mut pairs: Vec<(String, String)> = vec![
        ("subsets".into(), config.subsets.to_string()),
        ("subset_size".into(), config.subset_size.to_string()),
        ("split_fraction".into(), sig12(config.split_fraction)),
        (
            "curve_fractions".into(),
            config
                .curve_fractions
                .iter()
                .map(|f| sig12(*f))
                .collect::<Vec<_>>()
                .join(","),
        ),
        (
            "granularity".into(),
            match config.granularity {
                Granularity::ModelAveraged => "model-averaged".into(),
                Granularity::PerModel => "per-model".into(),
            },
        ),
        ("d_clamp".into(), sig12(config.effect.d_clamp)),
        ("seed".into(), config.master_seed.to_string()),
    ];
    for spec in &config.learners {
        match spec {
            LearnerSpec::Logistic(p) => {
                pairs.push(("logistic.learning_rate".into(), sig12(p.learning_rate)));
                pairs.push(("logistic.max_iterations".into(), p.max_iterations.to_string()));
                pairs.push(("logistic.tolerance".into(), sig12(p.tolerance)));
            }
            LearnerSpec::Tree(p) => {
                pairs.push(("tree.max_depth".into(), depth_string(p.max_depth)));
                pairs.push(("tree.min_samples_split".into(), p.min_samples_split.to_string()));
            }
            LearnerSpec::Forest(p) => {
                pairs.push(("forest.n_trees".into(), p.n_trees.to_string()));
                pairs.push((
                    "forest.features_per_split".into(),
                    p.features_per_split.map_or("auto".into(), |k| k.to_string()),
                ));
                pairs.push(("forest.bootstrap".into(), p.bootstrap.to_string()));
                pairs.push(("forest.max_depth".into(), depth_string(p.tree.max_depth)));
                pairs.push((
                    "forest.min_samples_split".into(),
                    p.tree.min_samples_split.to_string(),
                ));
            }
            LearnerSpec::Mlp(p) => {
                pairs.push(("mlp.hidden_units".into(), p.hidden_units.to_string()));
                pairs.push(("mlp.epochs".into(), p.epochs.to_string()));
                pairs.push(("mlp.batch_size".into(), p.batch_size.to_string()));
                pairs.push(("mlp.learning_rate".into(), sig12(p.learning_rate)));
            }
        }
    }
    pairs
}

//! Four reference classifier families behind one train/predict/evaluate
//! contract, each fully deterministic for a given seed.
//!
//! Hyperparameters mirror common tooling defaults and live in one record per
//! family. Ties everywhere (probability exactly 0.5, split voting, leaf
//! majorities) resolve to label 1 so results never depend on evaluation
//! order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

mod forest;
mod logistic;
mod mlp;
mod tree;

pub use forest::ForestModel;
pub use logistic::{loss_trajectory, LogisticModel};
pub use mlp::{gradient_check, MlpModel};
pub use tree::TreeModel;

/// The classifier families under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Logistic,
    Tree,
    Forest,
    Mlp,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Logistic, Family::Tree, Family::Forest, Family::Mlp];

    pub fn name(self) -> &'static str {
        match self {
            Family::Logistic => "logistic",
            Family::Tree => "tree",
            Family::Forest => "forest",
            Family::Mlp => "mlp",
        }
    }

    pub fn index(self) -> usize {
        match self {
            Family::Logistic => 0,
            Family::Tree => 1,
            Family::Forest => 2,
            Family::Mlp => 3,
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// Full-batch gradient descent on cross-entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    pub learning_rate: f64,
    pub max_iterations: usize,
    /// Stop once the loss change between iterations falls below this.
    pub tolerance: f64,
}

impl Default for LogisticParams {
    fn default() -> Self {
        LogisticParams {
            learning_rate: 0.1,
            max_iterations: 1000,
            tolerance: 1e-6,
        }
    }
}

/// CART with Gini impurity; numeric splits at midpoints between sorted
/// distinct values, categorical codes treated as numeric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeParams {
    /// Maximum number of split levels below the root; `None` is unlimited,
    /// `Some(0)` a constant stump.
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_depth: Some(10),
            min_samples_split: 2,
        }
    }
}

/// Bagged CART trees with per-split feature sampling and majority vote.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestParams {
    pub n_trees: usize,
    pub tree: TreeParams,
    /// Features sampled per split; `None` means ⌈√p⌉.
    pub features_per_split: Option<usize>,
    /// Bootstrap resampling of the training rows (size n, with replacement).
    pub bootstrap: bool,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 100,
            tree: TreeParams::default(),
            features_per_split: None,
            bootstrap: true,
        }
    }
}

/// One hidden rectified-linear layer, sigmoid output, mini-batch gradient
/// descent on cross-entropy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlpParams {
    pub hidden_units: usize,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
}

impl Default for MlpParams {
    fn default() -> Self {
        MlpParams {
            hidden_units: 32,
            epochs: 200,
            batch_size: 32,
            learning_rate: 0.01,
        }
    }
}

/// A classifier family plus its hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LearnerSpec {
    Logistic(LogisticParams),
    Tree(TreeParams),
    Forest(ForestParams),
    Mlp(MlpParams),
}

impl LearnerSpec {
    pub fn family(&self) -> Family {
        match self {
            LearnerSpec::Logistic(_) => Family::Logistic,
            LearnerSpec::Tree(_) => Family::Tree,
            LearnerSpec::Forest(_) => Family::Forest,
            LearnerSpec::Mlp(_) => Family::Mlp,
        }
    }

    pub fn for_family(family: Family) -> LearnerSpec {
        match family {
            Family::Logistic => LearnerSpec::Logistic(LogisticParams::default()),
            Family::Tree => LearnerSpec::Tree(TreeParams::default()),
            Family::Forest => LearnerSpec::Forest(ForestParams::default()),
            Family::Mlp => LearnerSpec::Mlp(MlpParams::default()),
        }
    }

    /// The default four-model lineup, in a fixed order.
    pub fn default_lineup() -> Vec<LearnerSpec> {
        Family::ALL.iter().map(|&f| LearnerSpec::for_family(f)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        match self {
            LearnerSpec::Logistic(p) => {
                if p.learning_rate.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater)
                    || !p.learning_rate.is_finite()
                {
                    return fail(format!("logistic learning rate {} must be > 0", p.learning_rate));
                }
                if p.max_iterations == 0 {
                    return fail("logistic max iterations must be > 0".into());
                }
                if p.tolerance.is_nan() || p.tolerance < 0.0 {
                    return fail(format!("logistic tolerance {} must be >= 0", p.tolerance));
                }
            }
            LearnerSpec::Tree(p) => {
                if p.min_samples_split < 2 {
                    return fail(format!(
                        "tree min samples to split {} must be >= 2",
                        p.min_samples_split
                    ));
                }
            }
            LearnerSpec::Forest(p) => {
                if p.n_trees == 0 {
                    return fail("forest must have at least one tree".into());
                }
                if p.tree.min_samples_split < 2 {
                    return fail("forest tree min samples to split must be >= 2".into());
                }
                if p.features_per_split == Some(0) {
                    return fail("forest features per split must be > 0".into());
                }
            }
            LearnerSpec::Mlp(p) => {
                if p.hidden_units == 0 || p.epochs == 0 || p.batch_size == 0 {
                    return fail("mlp hidden units, epochs, and batch size must be > 0".into());
                }
                if p.learning_rate.partial_cmp(&0.0) != Some(core::cmp::Ordering::Greater)
                    || !p.learning_rate.is_finite()
                {
                    return fail(format!("mlp learning rate {} must be > 0", p.learning_rate));
                }
            }
        }
        Ok(())
    }
}

/// Training metadata common to all families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrainingMeta {
    pub iterations: usize,
    pub converged: bool,
}

/// A fitted classifier.
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    Logistic(LogisticModel),
    Tree(TreeModel),
    Forest(ForestModel),
    Mlp(MlpModel),
}

impl TrainedModel {
    pub fn family(&self) -> Family {
        match self {
            TrainedModel::Logistic(_) => Family::Logistic,
            TrainedModel::Tree(_) => Family::Tree,
            TrainedModel::Forest(_) => Family::Forest,
            TrainedModel::Mlp(_) => Family::Mlp,
        }
    }

    pub fn n_features(&self) -> usize {
        match self {
            TrainedModel::Logistic(m) => m.n_features(),
            TrainedModel::Tree(m) => m.n_features(),
            TrainedModel::Forest(m) => m.n_features(),
            TrainedModel::Mlp(m) => m.n_features(),
        }
    }

    pub fn meta(&self) -> TrainingMeta {
        match self {
            TrainedModel::Logistic(m) => m.meta(),
            TrainedModel::Tree(m) => m.meta(),
            TrainedModel::Forest(m) => m.meta(),
            TrainedModel::Mlp(m) => m.meta(),
        }
    }
}

/// Accuracy and error of one evaluation; `error == 1 − accuracy` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub accuracy: f64,
    pub error: f64,
    pub n: usize,
}

fn validate_training_inputs(x: &Matrix, y: &[u8]) -> Result<()> {
    if x.rows() != y.len() {
        return Err(Error::ShapeMismatch {
            expected: x.rows(),
            found: y.len(),
        });
    }
    if x.rows() < 2 {
        return Err(Error::InsufficientRows {
            required: 2,
            available: x.rows(),
        });
    }
    if !x.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let ones = y.iter().filter(|&&v| v == 1).count();
    if ones == 0 || ones == y.len() {
        return Err(Error::DegenerateLabel);
    }
    Ok(())
}

/// Fits the given family on (x, y). Identical (spec, x, y, seed) always
/// produce identical model parameters.
pub fn train(spec: &LearnerSpec, x: &Matrix, y: &[u8], seed: u64) -> Result<TrainedModel> {
    spec.validate()?;
    validate_training_inputs(x, y)?;
    Ok(match spec {
        LearnerSpec::Logistic(p) => TrainedModel::Logistic(logistic::fit(x, y, *p)),
        LearnerSpec::Tree(p) => TrainedModel::Tree(tree::fit(x, y, *p)),
        LearnerSpec::Forest(p) => TrainedModel::Forest(forest::fit(x, y, *p, seed)),
        LearnerSpec::Mlp(p) => TrainedModel::Mlp(mlp::fit(x, y, *p, seed)),
    })
}

/// One label per row. Probabilistic families threshold at 0.5 (ties to 1);
/// the forest takes a majority vote (ties to 1).
pub fn predict(model: &TrainedModel, x: &Matrix) -> Result<Vec<u8>> {
    if x.cols() != model.n_features() {
        return Err(Error::ShapeMismatch {
            expected: model.n_features(),
            found: x.cols(),
        });
    }
    Ok(match model {
        TrainedModel::Logistic(m) => m.predict(x),
        TrainedModel::Tree(m) => m.predict(x),
        TrainedModel::Forest(m) => m.predict(x),
        TrainedModel::Mlp(m) => m.predict(x),
    })
}

/// Accuracy over (x, y): matching predictions divided by row count.
pub fn evaluate(model: &TrainedModel, x: &Matrix, y: &[u8]) -> Result<EvalResult> {
    if x.rows() != y.len() {
        return Err(Error::ShapeMismatch {
            expected: x.rows(),
            found: y.len(),
        });
    }
    if x.rows() == 0 {
        return Err(Error::EmptyEvaluation);
    }
    let predictions = predict(model, x)?;
    let correct = predictions.iter().zip(y).filter(|(p, t)| p == t).count();
    let accuracy = correct as f64 / y.len() as f64;
    Ok(EvalResult {
        accuracy,
        error: 1.0 - accuracy,
        n: y.len(),
    })
}

/// Serializes fitted parameters to a versioned flat text form. Identical
/// models produce byte-identical text.
pub fn serialize_model(model: &TrainedModel) -> String {
    let mut out = String::from("suffstat-model v1\n");
    out.push_str(&format!("family {}\n", model.family().name()));
    let meta = model.meta();
    out.push_str(&format!("iterations {}\n", meta.iterations));
    out.push_str(&format!("converged {}\n", meta.converged));
    match model {
        TrainedModel::Logistic(m) => m.serialize_into(&mut out),
        TrainedModel::Tree(m) => m.serialize_into(&mut out),
        TrainedModel::Forest(m) => m.serialize_into(&mut out),
        TrainedModel::Mlp(m) => m.serialize_into(&mut out),
    }
    out
}

pub(crate) fn push_floats(out: &mut String, name: &str, values: &[f64]) {
    out.push_str(name);
    for v in values {
        out.push(' ');
        out.push_str(&format!("{v:?}"));
    }
    out.push('\n');
}

//! Synthetic datasets with controlled per-feature effect targets.
//!
//! These generators invert the effect-size statistics: a numeric feature is
//! drawn from unit-variance Gaussians whose class means differ by exactly the
//! target d, and a binary categorical feature fixes the class-0 presence
//! probability at 0.5 so a target odds ratio maps to the closed-form class-1
//! probability p = OR/(1+OR). Profiling generated data must recover the
//! targets within sampling noise, which makes this module the oracle for the
//! effect statistics.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ingest::{encode_categorical, ColumnKind, EncodedColumn, EncodedMatrix};
use crate::matrix::Matrix;
use crate::rng::{derive_seed, Prng};

/// One feature to generate: a numeric column with a Cohen's-d target, or a
/// binary categorical column with an odds-ratio target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeatureTarget {
    NumericD(f64),
    CategoricalOr(f64),
}

/// Recipe for a generated dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n_rows: usize,
    /// Probability that a row's label is 1.
    pub balance: f64,
    pub features: Vec<FeatureTarget>,
    pub seed: u64,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_rows == 0 {
            return Err(Error::InvalidConfig("n_rows must be > 0".to_string()));
        }
        if !(self.balance > 0.0 && self.balance < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "class balance {} outside (0, 1)",
                self.balance
            )));
        }
        if self.features.is_empty() {
            return Err(Error::InvalidConfig("at least one feature required".to_string()));
        }
        for (i, f) in self.features.iter().enumerate() {
            match f {
                FeatureTarget::NumericD(d) if !d.is_finite() => {
                    return Err(Error::InvalidConfig(format!("feature {i}: d target must be finite")));
                }
                FeatureTarget::CategoricalOr(or) if !(or.is_finite() && *or > 0.0) => {
                    return Err(Error::InvalidConfig(format!(
                        "feature {i}: odds-ratio target must be finite and > 0"
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn numeric_value(label: u8, d_target: f64, rng: &mut Prng) -> f64 {
    let shift = if label == 1 { d_target } else { 0.0 };
    shift + rng.standard_normal()
}

fn categorical_code(label: u8, or_target: f64, rng: &mut Prng) -> usize {
    let p = if label == 1 {
        or_target / (1.0 + or_target)
    } else {
        0.5
    };
    usize::from(rng.bernoulli(p))
}

/// Numeric feature with population Cohen's d equal to `d_target`: class-1
/// values ~ N(d_target, 1), class-0 values ~ N(0, 1). Returns n1 class-1
/// values followed by n0 class-0 values, with aligned labels.
pub fn synth_numeric_feature(d_target: f64, n1: usize, n0: usize, seed: u64) -> (Vec<f64>, Vec<u8>) {
    let mut rng = Prng::new(seed);
    let mut values = Vec::with_capacity(n1 + n0);
    let mut labels = Vec::with_capacity(n1 + n0);
    for _ in 0..n1 {
        values.push(numeric_value(1, d_target, &mut rng));
        labels.push(1);
    }
    for _ in 0..n0 {
        values.push(numeric_value(0, d_target, &mut rng));
        labels.push(0);
    }
    (values, labels)
}

/// Binary categorical feature with population odds ratio equal to
/// `or_target`. Class 0 is present with probability 0.5 (odds 1), class 1
/// with probability OR/(1+OR) (odds OR).
pub fn synth_categorical_feature(
    or_target: f64,
    n1: usize,
    n0: usize,
    seed: u64,
) -> Result<(Vec<usize>, Vec<u8>)> {
    if !(or_target.is_finite() && or_target > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "odds-ratio target {or_target} must be finite and > 0"
        )));
    }
    let mut rng = Prng::new(seed);
    let mut codes = Vec::with_capacity(n1 + n0);
    let mut labels = Vec::with_capacity(n1 + n0);
    for _ in 0..n1 {
        codes.push(categorical_code(1, or_target, &mut rng));
        labels.push(1);
    }
    for _ in 0..n0 {
        codes.push(categorical_code(0, or_target, &mut rng));
        labels.push(0);
    }
    Ok((codes, labels))
}

/// A generated dataset: encoded feature matrix plus labels.
#[derive(Debug, Clone)]
pub struct SynthData {
    pub matrix: EncodedMatrix,
    pub labels: Vec<u8>,
}

/// Generates labels per the class balance, then each feature independently
/// from its own derived seed stream.
pub fn synth_dataset(spec: &SynthSpec) -> Result<SynthData> {
    spec.validate()?;

    let mut label_rng = Prng::new(derive_seed(spec.seed, "synth.labels", &[]));
    let labels: Vec<u8> = (0..spec.n_rows)
        .map(|_| u8::from(label_rng.bernoulli(spec.balance)))
        .collect();

    let n = spec.n_rows;
    let p = spec.features.len();
    let mut values = Matrix::zeros(n, p);
    let mut columns = Vec::with_capacity(p);

    for (j, target) in spec.features.iter().enumerate() {
        let mut rng = Prng::new(derive_seed(spec.seed, "synth.feature", &[j as u64]));
        match *target {
            FeatureTarget::NumericD(d) => {
                for (i, &label) in labels.iter().enumerate() {
                    values.set(i, j, numeric_value(label, d, &mut rng));
                }
                columns.push(EncodedColumn {
                    name: format!("f{j}"),
                    kind: ColumnKind::Numeric,
                    categories: None,
                    scale: None,
                });
            }
            FeatureTarget::CategoricalOr(or) => {
                let codes: Vec<usize> = labels
                    .iter()
                    .map(|&label| categorical_code(label, or, &mut rng))
                    .collect();
                // Re-encode through the shared first-appearance rule so the
                // category map matches what ingest would produce.
                let tokens: Vec<String> = codes.iter().map(|c| format!("c{c}")).collect();
                let (recoded, map) = encode_categorical(&tokens);
                for (i, code) in recoded.into_iter().enumerate() {
                    values.set(i, j, code as f64);
                }
                columns.push(EncodedColumn {
                    name: format!("f{j}"),
                    kind: ColumnKind::Categorical,
                    categories: Some(map),
                    scale: None,
                });
            }
        }
    }

    Ok(SynthData {
        matrix: EncodedMatrix::from_parts(values, columns),
        labels,
    })
}

/// Renders a generated dataset as CSV with a header, in the same format the
/// ingest parser reads: feature columns f0..fN, then the label column with
/// tokens `pos`/`neg`.
pub fn dataset_to_csv(data: &SynthData) -> String {
    let mut out = String::new();
    for col in &data.matrix.columns {
        out.push_str(&col.name);
        out.push(',');
    }
    out.push_str("label\n");

    for i in 0..data.matrix.n_rows() {
        for (j, col) in data.matrix.columns.iter().enumerate() {
            let v = data.matrix.value(i, j);
            match &col.categories {
                Some(map) => out.push_str(map.token_of(v as usize)),
                None => out.push_str(&format!("{v:?}")),
            }
            out.push(',');
        }
        out.push_str(if data.labels[i] == 1 { "pos" } else { "neg" });
        out.push('\n');
    }
    out
}

/// Fully separable one-dimensional data for learner sanity checks: class c
/// sits at sign(c)·(margin/2 + |N(0,1)|), leaving a gap of `margin` between
/// the classes. Classes alternate row by row.
pub fn separable_dataset(n: usize, margin: f64, seed: u64) -> (Matrix, Vec<u8>) {
    let mut rng = Prng::new(seed);
    let mut data = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let label = u8::from(i % 2 == 0);
        let sign = if label == 1 { 1.0 } else { -1.0 };
        data.push(sign * (margin / 2.0 + crate::math::abs(rng.standard_normal())));
        labels.push(label);
    }
    (Matrix::from_rows(data, n, 1), labels)
}

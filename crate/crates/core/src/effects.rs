//! Effect-size statistics: Cohen's d for numeric features, odds ratios for
//! categorical features, and the dataset-level averaged effect magnitude.
//!
//! Numeric and categorical statistics live on different scales, so the
//! per-feature magnitudes are made commensurable before averaging: a numeric
//! feature contributes |d|, and a categorical feature contributes its mean
//! |ln OR| over one-vs-rest level tables mapped to d units through the
//! logistic conversion d = ln(OR)·√3/π. The average reported for a dataset is
//! the arithmetic mean of those magnitudes.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ingest::{ColumnKind, EncodedMatrix};
use crate::math;

/// Multiplier taking ln(OR) onto the Cohen's-d scale: √3/π.
pub fn ln_or_to_d() -> f64 {
    math::sqrt(3.0) / core::f64::consts::PI
}

/// Mean, sample standard deviation, and count of one group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupStats {
    pub mean: f64,
    pub sd: f64,
    pub n: usize,
}

impl GroupStats {
    /// Computes stats from raw values; needs at least two of them for the
    /// sample standard deviation to exist.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InsufficientGroup {
                class: 0,
                len: values.len(),
            });
        }
        Ok(GroupStats {
            mean: math::mean(values),
            sd: math::sqrt(math::sample_variance(values)),
            n: values.len(),
        })
    }
}

/// Pooled standard deviation of two groups, weighting the sample variances by
/// their degrees of freedom:
/// √(((n₁−1)·SD₁² + (n₂−1)·SD₂²) / (n₁+n₂−2)).
pub fn pooled_sd(g1: GroupStats, g2: GroupStats) -> Result<f64> {
    if g1.n + g2.n <= 2 {
        return Err(Error::UndefinedPooledSd);
    }
    let num = (g1.n - 1) as f64 * g1.sd * g1.sd + (g2.n - 1) as f64 * g2.sd * g2.sd;
    Ok(math::sqrt(num / (g1.n + g2.n - 2) as f64))
}

/// Cohen's d: (μ₁ − μ₂) / SD_pooled.
///
/// When the pooled deviation is zero the statistic is 0 for equal means and a
/// signed infinity sentinel otherwise; callers clamp the sentinel.
pub fn cohens_d(group1: &[f64], group2: &[f64]) -> Result<f64> {
    if group1.len() < 2 {
        return Err(Error::InsufficientGroup {
            class: 1,
            len: group1.len(),
        });
    }
    if group2.len() < 2 {
        return Err(Error::InsufficientGroup {
            class: 0,
            len: group2.len(),
        });
    }
    let g1 = GroupStats::from_values(group1)?;
    let g2 = GroupStats::from_values(group2)?;
    let pooled = pooled_sd(g1, g2)?;
    let diff = g1.mean - g2.mean;
    if pooled == 0.0 {
        if diff == 0.0 {
            return Ok(0.0);
        }
        return Ok(if diff > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY });
    }
    Ok(diff / pooled)
}

/// Odds of an event with probability p: p / (1 − p).
pub fn odds(p: f64) -> Result<f64> {
    if p == 1.0 {
        return Err(Error::InfiniteOdds);
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::OddsDomain { p });
    }
    Ok(p / (1.0 - p))
}

/// 2×2 contingency table: rows are the two label groups, columns are
/// category present/absent. If any count is zero, 0.5 is added to every cell
/// (Haldane–Anscombe) so the odds ratio stays finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContingencyTable {
    cells: [[f64; 2]; 2],
    pub correction_applied: bool,
}

impl ContingencyTable {
    /// `a`: group-1 present, `b`: group-1 absent, `c`: group-2 present,
    /// `d`: group-2 absent.
    pub fn from_counts(a: u64, b: u64, c: u64, d: u64) -> Self {
        let corrected = a == 0 || b == 0 || c == 0 || d == 0;
        let adj = if corrected { 0.5 } else { 0.0 };
        ContingencyTable {
            cells: [
                [a as f64 + adj, b as f64 + adj],
                [c as f64 + adj, d as f64 + adj],
            ],
            correction_applied: corrected,
        }
    }

    pub fn cells(&self) -> [[f64; 2]; 2] {
        self.cells
    }
}

/// Odds ratio of a 2×2 table: (a/b) / (c/d) = a·d / (b·c). The constructor's
/// correction guarantees positive cells, so the result is finite and positive.
pub fn odds_ratio(table: &ContingencyTable) -> f64 {
    let [[a, b], [c, d]] = table.cells;
    (a * d) / (b * c)
}

/// Effect magnitude of an integer-coded categorical feature on the d-scale.
///
/// For each level observed in the column, builds the one-vs-rest 2×2 table
/// against the labels and takes |ln OR|; the level average is then mapped to
/// d units via √3/π. Returns the (pre-conversion) mean |ln OR|, the converted
/// magnitude, and whether any level table needed the zero-cell correction.
pub fn categorical_effect_magnitude(codes: &[usize], labels: &[u8]) -> Result<CategoricalEffect> {
    assert_eq!(codes.len(), labels.len(), "codes must align with labels");
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    if n_pos == 0 || n_pos == labels.len() {
        return Err(Error::DegenerateLabel);
    }

    let mut levels: Vec<usize> = codes.to_vec();
    levels.sort_unstable();
    levels.dedup();
    if levels.len() < 2 {
        return Err(Error::ConstantColumn);
    }

    let mut sum_abs_ln_or = 0.0;
    let mut corrected = false;
    for &level in &levels {
        let mut a = 0u64; // label 1, level present
        let mut b = 0u64; // label 1, level absent
        let mut c = 0u64; // label 0, level present
        let mut d = 0u64; // label 0, level absent
        for (&code, &y) in codes.iter().zip(labels) {
            match (y == 1, code == level) {
                (true, true) => a += 1,
                (true, false) => b += 1,
                (false, true) => c += 1,
                (false, false) => d += 1,
            }
        }
        let table = ContingencyTable::from_counts(a, b, c, d);
        corrected |= table.correction_applied;
        sum_abs_ln_or += math::abs(math::ln(odds_ratio(&table)));
    }

    let mean_abs_ln_or = sum_abs_ln_or / levels.len() as f64;
    Ok(CategoricalEffect {
        mean_abs_ln_or,
        magnitude: mean_abs_ln_or * ln_or_to_d(),
        correction_applied: corrected,
    })
}

/// Result of [`categorical_effect_magnitude`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CategoricalEffect {
    /// Mean of |ln OR| over the observed levels.
    pub mean_abs_ln_or: f64,
    /// The above mapped to the d-scale.
    pub magnitude: f64,
    pub correction_applied: bool,
}

/// One feature's contribution to an effect report.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureEffect {
    pub name: String,
    pub kind: ColumnKind,
    /// Signed d for numeric features; mean |ln OR| for categorical features.
    pub raw: f64,
    /// Magnitude on the d-scale, clamped if the raw statistic was infinite.
    pub magnitude: f64,
    pub clamped: bool,
    pub corrected: bool,
}

/// Why a feature was left out of the average.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExclusionReason {
    /// Categorical column with a single observed level: no 2×2 table exists.
    ConstantColumn,
    /// A label class has fewer than two values in this column.
    InsufficientGroup,
}

impl ExclusionReason {
    pub fn name(self) -> &'static str {
        match self {
            ExclusionReason::ConstantColumn => "constant-column",
            ExclusionReason::InsufficientGroup => "insufficient-group",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcludedFeature {
    pub name: String,
    pub kind: ColumnKind,
    pub reason: ExclusionReason,
}

/// Per-feature effect magnitudes and their dataset-level average.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectReport {
    pub per_feature: Vec<FeatureEffect>,
    pub excluded: Vec<ExcludedFeature>,
    /// Arithmetic mean of the included per-feature magnitudes.
    pub average: f64,
    pub label_name: String,
}

/// Knobs for [`average_effect_size`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectOptions {
    /// Magnitude assigned when Cohen's d is infinite (zero pooled deviation
    /// with unequal means).
    pub d_clamp: f64,
}

impl Default for EffectOptions {
    fn default() -> Self {
        EffectOptions { d_clamp: 10.0 }
    }
}

/// Computes the averaged effect size of an encoded feature matrix against
/// binary labels: |Cohen's d| per numeric feature, the d-scale odds-ratio
/// magnitude per categorical feature, averaged arithmetically.
///
/// Features whose statistic is undefined (constant categorical columns, or a
/// label class with fewer than two rows) are excluded and listed with a
/// reason; infinite d is clamped to `opts.d_clamp` and flagged.
pub fn average_effect_size(
    matrix: &EncodedMatrix,
    labels: &[u8],
    label_name: &str,
    opts: EffectOptions,
) -> Result<EffectReport> {
    assert_eq!(matrix.n_rows(), labels.len(), "labels must align with rows");
    if matrix.n_features() == 0 {
        return Err(Error::NoFeatures);
    }
    let n_pos = labels.iter().filter(|&&y| y == 1).count();
    if n_pos == 0 || n_pos == labels.len() {
        return Err(Error::DegenerateLabel);
    }

    let mut per_feature = Vec::new();
    let mut excluded = Vec::new();

    for (j, col) in matrix.columns.iter().enumerate() {
        match col.kind {
            ColumnKind::Numeric => {
                let mut group1 = Vec::with_capacity(n_pos);
                let mut group0 = Vec::with_capacity(labels.len() - n_pos);
                for (i, &label) in labels.iter().enumerate() {
                    if label == 1 {
                        group1.push(matrix.value(i, j));
                    } else {
                        group0.push(matrix.value(i, j));
                    }
                }
                match cohens_d(&group1, &group0) {
                    Ok(d) => {
                        let clamped = d.is_infinite();
                        let magnitude = if clamped { opts.d_clamp } else { math::abs(d) };
                        per_feature.push(FeatureEffect {
                            name: col.name.clone(),
                            kind: col.kind,
                            raw: d,
                            magnitude,
                            clamped,
                            corrected: false,
                        });
                    }
                    Err(Error::InsufficientGroup { .. }) => excluded.push(ExcludedFeature {
                        name: col.name.clone(),
                        kind: col.kind,
                        reason: ExclusionReason::InsufficientGroup,
                    }),
                    Err(e) => return Err(e),
                }
            }
            ColumnKind::Categorical => {
                let codes: Vec<usize> = (0..matrix.n_rows())
                    .map(|i| matrix.value(i, j) as usize)
                    .collect();
                match categorical_effect_magnitude(&codes, labels) {
                    Ok(effect) => per_feature.push(FeatureEffect {
                        name: col.name.clone(),
                        kind: col.kind,
                        raw: effect.mean_abs_ln_or,
                        magnitude: effect.magnitude,
                        clamped: false,
                        corrected: effect.correction_applied,
                    }),
                    Err(Error::ConstantColumn) => excluded.push(ExcludedFeature {
                        name: col.name.clone(),
                        kind: col.kind,
                        reason: ExclusionReason::ConstantColumn,
                    }),
                    Err(e) => return Err(e),
                }
            }
        }
    }

    if per_feature.is_empty() {
        return Err(Error::NoFeatures);
    }
    let average = per_feature.iter().map(|f| f.magnitude).sum::<f64>() / per_feature.len() as f64;

    Ok(EffectReport {
        per_feature,
        excluded,
        average,
        label_name: String::from(label_name),
    })
}

//! Experiment runners: subset and feature-ablation scans correlating averaged
//! effect size with model accuracy, and learning-curve scans correlating it
//! with convergence slopes.
//!
//! Each runner is split into a cheap planning step, a pure per-task
//! evaluation, and a deterministic assembly step. The serial `run_*`
//! functions compose the three; a caller owning a worker pool can evaluate
//! the tasks of a plan in parallel and assemble identical results, because
//! every task derives its seeds from the master seed and stable identifiers
//! rather than from execution order.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::curves::{self, LearningCurve};
use crate::effects::{self, EffectOptions};
use crate::error::{Error, Result};
use crate::ingest::{partition_subsets, stratified_split, ExperimentData, SplitPair};
use crate::learners::{self, Family, LearnerSpec};
use crate::math;
use crate::rng::derive_seed;

/// How scatter points are grouped before the correlation is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Granularity {
    /// One point per unit: the four model accuracies averaged.
    ModelAveraged,
    /// One point per (unit, model family).
    PerModel,
}

/// Shared experiment configuration.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Number of subsets (k).
    pub subsets: usize,
    /// Rows per subset (m).
    pub subset_size: usize,
    /// Training share of each stratified split.
    pub split_fraction: f64,
    /// Training-size grid for learning curves.
    pub curve_fractions: Vec<f64>,
    /// The model lineup; defaults to the four families.
    pub learners: Vec<LearnerSpec>,
    pub master_seed: u64,
    pub granularity: Granularity,
    pub effect: EffectOptions,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            subsets: 66,
            subset_size: 500,
            split_fraction: 0.8,
            curve_fractions: (1..=10).map(|i| f64::from(i) / 10.0).collect(),
            learners: LearnerSpec::default_lineup(),
            master_seed: 42,
            granularity: Granularity::ModelAveraged,
            effect: EffectOptions::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.subsets == 0 {
            return Err(Error::InvalidConfig("subset count must be > 0".to_string()));
        }
        if self.subset_size < 4 {
            return Err(Error::InvalidConfig("subset size must be at least 4".to_string()));
        }
        if !(self.split_fraction > 0.0 && self.split_fraction < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "split fraction {} outside (0, 1)",
                self.split_fraction
            )));
        }
        if self.learners.is_empty() {
            return Err(Error::InvalidConfig("at least one learner required".to_string()));
        }
        for spec in &self.learners {
            spec.validate()?;
        }
        if self.curve_fractions.is_empty() {
            return Err(Error::InvalidConfig("curve fraction grid is empty".to_string()));
        }
        Ok(())
    }
}

/// One scatter point: a unit's averaged effect size against an outcome.
/// `family` is `None` for model-averaged points.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterRecord {
    pub unit: String,
    pub family: Option<Family>,
    pub effect_size: f64,
    pub outcome: f64,
}

impl ScatterRecord {
    pub fn family_name(&self) -> &'static str {
        self.family.map_or("averaged", Family::name)
    }
}

/// OLS line and squared Pearson correlation over a scatter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSummary {
    pub n_points: usize,
    pub slope: f64,
    pub intercept: f64,
    pub pearson_r: f64,
    pub r_squared: f64,
    /// Set when either coordinate had zero variance; the correlation is then
    /// reported as 0 rather than failing the run.
    pub zero_variance: bool,
}

/// A unit that produced no scatter point, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct SkipEvent {
    pub unit: String,
    pub reason: String,
}

/// Least-squares line of y on x: returns (slope, intercept).
pub fn ols_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    assert_eq!(x.len(), y.len(), "ols_fit needs aligned inputs");
    if x.len() < 2 {
        return Err(Error::InsufficientPoints {
            required: 2,
            found: x.len(),
        });
    }
    let mean_x = math::mean(x);
    let mean_y = math::mean(y);
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxx += (xi - mean_x) * (xi - mean_x);
        sxy += (xi - mean_x) * (yi - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    Ok((slope, mean_y - slope * mean_x))
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let mean_x = math::mean(x);
    let mean_y = math::mean(y);
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        sxx += (xi - mean_x) * (xi - mean_x);
        syy += (yi - mean_y) * (yi - mean_y);
        sxy += (xi - mean_x) * (yi - mean_y);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / math::sqrt(sxx * syy))
}

/// Squared Pearson correlation of x and y. Zero variance in either input
/// yields 0; [`correlate`] carries the explicit flag.
pub fn r_squared(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "r_squared needs aligned inputs");
    match pearson(x, y) {
        Some(r) => r * r,
        None => 0.0,
    }
}

/// Builds the correlation summary over a scatter. Needs at least three
/// points; degenerate variance is flagged rather than fatal.
pub fn correlate(x: &[f64], y: &[f64]) -> Result<CorrelationSummary> {
    assert_eq!(x.len(), y.len(), "correlate needs aligned inputs");
    if x.len() < 3 {
        return Err(Error::InsufficientPoints {
            required: 3,
            found: x.len(),
        });
    }
    match pearson(x, y) {
        Some(r) => {
            let (slope, intercept) = ols_fit(x, y)?;
            Ok(CorrelationSummary {
                n_points: x.len(),
                slope,
                intercept,
                pearson_r: r,
                r_squared: r * r,
                zero_variance: false,
            })
        }
        None => {
            // Flat in x and/or y: report a zero correlation with the flag.
            let (slope, intercept) = match ols_fit(x, y) {
                Ok(fit) => fit,
                Err(Error::ZeroVariance) => (0.0, math::mean(y)),
                Err(e) => return Err(e),
            };
            Ok(CorrelationSummary {
                n_points: x.len(),
                slope,
                intercept,
                pearson_r: 0.0,
                r_squared: 0.0,
                zero_variance: true,
            })
        }
    }
}

fn summary_from_records(records: &[ScatterRecord]) -> Result<CorrelationSummary> {
    let xs: Vec<f64> = records.iter().map(|r| r.effect_size).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.outcome).collect();
    correlate(&xs, &ys)
}

// ---------------------------------------------------------------------------
// Experiment 1.1: same features, varying row subsets
// ---------------------------------------------------------------------------

/// One viable subset: its rows and precomputed averaged effect size.
#[derive(Debug, Clone)]
pub struct SubsetTask {
    pub index: usize,
    pub rows: Vec<usize>,
    pub effect_average: f64,
}

/// Planned subset scan: viable tasks plus the subsets skipped at planning.
#[derive(Debug, Clone)]
pub struct SubsetPlan {
    pub tasks: Vec<SubsetTask>,
    pub skipped: Vec<SkipEvent>,
}

/// Accuracies of the configured learners on one subset's validation side,
/// in lineup order.
#[derive(Debug, Clone)]
pub struct SubsetOutcome {
    pub index: usize,
    pub effect_average: f64,
    pub accuracies: Vec<f64>,
}

/// Full result of a subset or ablation experiment.
#[derive(Debug, Clone)]
pub struct ExperimentResult {
    /// Points at the configured granularity; the summary is fit over these.
    pub records: Vec<ScatterRecord>,
    /// Points at the other granularity, kept for inspection.
    pub supplementary: Vec<ScatterRecord>,
    pub summary: Result<CorrelationSummary>,
    pub skipped: Vec<SkipEvent>,
}

/// Partitions the working rows into subsets and computes each subset's
/// averaged effect size on the pre-standardization matrix. Subsets with
/// degenerate labels are skipped with a reason.
pub fn plan_subsets(config: &ExperimentConfig, data: &ExperimentData) -> Result<SubsetPlan> {
    config.validate()?;
    let seed = derive_seed(
        config.master_seed,
        &format!("{}.subsets.partition", data.label_name),
        &[],
    );
    let partition = partition_subsets(data.n_rows(), config.subsets, config.subset_size, seed)?;

    let mut tasks = Vec::new();
    let mut skipped = Vec::new();
    for (index, rows) in partition.subsets.into_iter().enumerate() {
        let subset_matrix = data.raw.gather_rows(&rows);
        let labels: Vec<u8> = rows.iter().map(|&i| data.labels[i]).collect();
        match effects::average_effect_size(&subset_matrix, &labels, &data.label_name, config.effect)
        {
            Ok(report) => tasks.push(SubsetTask {
                index,
                rows,
                effect_average: report.average,
            }),
            Err(e) => skipped.push(SkipEvent {
                unit: index.to_string(),
                reason: e.to_string(),
            }),
        }
    }
    Ok(SubsetPlan { tasks, skipped })
}

fn split_subset(
    config: &ExperimentConfig,
    data: &ExperimentData,
    rows: &[usize],
    index: usize,
) -> Result<SplitPair> {
    let labels: Vec<u8> = rows.iter().map(|&i| data.labels[i]).collect();
    let seed = derive_seed(
        config.master_seed,
        &format!("{}.subsets.split", data.label_name),
        &[index as u64],
    );
    stratified_split(rows, &labels, config.split_fraction, seed)
}

fn train_and_score(
    config: &ExperimentConfig,
    data: &ExperimentData,
    matrix: &crate::ingest::EncodedMatrix,
    split: &SplitPair,
    seed_domain: &str,
    seed_parts_head: u64,
) -> Result<Vec<f64>> {
    let x_train = matrix.matrix().gather_rows(&split.train);
    let y_train: Vec<u8> = split.train.iter().map(|&i| data.labels[i]).collect();
    let x_valid = matrix.matrix().gather_rows(&split.valid);
    let y_valid: Vec<u8> = split.valid.iter().map(|&i| data.labels[i]).collect();

    let mut accuracies = Vec::with_capacity(config.learners.len());
    for (f, spec) in config.learners.iter().enumerate() {
        let seed = derive_seed(
            config.master_seed,
            seed_domain,
            &[seed_parts_head, f as u64],
        );
        let model = learners::train(spec, &x_train, &y_train, seed)?;
        let eval = learners::evaluate(&model, &x_valid, &y_valid)?;
        accuracies.push(eval.accuracy);
    }
    Ok(accuracies)
}

/// Splits one planned subset, trains the lineup, and scores validation
/// accuracy for each family.
pub fn run_subset_task(
    config: &ExperimentConfig,
    data: &ExperimentData,
    task: &SubsetTask,
) -> Result<SubsetOutcome> {
    let split = split_subset(config, data, &task.rows, task.index)?;
    let accuracies = train_and_score(
        config,
        data,
        &data.standardized,
        &split,
        &format!("{}.subsets.train", data.label_name),
        task.index as u64,
    )?;
    Ok(SubsetOutcome {
        index: task.index,
        effect_average: task.effect_average,
        accuracies,
    })
}

fn build_records(
    config: &ExperimentConfig,
    units: &[(String, f64, Vec<f64>)],
) -> (Vec<ScatterRecord>, Vec<ScatterRecord>) {
    let mut averaged = Vec::with_capacity(units.len());
    let mut per_model = Vec::with_capacity(units.len() * config.learners.len());
    for (unit, effect, outcomes) in units {
        averaged.push(ScatterRecord {
            unit: unit.clone(),
            family: None,
            effect_size: *effect,
            outcome: math::mean(outcomes),
        });
        for (spec, outcome) in config.learners.iter().zip(outcomes) {
            per_model.push(ScatterRecord {
                unit: unit.clone(),
                family: Some(spec.family()),
                effect_size: *effect,
                outcome: *outcome,
            });
        }
    }
    match config.granularity {
        Granularity::ModelAveraged => (averaged, per_model),
        Granularity::PerModel => (per_model, averaged),
    }
}

/// Merges task results into records and the correlation summary. Results
/// may arrive in any order; they are sorted by unit index first.
pub fn assemble_subset_experiment(
    config: &ExperimentConfig,
    plan_skipped: Vec<SkipEvent>,
    mut outcomes: Vec<SubsetOutcome>,
) -> ExperimentResult {
    outcomes.sort_by_key(|o| o.index);
    let units: Vec<(String, f64, Vec<f64>)> = outcomes
        .into_iter()
        .map(|o| (o.index.to_string(), o.effect_average, o.accuracies))
        .collect();
    let (records, supplementary) = build_records(config, &units);
    let summary = summary_from_records(&records);
    ExperimentResult {
        records,
        supplementary,
        summary,
        skipped: plan_skipped,
    }
}

/// Serial subset experiment: plan, evaluate every task, assemble.
pub fn run_subset_experiment(
    config: &ExperimentConfig,
    data: &ExperimentData,
) -> Result<ExperimentResult> {
    let plan = plan_subsets(config, data)?;
    let mut outcomes = Vec::with_capacity(plan.tasks.len());
    for task in &plan.tasks {
        outcomes.push(run_subset_task(config, data, task)?);
    }
    Ok(assemble_subset_experiment(config, plan.skipped, outcomes))
}

// ---------------------------------------------------------------------------
// Experiment 1.2: same rows, one feature dropped at a time
// ---------------------------------------------------------------------------

/// One ablation unit: the feature to drop and the effect average of the
/// remaining feature space over all working rows.
#[derive(Debug, Clone)]
pub struct AblationTask {
    pub feature_index: usize,
    pub feature_name: String,
    pub effect_average: f64,
}

/// Planned ablation scan. All units share one fixed stratified split of the
/// full working data, since only the feature mix varies.
#[derive(Debug, Clone)]
pub struct AblationPlan {
    pub split: SplitPair,
    pub tasks: Vec<AblationTask>,
    pub skipped: Vec<SkipEvent>,
}

#[derive(Debug, Clone)]
pub struct AblationOutcome {
    pub feature_index: usize,
    pub feature_name: String,
    pub effect_average: f64,
    pub accuracies: Vec<f64>,
}

pub fn plan_ablation(config: &ExperimentConfig, data: &ExperimentData) -> Result<AblationPlan> {
    config.validate()?;
    let p = data.raw.n_features();
    if p < 2 {
        return Err(Error::InvalidConfig(
            "ablation needs at least two features".to_string(),
        ));
    }

    let all_rows: Vec<usize> = (0..data.n_rows()).collect();
    let split_seed = derive_seed(
        config.master_seed,
        &format!("{}.ablation.split", data.label_name),
        &[],
    );
    let split = stratified_split(&all_rows, &data.labels, config.split_fraction, split_seed)?;

    let mut tasks = Vec::new();
    let mut skipped = Vec::new();
    for j in 0..p {
        let name = data.raw.columns[j].name.clone();
        let reduced = data.raw.drop_column(j);
        match effects::average_effect_size(&reduced, &data.labels, &data.label_name, config.effect)
        {
            Ok(report) => tasks.push(AblationTask {
                feature_index: j,
                feature_name: name,
                effect_average: report.average,
            }),
            Err(e) => skipped.push(SkipEvent {
                unit: name,
                reason: e.to_string(),
            }),
        }
    }
    Ok(AblationPlan {
        split,
        tasks,
        skipped,
    })
}

pub fn run_ablation_task(
    config: &ExperimentConfig,
    data: &ExperimentData,
    split: &SplitPair,
    task: &AblationTask,
) -> Result<AblationOutcome> {
    let reduced = data.standardized.drop_column(task.feature_index);
    let accuracies = train_and_score(
        config,
        data,
        &reduced,
        split,
        &format!("{}.ablation.train", data.label_name),
        task.feature_index as u64,
    )?;
    Ok(AblationOutcome {
        feature_index: task.feature_index,
        feature_name: task.feature_name.clone(),
        effect_average: task.effect_average,
        accuracies,
    })
}

pub fn assemble_ablation_experiment(
    config: &ExperimentConfig,
    plan_skipped: Vec<SkipEvent>,
    mut outcomes: Vec<AblationOutcome>,
) -> ExperimentResult {
    outcomes.sort_by_key(|o| o.feature_index);
    let units: Vec<(String, f64, Vec<f64>)> = outcomes
        .into_iter()
        .map(|o| (o.feature_name, o.effect_average, o.accuracies))
        .collect();
    let (records, supplementary) = build_records(config, &units);
    let summary = summary_from_records(&records);
    ExperimentResult {
        records,
        supplementary,
        summary,
        skipped: plan_skipped,
    }
}

/// Serial ablation experiment over every feature of the working data.
pub fn run_ablation_experiment(
    config: &ExperimentConfig,
    data: &ExperimentData,
) -> Result<ExperimentResult> {
    let plan = plan_ablation(config, data)?;
    let mut outcomes = Vec::with_capacity(plan.tasks.len());
    for task in &plan.tasks {
        outcomes.push(run_ablation_task(config, data, &plan.split, task)?);
    }
    Ok(assemble_ablation_experiment(config, plan.skipped, outcomes))
}

// ---------------------------------------------------------------------------
// Experiment 2: learning-curve slopes
// ---------------------------------------------------------------------------

/// One learning curve to compute: a subset × family pair. Subsets and effect
/// sizes are derived exactly as in the subset experiment, so the curve scan
/// studies the same units.
#[derive(Debug, Clone)]
pub struct CurveTask {
    pub subset_index: usize,
    pub family_index: usize,
    pub rows: Vec<usize>,
    pub effect_average: f64,
}

#[derive(Debug, Clone)]
pub struct CurvePlan {
    pub tasks: Vec<CurveTask>,
    pub skipped: Vec<SkipEvent>,
}

#[derive(Debug, Clone)]
pub struct CurveOutcome {
    pub subset_index: usize,
    pub family_index: usize,
    pub effect_average: f64,
    pub log_slope: f64,
    pub gap_slope: f64,
    pub curve: LearningCurve,
}

/// Result of the curve experiment: per-(subset, family) records for both
/// slope statistics, model-averaged variants for comparison, and the curves
/// themselves for plotting.
#[derive(Debug, Clone)]
pub struct CurveExperimentResult {
    pub log_records: Vec<ScatterRecord>,
    pub gap_records: Vec<ScatterRecord>,
    pub log_averaged: Vec<ScatterRecord>,
    pub gap_averaged: Vec<ScatterRecord>,
    pub log_summary: Result<CorrelationSummary>,
    pub gap_summary: Result<CorrelationSummary>,
    pub curves: Vec<LearningCurve>,
    pub skipped: Vec<SkipEvent>,
}

pub fn plan_curves(config: &ExperimentConfig, data: &ExperimentData) -> Result<CurvePlan> {
    let subset_plan = plan_subsets(config, data)?;
    let mut tasks = Vec::new();
    for subset in &subset_plan.tasks {
        for family_index in 0..config.learners.len() {
            tasks.push(CurveTask {
                subset_index: subset.index,
                family_index,
                rows: subset.rows.clone(),
                effect_average: subset.effect_average,
            });
        }
    }
    Ok(CurvePlan {
        tasks,
        skipped: subset_plan.skipped,
    })
}

pub fn run_curve_task(
    config: &ExperimentConfig,
    data: &ExperimentData,
    task: &CurveTask,
) -> Result<CurveOutcome> {
    let split = split_subset(config, data, &task.rows, task.subset_index)?;
    let x_train = data.standardized.matrix().gather_rows(&split.train);
    let y_train: Vec<u8> = split.train.iter().map(|&i| data.labels[i]).collect();
    let x_valid = data.standardized.matrix().gather_rows(&split.valid);
    let y_valid: Vec<u8> = split.valid.iter().map(|&i| data.labels[i]).collect();

    let spec = &config.learners[task.family_index];
    let curve_seed = derive_seed(
        config.master_seed,
        &format!("{}.curve", data.label_name),
        &[task.subset_index as u64, task.family_index as u64],
    );
    let curve = curves::compute_learning_curve(
        spec,
        &x_train,
        &y_train,
        &x_valid,
        &y_valid,
        &config.curve_fractions,
        task.subset_index,
        curve_seed,
    )?;
    let log_fit = curves::fit_log_model(&curve)?;
    let gap_fit = curves::fit_gap_slope(&curve)?;
    Ok(CurveOutcome {
        subset_index: task.subset_index,
        family_index: task.family_index,
        effect_average: task.effect_average,
        log_slope: log_fit.slope,
        gap_slope: gap_fit.slope,
        curve,
    })
}

/// Merges curve task results; failed tasks become skip events. The two
/// summaries are fit over the per-(subset, family) signed slopes.
pub fn assemble_curve_experiment(
    config: &ExperimentConfig,
    plan_skipped: Vec<SkipEvent>,
    tasks: &[CurveTask],
    results: Vec<Result<CurveOutcome>>,
) -> CurveExperimentResult {
    assert_eq!(tasks.len(), results.len(), "one result per task expected");
    let mut outcomes = Vec::new();
    let mut skipped = plan_skipped;
    for (task, result) in tasks.iter().zip(results) {
        match result {
            Ok(outcome) => outcomes.push(outcome),
            Err(e) => skipped.push(SkipEvent {
                unit: format!(
                    "{}/{}",
                    task.subset_index,
                    config.learners[task.family_index].family().name()
                ),
                reason: e.to_string(),
            }),
        }
    }
    outcomes.sort_by_key(|o| (o.subset_index, o.family_index));

    let mut log_records = Vec::with_capacity(outcomes.len());
    let mut gap_records = Vec::with_capacity(outcomes.len());
    let mut curves_out = Vec::with_capacity(outcomes.len());
    let mut by_subset: Vec<(usize, f64, Vec<f64>, Vec<f64>)> = Vec::new();

    for outcome in outcomes {
        let unit = outcome.subset_index.to_string();
        let family = Some(config.learners[outcome.family_index].family());
        log_records.push(ScatterRecord {
            unit: unit.clone(),
            family,
            effect_size: outcome.effect_average,
            outcome: outcome.log_slope,
        });
        gap_records.push(ScatterRecord {
            unit,
            family,
            effect_size: outcome.effect_average,
            outcome: outcome.gap_slope,
        });
        match by_subset.last_mut() {
            Some(entry) if entry.0 == outcome.subset_index => {
                entry.2.push(outcome.log_slope);
                entry.3.push(outcome.gap_slope);
            }
            _ => by_subset.push((
                outcome.subset_index,
                outcome.effect_average,
                alloc::vec![outcome.log_slope],
                alloc::vec![outcome.gap_slope],
            )),
        }
        curves_out.push(outcome.curve);
    }

    let log_averaged = by_subset
        .iter()
        .map(|(idx, effect, logs, _)| ScatterRecord {
            unit: idx.to_string(),
            family: None,
            effect_size: *effect,
            outcome: math::mean(logs),
        })
        .collect();
    let gap_averaged = by_subset
        .iter()
        .map(|(idx, effect, _, gaps)| ScatterRecord {
            unit: idx.to_string(),
            family: None,
            effect_size: *effect,
            outcome: math::mean(gaps),
        })
        .collect();

    let log_summary = summary_from_records(&log_records);
    let gap_summary = summary_from_records(&gap_records);
    CurveExperimentResult {
        log_records,
        gap_records,
        log_averaged,
        gap_averaged,
        log_summary,
        gap_summary,
        curves: curves_out,
        skipped,
    }
}

/// Serial curve experiment over every (subset, family) pair.
pub fn run_curve_experiment(
    config: &ExperimentConfig,
    data: &ExperimentData,
) -> Result<CurveExperimentResult> {
    let plan = plan_curves(config, data)?;
    let results: Vec<Result<CurveOutcome>> = plan
        .tasks
        .iter()
        .map(|t| run_curve_task(config, data, t))
        .collect();
    Ok(assemble_curve_experiment(config, plan.skipped, &plan.tasks, results))
}

/// Correlates injected effect sizes against the fitted slope statistics of
/// prebuilt curves: the positive-control path showing the pipeline detects a
/// correlation when one exists.
pub fn correlate_curve_statistics(
    pairs: &[(f64, LearningCurve)],
) -> Result<(CorrelationSummary, CorrelationSummary)> {
    let mut effects_x = Vec::with_capacity(pairs.len());
    let mut log_slopes = Vec::with_capacity(pairs.len());
    let mut gap_slopes = Vec::with_capacity(pairs.len());
    for (effect, curve) in pairs {
        effects_x.push(*effect);
        log_slopes.push(curves::fit_log_model(curve)?.slope);
        gap_slopes.push(curves::fit_gap_slope(curve)?.slope);
    }
    Ok((
        correlate(&effects_x, &log_slopes)?,
        correlate(&effects_x, &gap_slopes)?,
    ))
}

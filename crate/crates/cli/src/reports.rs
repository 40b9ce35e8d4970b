//! Report rendering: CSV point records and JSON summaries.
//!
//! Column orders and key orders are fixed; floats go through the shared
//! 12-significant-digit formatter. Identical inputs produce identical bytes.

use suffstat_core::curves::LearningCurve;
use suffstat_core::effects::EffectReport;
use suffstat_core::experiments::{CorrelationSummary, ScatterRecord, SkipEvent};

use crate::fmt::sig12;
use crate::json::Json;

/// Scatter records as CSV: `experiment,label,unit,family,effect_size,outcome`
/// (plus `outcome_abs` when requested). Primary records come first, then the
/// supplementary granularity.
pub fn records_csv(
    experiment: &str,
    label: &str,
    primary: &[ScatterRecord],
    supplementary: &[ScatterRecord],
    with_abs: bool,
) -> String {
    let mut out = String::from("experiment,label,unit,family,effect_size,outcome");
    if with_abs {
        out.push_str(",outcome_abs");
    }
    out.push('\n');
    for record in primary.iter().chain(supplementary) {
        out.push_str(experiment);
        out.push(',');
        out.push_str(label);
        out.push(',');
        out.push_str(&record.unit);
        out.push(',');
        out.push_str(record.family_name());
        out.push(',');
        out.push_str(&sig12(record.effect_size));
        out.push(',');
        out.push_str(&sig12(record.outcome));
        if with_abs {
            out.push(',');
            out.push_str(&sig12(record.outcome.abs()));
        }
        out.push('\n');
    }
    out
}

/// Correlation summary as JSON. A failed summary renders its diagnostic
/// instead of statistics.
pub fn summary_json(
    experiment: &str,
    label: &str,
    summary: &Result<CorrelationSummary, suffstat_core::Error>,
) -> String {
    let body = match summary {
        Ok(s) => Json::obj(vec![
            ("experiment", Json::Str(experiment.into())),
            ("label", Json::Str(label.into())),
            ("n_points", Json::Int(s.n_points as i64)),
            ("slope", Json::Float(s.slope)),
            ("intercept", Json::Float(s.intercept)),
            ("pearson_r", Json::Float(s.pearson_r)),
            ("r_squared", Json::Float(s.r_squared)),
            ("zero_variance", Json::Bool(s.zero_variance)),
        ]),
        Err(e) => Json::obj(vec![
            ("experiment", Json::Str(experiment.into())),
            ("label", Json::Str(label.into())),
            ("error", Json::Str(e.to_string())),
        ]),
    };
    body.render()
}

/// Effect report as CSV: `feature,kind,raw,magnitude,flags`. Excluded
/// features keep their row with empty statistics and the exclusion reason.
pub fn effects_csv(report: &EffectReport) -> String {
    let mut out = String::from("feature,kind,raw,magnitude,flags\n");
    for f in &report.per_feature {
        let mut flags = Vec::new();
        if f.clamped {
            flags.push("clamped");
        }
        if f.corrected {
            flags.push("corrected");
        }
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            f.name,
            f.kind.name(),
            sig12(f.raw),
            sig12(f.magnitude),
            flags.join("|")
        ));
    }
    for e in &report.excluded {
        out.push_str(&format!(
            "{},{},,,excluded:{}\n",
            e.name,
            e.kind.name(),
            e.reason.name()
        ));
    }
    out
}

pub fn effects_json(report: &EffectReport) -> String {
    let features: Vec<Json> = report
        .per_feature
        .iter()
        .map(|f| {
            Json::obj(vec![
                ("feature", Json::Str(f.name.clone())),
                ("kind", Json::Str(f.kind.name().into())),
                ("raw", Json::float_or_token(f.raw)),
                ("magnitude", Json::Float(f.magnitude)),
                ("clamped", Json::Bool(f.clamped)),
                ("corrected", Json::Bool(f.corrected)),
            ])
        })
        .collect();
    let excluded: Vec<Json> = report
        .excluded
        .iter()
        .map(|e| {
            Json::obj(vec![
                ("feature", Json::Str(e.name.clone())),
                ("kind", Json::Str(e.kind.name().into())),
                ("reason", Json::Str(e.reason.name().into())),
            ])
        })
        .collect();
    Json::obj(vec![
        ("label", Json::Str(report.label_name.clone())),
        ("average", Json::Float(report.average)),
        ("features", Json::Arr(features)),
        ("excluded", Json::Arr(excluded)),
    ])
    .render()
}

/// All curve points as CSV: `subset,family,n_train,train_error,valid_error`.
pub fn curves_csv(curves: &[LearningCurve]) -> String {
    let mut out = String::from("subset,family,n_train,train_error,valid_error\n");
    for curve in curves {
        for p in &curve.points {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                curve.subset,
                curve.family.name(),
                p.n_train,
                sig12(p.train_error),
                sig12(p.valid_error)
            ));
        }
    }
    out
}

/// Human-readable run diagnostics: data counts and skipped units.
pub fn diagnostics_text(lines: &[String], skipped: &[SkipEvent]) -> String {
    let mut out = String::new();
    for line in lines {
        out.push_str(line);
        out.push('\n');
    }
    for skip in skipped {
        out.push_str(&format!("skipped {}: {}\n", skip.unit, skip.reason));
    }
    out
}

//! The three experiment commands: `exp1-subsets`, `exp1-ablation`, `exp2`.

use std::time::Instant;

use clap::Args;

use suffstat_core::experiments::{
    assemble_curve_experiment, assemble_subset_experiment, plan_curves, plan_subsets,
    run_curve_task, run_subset_task, CorrelationSummary, ExperimentConfig, ExperimentResult,
};
use suffstat_core::{experiments, Error};

use super::{env_seed, load, write_output, InputOpts, LoadedData, RunOpts};
use crate::config::{self, SeedSource};
use crate::fmt::sig12;
use crate::manifest::RunManifest;
use crate::pool::{effective_jobs, parallel_map};
use crate::{reports, svg, CliError, CliResult};

#[derive(Args, Debug, Clone)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub input: InputOpts,

    #[command(flatten)]
    pub run: RunOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Exp1Subsets,
    Exp1Ablation,
    Exp2,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Exp1Subsets => "exp1-subsets",
            Variant::Exp1Ablation => "exp1-ablation",
            Variant::Exp2 => "exp2",
        }
    }
}

struct RunContext {
    loaded: LoadedData,
    config: ExperimentConfig,
    seed_source: SeedSource,
    jobs: usize,
}

fn prepare(args: &ExperimentArgs) -> CliResult<RunContext> {
    let loaded = load(&args.input)?;
    let pairs = match &args.run.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            config::parse_pairs(&text)?
        }
        None => Vec::new(),
    };
    let (config, seed_source) = config::resolve(&pairs, args.run.seed, env_seed()?)?;
    Ok(RunContext {
        loaded,
        config,
        seed_source,
        jobs: effective_jobs(args.run.jobs),
    })
}

fn base_diagnostics(ctx: &RunContext) -> Vec<String> {
    vec![
        format!("raw rows: {}", ctx.loaded.raw_rows),
        format!("cleaned rows: {}", ctx.loaded.cleaned_rows),
        format!(
            "working request: {} subsets x {} rows = {}",
            ctx.config.subsets,
            ctx.config.subset_size,
            ctx.config.subsets * ctx.config.subset_size
        ),
    ]
}

fn summary_line(name: &str, summary: &Result<CorrelationSummary, Error>) -> String {
    match summary {
        Ok(s) => format!(
            "{name}: {} points, r_squared = {}{}",
            s.n_points,
            sig12(s.r_squared),
            if s.zero_variance { " (zero variance)" } else { "" }
        ),
        Err(e) => format!("{name}: no summary ({e})"),
    }
}

pub fn run(variant: Variant, args: &ExperimentArgs) -> CliResult<()> {
    let started = Instant::now();
    let ctx = prepare(args)?;
    let data = &ctx.loaded.data;
    let prefix = format!("{}-{}", variant.name(), data.label_name);
    let out_dir = &args.run.out_dir;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", out_dir.display())))?;

    let mut outputs = Vec::new();
    let mut summaries = Vec::new();

    match variant {
        Variant::Exp1Subsets | Variant::Exp1Ablation => {
            let result = match variant {
                Variant::Exp1Subsets => {
                    let plan = plan_subsets(&ctx.config, data).map_err(CliError::from)?;
                    let outcomes = parallel_map(ctx.jobs, &plan.tasks, |task| {
                        run_subset_task(&ctx.config, data, task)
                    });
                    let outcomes: Result<Vec<_>, Error> = outcomes.into_iter().collect();
                    assemble_subset_experiment(&ctx.config, plan.skipped, outcomes?)
                }
                _ => {
                    let plan =
                        experiments::plan_ablation(&ctx.config, data).map_err(CliError::from)?;
                    let outcomes = parallel_map(ctx.jobs, &plan.tasks, |task| {
                        experiments::run_ablation_task(&ctx.config, data, &plan.split, task)
                    });
                    let outcomes: Result<Vec<_>, Error> = outcomes.into_iter().collect();
                    experiments::assemble_ablation_experiment(&ctx.config, plan.skipped, outcomes?)
                }
            };
            write_scatter_outputs(&ctx, variant, args, &prefix, &result, &mut outputs)?;
            summaries.push(summary_line(&prefix, &result.summary));
            finish(
                &ctx, variant, args, &prefix, outputs, started, &summaries,
                result.summary.is_err(),
            )
        }
        Variant::Exp2 => {
            let plan = plan_curves(&ctx.config, data).map_err(CliError::from)?;
            let results =
                parallel_map(ctx.jobs, &plan.tasks, |task| run_curve_task(&ctx.config, data, task));
            let result = assemble_curve_experiment(&ctx.config, plan.skipped, &plan.tasks, results);

            let diagnostics = reports::diagnostics_text(&base_diagnostics(&ctx), &result.skipped);
            if args.run.format.csv() {
                write_output(
                    out_dir,
                    &format!("{prefix}.log-records.csv"),
                    &reports::records_csv(
                        variant.name(),
                        &data.label_name,
                        &result.log_records,
                        &result.log_averaged,
                        true,
                    ),
                    &mut outputs,
                )?;
                write_output(
                    out_dir,
                    &format!("{prefix}.gap-records.csv"),
                    &reports::records_csv(
                        variant.name(),
                        &data.label_name,
                        &result.gap_records,
                        &result.gap_averaged,
                        true,
                    ),
                    &mut outputs,
                )?;
                write_output(
                    out_dir,
                    &format!("{prefix}.curves.csv"),
                    &reports::curves_csv(&result.curves),
                    &mut outputs,
                )?;
            }
            if args.run.format.json() {
                write_output(
                    out_dir,
                    &format!("{prefix}.log-summary.json"),
                    &reports::summary_json(variant.name(), &data.label_name, &result.log_summary),
                    &mut outputs,
                )?;
                write_output(
                    out_dir,
                    &format!("{prefix}.gap-summary.json"),
                    &reports::summary_json(variant.name(), &data.label_name, &result.gap_summary),
                    &mut outputs,
                )?;
            }
            write_output(
                out_dir,
                &format!("{prefix}.log-scatter.svg"),
                &svg::scatter_svg(
                    &format!("{prefix}: validation log-slope vs effect size"),
                    "averaged effect size",
                    "log slope b",
                    &result.log_records,
                    result.log_summary.as_ref().ok(),
                ),
                &mut outputs,
            )?;
            write_output(
                out_dir,
                &format!("{prefix}.gap-scatter.svg"),
                &svg::scatter_svg(
                    &format!("{prefix}: error-gap slope vs effect size"),
                    "averaged effect size",
                    "gap slope",
                    &result.gap_records,
                    result.gap_summary.as_ref().ok(),
                ),
                &mut outputs,
            )?;
            for curve in &result.curves {
                let family = curve.family.name();
                write_output(
                    out_dir,
                    &format!("{prefix}.curves/curve-{:03}-{}.svg", curve.subset, family),
                    &svg::curve_svg(
                        &format!("subset {} / {}", curve.subset, family),
                        curve,
                    ),
                    &mut outputs,
                )?;
            }
            write_output(
                out_dir,
                &format!("{prefix}.diagnostics.txt"),
                &diagnostics,
                &mut outputs,
            )?;
            summaries.push(summary_line(
                &format!("{prefix} log-slope"),
                &result.log_summary,
            ));
            summaries.push(summary_line(
                &format!("{prefix} gap-slope"),
                &result.gap_summary,
            ));
            finish(
                &ctx, variant, args, &prefix, outputs, started, &summaries,
                result.log_summary.is_err() || result.gap_summary.is_err(),
            )
        }
    }
}

fn write_scatter_outputs(
    ctx: &RunContext,
    variant: Variant,
    args: &ExperimentArgs,
    prefix: &str,
    result: &ExperimentResult,
    outputs: &mut Vec<String>,
) -> CliResult<()> {
    let data = &ctx.loaded.data;
    let out_dir = &args.run.out_dir;
    if args.run.format.csv() {
        write_output(
            out_dir,
            &format!("{prefix}.records.csv"),
            &reports::records_csv(
                variant.name(),
                &data.label_name,
                &result.records,
                &result.supplementary,
                false,
            ),
            outputs,
        )?;
    }
    if args.run.format.json() {
        write_output(
            out_dir,
            &format!("{prefix}.summary.json"),
            &reports::summary_json(variant.name(), &data.label_name, &result.summary),
            outputs,
        )?;
    }
    write_output(
        out_dir,
        &format!("{prefix}.scatter.svg"),
        &svg::scatter_svg(
            &format!("{prefix}: accuracy vs effect size"),
            "averaged effect size",
            "validation accuracy",
            &result.records,
            result.summary.as_ref().ok(),
        ),
        outputs,
    )?;
    write_output(
        out_dir,
        &format!("{prefix}.diagnostics.txt"),
        &reports::diagnostics_text(&base_diagnostics(ctx), &result.skipped),
        outputs,
    )?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish(
    ctx: &RunContext,
    variant: Variant,
    args: &ExperimentArgs,
    prefix: &str,
    mut outputs: Vec<String>,
    started: Instant,
    summaries: &[String],
    summary_failed: bool,
) -> CliResult<()> {
    let manifest = RunManifest {
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        command: variant.name().to_string(),
        label: ctx.loaded.data.label_name.clone(),
        master_seed: ctx.config.master_seed,
        seed_source: ctx.seed_source.name().to_string(),
        input_digest: ctx.loaded.digest.clone(),
        config: config::snapshot(&ctx.config),
        outputs: outputs.clone(),
        timings_ms: vec![("total".to_string(), started.elapsed().as_millis())],
    };
    write_output(
        &args.run.out_dir,
        &format!("{prefix}.manifest.json"),
        &manifest.to_json(),
        &mut outputs,
    )?;

    for line in summaries {
        println!("{line}");
    }
    println!(
        "{}: wrote {} files to {}",
        prefix,
        outputs.len(),
        args.run.out_dir.display()
    );

    if summary_failed {
        return Err(CliError::runtime(format!(
            "{prefix}: correlation summary unavailable (see {prefix}.summary outputs)"
        )));
    }
    Ok(())
}

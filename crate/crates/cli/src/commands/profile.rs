//! `suffstat profile`: per-feature and average effect sizes of one dataset.

use clap::Args;

use suffstat_core::effects::{average_effect_size, EffectOptions};

use super::{load, write_output, InputOpts, ReportFormat};
use crate::fmt::sig12;
use crate::{reports, CliError, CliResult};

#[derive(Args, Debug, Clone)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub input: InputOpts,

    /// Directory for the report files.
    #[arg(long, default_value = "suffstat-out")]
    pub out_dir: std::path::PathBuf,

    #[arg(long, value_enum, default_value_t = ReportFormat::All)]
    pub format: ReportFormat,

    /// Magnitude cap for infinite Cohen's d.
    #[arg(long, default_value_t = 10.0)]
    pub d_clamp: f64,
}

pub fn run(args: &ProfileArgs) -> CliResult<()> {
    let loaded = load(&args.input)?;
    let data = &loaded.data;

    let report = average_effect_size(
        &data.raw,
        &data.labels,
        &data.label_name,
        EffectOptions {
            d_clamp: args.d_clamp,
        },
    )
    .map_err(|e| CliError::usage(e.to_string()))?;

    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", args.out_dir.display())))?;

    let prefix = format!("profile-{}", data.label_name);
    let mut outputs = Vec::new();
    if args.format.csv() {
        write_output(
            &args.out_dir,
            &format!("{prefix}.effects.csv"),
            &reports::effects_csv(&report),
            &mut outputs,
        )?;
    }
    if args.format.json() {
        write_output(
            &args.out_dir,
            &format!("{prefix}.effects.json"),
            &reports::effects_json(&report),
            &mut outputs,
        )?;
    }

    println!(
        "profile: label '{}', {} rows ({} before cleaning), average effect size {} over {} features ({} excluded)",
        data.label_name,
        loaded.cleaned_rows,
        loaded.raw_rows,
        sig12(report.average),
        report.per_feature.len(),
        report.excluded.len()
    );
    for name in &outputs {
        println!("wrote {}", args.out_dir.join(name).display());
    }
    Ok(())
}

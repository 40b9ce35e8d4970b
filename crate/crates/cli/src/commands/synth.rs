//! `suffstat synth`: generate a dataset with controlled effect targets.
//!
//! Spec file format (key = value lines, `#` comments allowed):
//!
//! ```text
//! n_rows = 1000
//! balance = 0.5
//! seed = 42
//! features = numeric:0.8, categorical:4, numeric:0
//! ```
//!
//! A `numeric:<d>` entry targets Cohen's d, a `categorical:<or>` entry
//! targets an odds ratio (> 0).

use clap::Args;

use suffstat_core::synth::{dataset_to_csv, synth_dataset, FeatureTarget, SynthSpec};

use crate::{CliError, CliResult};

#[derive(Args, Debug, Clone)]
pub struct SynthArgs {
    /// Generator spec file.
    #[arg(long)]
    pub spec: std::path::PathBuf,

    /// Output CSV path.
    #[arg(long)]
    pub out: std::path::PathBuf,
}

pub fn parse_spec(text: &str) -> CliResult<SynthSpec> {
    let pairs = crate::config::parse_pairs(text)?;
    let mut n_rows = None;
    let mut balance = 0.5;
    let mut seed = 42;
    let mut features = Vec::new();

    for (key, value) in &pairs {
        match key.as_str() {
            "n_rows" => {
                n_rows = Some(value.parse().map_err(|_| {
                    CliError::usage(format!("spec key 'n_rows': cannot parse '{value}'"))
                })?)
            }
            "balance" => {
                balance = value.parse().map_err(|_| {
                    CliError::usage(format!("spec key 'balance': cannot parse '{value}'"))
                })?
            }
            "seed" => {
                seed = value.parse().map_err(|_| {
                    CliError::usage(format!("spec key 'seed': cannot parse '{value}'"))
                })?
            }
            "features" => {
                for (i, entry) in value.split(',').enumerate() {
                    features.push(parse_feature(i, entry.trim())?);
                }
            }
            other => return Err(CliError::usage(format!("unknown spec key '{other}'"))),
        }
    }

    let spec = SynthSpec {
        n_rows: n_rows.ok_or_else(|| CliError::usage("spec key 'n_rows' is required"))?,
        balance,
        features,
        seed,
    };
    spec.validate().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(spec)
}

fn parse_feature(index: usize, entry: &str) -> CliResult<FeatureTarget> {
    let (kind, target) = entry.split_once(':').ok_or_else(|| {
        CliError::usage(format!("feature {index}: expected kind:target, got '{entry}'"))
    })?;
    let target: f64 = target.trim().parse().map_err(|_| {
        CliError::usage(format!("feature {index}: cannot parse target '{target}'"))
    })?;
    match kind.trim() {
        "numeric" => Ok(FeatureTarget::NumericD(target)),
        "categorical" => {
            if target <= 0.0 {
                return Err(CliError::usage(format!(
                    "feature {index}: odds-ratio target must be > 0, got {target}"
                )));
            }
            Ok(FeatureTarget::CategoricalOr(target))
        }
        other => Err(CliError::usage(format!("feature {index}: unknown kind '{other}'"))),
    }
}

pub fn run(args: &SynthArgs) -> CliResult<()> {
    let text = std::fs::read_to_string(&args.spec)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.spec.display())))?;
    let spec = parse_spec(&text)?;
    let data = synth_dataset(&spec).map_err(|e| CliError::usage(e.to_string()))?;
    let csv = dataset_to_csv(&data);
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| {
                CliError::runtime(format!("cannot create {}: {e}", parent.display()))
            })?;
        }
    }
    std::fs::write(&args.out, csv)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", args.out.display())))?;
    println!(
        "synth: wrote {} rows x {} features to {}",
        spec.n_rows,
        spec.features.len(),
        args.out.display()
    );
    Ok(())
}

//! Command implementations and their argument structs.

pub mod experiment;
pub mod profile;
pub mod synth;

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};

use suffstat_core::ingest::{self, ExperimentData, FeatureSchema};

use crate::manifest::file_digest;
use crate::{CliError, CliResult};

/// Input selection and schema flags shared by every data-consuming command.
#[derive(Args, Debug, Clone)]
pub struct InputOpts {
    /// Input CSV file.
    #[arg(long)]
    pub input: PathBuf,

    /// Use the built-in census schema (14 features plus the income label;
    /// the file carries no header line).
    #[arg(long)]
    pub adult: bool,

    /// Schema sidecar file, one `name=kind` line per column
    /// (kind: numeric | categorical).
    #[arg(long, conflicts_with = "adult")]
    pub schema: Option<PathBuf>,

    /// Treat the first input line as a header naming the columns.
    #[arg(long)]
    pub header: bool,

    /// Token marking a missing cell; rows containing it are dropped.
    #[arg(long, default_value = ingest::DEFAULT_NULL_TOKEN)]
    pub null_token: String,

    /// Label column name (defaults to `income` with --adult).
    #[arg(long)]
    pub label: Option<String>,

    /// Label token mapped to class 1 (defaults to `>50K` for the income
    /// label with --adult).
    #[arg(long)]
    pub positive: Option<String>,
}

/// Execution flags shared by the experiment commands.
#[derive(Args, Debug, Clone)]
pub struct RunOpts {
    /// Master seed; falls back to the config file, then SUFFSTAT_SEED,
    /// then 42.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Key-value configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Directory for report and plot files.
    #[arg(long, default_value = "suffstat-out")]
    pub out_dir: PathBuf,

    /// Which report formats to write (plots are always written).
    #[arg(long, value_enum, default_value_t = ReportFormat::All)]
    pub format: ReportFormat,

    /// Worker threads for experiment fan-out (default: available cores).
    /// Never affects output bytes.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    All,
}

impl ReportFormat {
    pub fn csv(self) -> bool {
        matches!(self, ReportFormat::Csv | ReportFormat::All)
    }

    pub fn json(self) -> bool {
        matches!(self, ReportFormat::Json | ReportFormat::All)
    }
}

/// A parsed, cleaned, encoded dataset plus provenance counters.
pub struct LoadedData {
    pub data: ExperimentData,
    pub digest: String,
    pub raw_rows: usize,
    pub cleaned_rows: usize,
}

/// Reads and prepares the input per the flags: parse, drop incomplete rows,
/// binarize the label, encode, standardize.
pub fn load(opts: &InputOpts) -> CliResult<LoadedData> {
    let bytes = std::fs::read(&opts.input)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", opts.input.display())))?;
    let digest = file_digest(&bytes);
    let text = String::from_utf8_lossy(&bytes);

    let base_schema = if opts.adult {
        FeatureSchema::adult()
    } else {
        let path = opts.schema.as_ref().ok_or_else(|| {
            CliError::usage("either --adult or --schema <file> is required".to_string())
        })?;
        let sidecar = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        FeatureSchema::parse_sidecar(&sidecar).map_err(|e| CliError::usage(e.to_string()))?
    };

    let label = match &opts.label {
        Some(name) => name.clone(),
        None if opts.adult => "income".to_string(),
        None => return Err(CliError::usage("--label is required without --adult".to_string())),
    };
    let schema = base_schema
        .with_label(&label)
        .map_err(|e| CliError::usage(e.to_string()))?;

    let positive = match &opts.positive {
        Some(token) => token.clone(),
        None if opts.adult && label == "income" => ">50K".to_string(),
        None => {
            return Err(CliError::usage(format!(
                "--positive is required for label '{label}'"
            )))
        }
    };

    let table = ingest::parse_table(&text, opts.header, &opts.null_token)
        .map_err(|e| CliError::usage(format!("{}: {e}", opts.input.display())))?;
    let raw_rows = table.n_rows();
    let cleaned = ingest::drop_incomplete_rows(&table);
    let cleaned_rows = cleaned.n_rows();
    if cleaned_rows == 0 {
        return Err(CliError::usage(format!(
            "{}: every row contains a null cell",
            opts.input.display()
        )));
    }

    let data = ExperimentData::from_table(&cleaned, &schema, &positive)
        .map_err(|e| CliError::usage(e.to_string()))?;

    let positives = data.positive_count();
    if positives == 0 {
        return Err(CliError::usage(format!(
            "positive token '{positive}' does not appear in label column '{label}'"
        )));
    }
    if positives == data.n_rows() {
        return Err(CliError::usage(format!(
            "label column '{label}' contains only the positive token"
        )));
    }

    Ok(LoadedData {
        data,
        digest,
        raw_rows,
        cleaned_rows,
    })
}

/// Writes one output file and records its name for the manifest.
pub fn write_output(
    dir: &Path,
    name: &str,
    contents: &str,
    outputs: &mut Vec<String>,
) -> CliResult<()> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", parent.display())))?;
    }
    std::fs::write(&path, contents)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", path.display())))?;
    outputs.push(name.to_string());
    Ok(())
}

/// SUFFSTAT_SEED fallback, if set.
pub fn env_seed() -> CliResult<Option<u64>> {
    match std::env::var("SUFFSTAT_SEED") {
        Ok(value) => value
            .parse()
            .map(Some)
            .map_err(|_| CliError::usage(format!("SUFFSTAT_SEED='{value}' is not a valid seed"))),
        Err(_) => Ok(None),
    }
}

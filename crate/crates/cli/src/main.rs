use clap::Parser;

use suffstat_cli::commands::experiment::{self, ExperimentArgs, Variant};
use suffstat_cli::commands::profile::{self, ProfileArgs};
use suffstat_cli::commands::synth::{self, SynthArgs};

/// Effect-size statistics and data-sufficiency experiments for tabular
/// binary classification.
#[derive(Parser, Debug)]
#[command(name = "suffstat", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand, Debug)]
enum Command {
    /// Report per-feature and average effect sizes of a dataset.
    Profile(ProfileArgs),
    /// Accuracy vs effect size over k row subsets with identical features.
    Exp1Subsets(ExperimentArgs),
    /// Accuracy vs effect size with one feature dropped at a time.
    Exp1Ablation(ExperimentArgs),
    /// Learning-curve slopes vs effect size over the same subsets.
    Exp2(ExperimentArgs),
    /// Generate a synthetic dataset with controlled effect targets.
    Synth(SynthArgs),
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Profile(args) => profile::run(args),
        Command::Exp1Subsets(args) => experiment::run(Variant::Exp1Subsets, args),
        Command::Exp1Ablation(args) => experiment::run(Variant::Exp1Ablation, args),
        Command::Exp2(args) => experiment::run(Variant::Exp2, args),
        Command::Synth(args) => synth::run(args),
    };
    if let Err(error) = result {
        eprintln!("suffstat: {error}");
        std::process::exit(error.exit_code());
    }
}

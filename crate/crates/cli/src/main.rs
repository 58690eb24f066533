//! `codemix`: pipeline driver for code-switching corpus analysis.
//!
//! Four subcommands cover the full workflow:
//!
//! - `filter`  — partition a sentiment TSV by script and report counts
//! - `train`   — fit the token tagger on gold tags, evaluate a held-out split
//! - `tag`     — tag the romanized analysis subset with a model or external tags
//! - `analyze` — per-utterance metrics, group summaries, regression fits,
//!   nested-model comparisons, and Q-Q data
//!
//! Exit codes: 0 success, 2 input-format error (including I/O), 3
//! statistical degeneracy, 4 corpus/tag alignment error.

mod analyze;
mod ops;

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use codemix::metrics::{Aggregation, SwitchMode};
use codemix::Error;

#[derive(Parser)]
#[command(name = "codemix", version, about = "Code-switching corpus analysis pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition a sentiment TSV by script and write the filter report.
    Filter(FilterArgs),
    /// Train the token tagger on a gold corpus and evaluate a held-out split.
    Train(TrainArgs),
    /// Tag the romanized analysis subset of a dataset.
    Tag(TagArgs),
    /// Compute metrics, group summaries, model fits, and diagnostics.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
struct FilterArgs {
    /// Sentiment dataset TSV (`text<TAB>label` records).
    #[arg(long)]
    input: PathBuf,
    /// Directory for filter_report.json, romanized.tsv, tamil_script.tsv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct TrainArgs {
    /// Gold-tagged corpus in CoNLL form (`token<TAB>tag`, blank-line separated).
    #[arg(long)]
    gold: PathBuf,
    /// Held-out validation fraction.
    #[arg(long, default_value_t = 0.2)]
    split: f64,
    /// Seed for the train/validation shuffle.
    #[arg(long, default_value_t = 13)]
    seed: u64,
    /// Directory for model.json and eval_report.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
#[command(group = ArgGroup::new("source").required(true).args(["model", "tags"]))]
struct TagArgs {
    /// Sentiment dataset TSV to tag.
    #[arg(long)]
    input: PathBuf,
    /// Trained model JSON; tags the analysis subset with it.
    #[arg(long)]
    model: Option<PathBuf>,
    /// External CoNLL tags covering every romanized utterance in file order.
    #[arg(long)]
    tags: Option<PathBuf>,
    /// Directory for tagged.conll.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Sentiment dataset TSV; supplies labels and subset selection.
    #[arg(long)]
    input: PathBuf,
    /// CoNLL tags aligned with the romanized analysis subset in file order.
    #[arg(long)]
    tags: PathBuf,
    /// How language switches are counted around `na` tokens.
    #[arg(long, value_enum, default_value_t = SwitchModeArg::Strict)]
    switch_mode: SwitchModeArg,
    /// How per-group proportions are aggregated in the summary table.
    #[arg(long, value_enum, default_value_t = AggregationArg::Macro)]
    aggregation: AggregationArg,
    /// Directory for the report bundle.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also emit the one-decimal percent presentation of the group table.
    #[arg(long)]
    paper_rounding: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SwitchModeArg {
    /// Count boundaries where both neighbors are language tokens.
    Strict,
    /// Delete `na` tokens first, then count boundaries.
    Collapse,
}

impl From<SwitchModeArg> for SwitchMode {
    fn from(arg: SwitchModeArg) -> SwitchMode {
        match arg {
            SwitchModeArg::Strict => SwitchMode::StrictBoundary,
            SwitchModeArg::Collapse => SwitchMode::CollapseNa,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AggregationArg {
    /// Mean of per-utterance proportions.
    Macro,
    /// Pool token counts across the group before dividing.
    Micro,
}

impl From<AggregationArg> for Aggregation {
    fn from(arg: AggregationArg) -> Aggregation {
        match arg {
            AggregationArg::Macro => Aggregation::Macro,
            AggregationArg::Micro => Aggregation::Micro,
        }
    }
}

/// Maps library errors onto the documented exit codes.
fn exit_code(error: &Error) -> i32 {
    match error {
        // Malformed or unreadable inputs.
        Error::FieldCount { .. }
        | Error::UnknownSentiment { .. }
        | Error::UnknownTag { .. }
        | Error::EmptyText { .. }
        | Error::EmptyToken { .. }
        | Error::TokenWhitespace { .. }
        | Error::InvalidFraction(_)
        | Error::EmptyCorpus
        | Error::EmptyUtterance
        | Error::InvalidConfig(_)
        | Error::ModelFormat(_)
        | Error::Io(_) => 2,
        // Corpus/tag alignment failures.
        Error::UtteranceCountMismatch { .. } | Error::TokenCountMismatch { .. } => 4,
        // Everything else is statistical degeneracy.
        _ => 3,
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Filter(args) => ops::cmd_filter(&args.input, &args.out),
        Command::Train(args) => ops::cmd_train(&args.gold, args.split, args.seed, &args.out),
        Command::Tag(args) => {
            ops::cmd_tag(&args.input, args.model.as_deref(), args.tags.as_deref(), &args.out)
        }
        Command::Analyze(args) => analyze::cmd_analyze(
            &args.input,
            &args.tags,
            args.switch_mode.into(),
            args.aggregation.into(),
            &args.out,
            args.paper_rounding,
        ),
    };

    if let Err(error) = result {
        eprintln!("error: {error}");
        std::process::exit(exit_code(&error));
    }
}

//! `levelforge` command-line interface.

mod cmd;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use levelforge::agreement::Metric;
use levelforge::corpus::io::Format;
use levelforge::corpus::{ContainmentMode, SimilaritySource};
use levelforge::prompts::Strategy;
use levelforge::Scheme;

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "levelforge", version, about = "Complexity-level paraphrase datasets and evaluation")]
struct Cli {
    /// Worker threads for per-line work. Outputs do not depend on it.
    #[arg(long, global = true, env = "LEVELFORGE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-text word, syllable and sentence counts with FKGL.
    Analyze(AnalyzeArgs),
    /// Dedup, filter, label, bucket, build task datasets and split them.
    Pipeline(PipelineArgs),
    /// Dedup and filter pairs, writing the survivors.
    Filter(FilterArgs),
    /// Attach source and target levels to pairs.
    Label(LabelArgs),
    /// Assign each leveled pair a task (d/u/s).
    Bucket(BucketArgs),
    /// Build the three task datasets from bucketed pairs and split them.
    Build(BuildArgs),
    /// Seeded train/valid/test split of a record file.
    Split(SplitArgs),
    /// Prepend task prompts to dataset lines.
    Prompt(PromptArgs),
    /// Score system outputs: SARI, SARI-R, FKGL, copy rate, repetition.
    Score(ScoreArgs),
    /// Compare predicted CEFR levels with gold levels.
    ClassifierEval(ClassifierArgs),
    /// Krippendorff's alpha, majority gold labels and Likert summaries.
    Agree(AgreeArgs),
    /// Render a dataset manifest as a table.
    Report(ReportArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// JSON lines with a "text" (or "source") field, TSV (first column), or plain text.
    input: PathBuf,
    /// One level per line, aligned with the input texts.
    #[arg(long)]
    levels: Option<PathBuf>,
    #[arg(long, default_value = "cefr6")]
    scheme: Scheme,
    /// Where to write per-level means (JSON); stderr when omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Default)]
struct FilterFlags {
    /// Lower edge of the similarity band, inclusive (0.60).
    #[arg(long)]
    sim_low: Option<f64>,
    /// Upper edge of the similarity band, inclusive (0.80).
    #[arg(long)]
    sim_high: Option<f64>,
    /// Fewest words either side may have (3).
    #[arg(long)]
    min_words: Option<usize>,
    #[arg(long, value_enum)]
    containment: Option<ContainmentArg>,
    /// Where similarity scores come from.
    #[arg(long, value_enum)]
    similarity: Option<SimilarityArg>,
    /// One similarity per line, aligned with the input pairs.
    #[arg(long)]
    similarity_file: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    /// JSON configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Pairs as JSON lines or TSV.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output directory.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// cefr6, cefr3, newsela or fkgl.
    #[arg(long)]
    scheme: Option<Scheme>,
    #[arg(long)]
    seed: Option<u64>,
    /// Classifier levels per sentence, instead of levels on the pairs.
    #[arg(long)]
    predictions: Option<PathBuf>,
    /// Dataset file format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[command(flatten)]
    filter: FilterFlags,
}

#[derive(Args)]
struct FilterArgs {
    input: PathBuf,
    /// Carry existing source/target levels through under this scheme.
    #[arg(long)]
    scheme: Option<Scheme>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Drop-reason histogram (JSON); stderr when omitted.
    #[arg(long)]
    drops: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[command(flatten)]
    filter: FilterFlags,
}

#[derive(Args)]
struct LabelArgs {
    input: PathBuf,
    #[arg(long, default_value = "cefr6")]
    scheme: Scheme,
    /// Prediction file; not needed for fkgl.
    #[arg(long)]
    predictions: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    drops: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct BucketArgs {
    input: PathBuf,
    #[arg(long, default_value = "cefr6")]
    scheme: Scheme,
    /// Overrides the scheme's different-level gap.
    #[arg(long)]
    level_gap: Option<f64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    drops: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct BuildArgs {
    input: PathBuf,
    #[arg(long, default_value = "cefr6")]
    scheme: Scheme,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Pairs per task dataset; defaults to as many as all three can share.
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, value_delimiter = ',', num_args = 3)]
    ratios: Option<Vec<f64>>,
    /// Output directory.
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct SplitArgs {
    input: PathBuf,
    #[arg(long, default_value = "cefr6")]
    scheme: Scheme,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', num_args = 3)]
    ratios: Option<Vec<f64>>,
    /// Output directory for train/valid/test files.
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct PromptArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_strategy)]
    strategy: Strategy,
    #[arg(long, default_value = "cefr6")]
    scheme: Scheme,
    /// Use one target level for every line (inference).
    #[arg(long)]
    fixed_level: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Metadata sidecar; defaults to `<output>.meta.json` when writing to a file.
    #[arg(long)]
    metadata: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct ScoreArgs {
    /// JSON lines with "source", "references" and, unless --outputs is given, "output".
    #[arg(long = "eval")]
    eval: PathBuf,
    /// System outputs, one per line, aligned with the evaluation set.
    #[arg(long)]
    outputs: Option<PathBuf>,
    /// N-gram order for repetition and SARI-R.
    #[arg(long, default_value_t = 4)]
    ngram: usize,
    /// Per-instance scores as TSV.
    #[arg(long)]
    per_instance: Option<PathBuf>,
    /// Also score the references leave-one-out.
    #[arg(long)]
    reference_sari: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifierArgs {
    /// `id<TAB>level` TSV or JSON lines {"id","level"}.
    #[arg(long)]
    gold: PathBuf,
    #[arg(long)]
    pred: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AgreeArgs {
    /// TSV: item_id, rater_id, group, value.
    ratings: PathBuf,
    #[arg(long, default_value = "nominal", value_parser = parse_metric)]
    metric: Metric,
    /// Minimum number of agreeing raters for a gold label.
    #[arg(long)]
    threshold: Option<usize>,
    /// Resolved gold labels (TSV).
    #[arg(long)]
    gold_out: Option<PathBuf>,
    /// Per-group Likert means, 95% intervals and ordinal alpha.
    #[arg(long)]
    likert: bool,
    /// Print an aligned table instead of JSON (with --likert).
    #[arg(long)]
    table: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    manifest: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Jsonl,
    Tsv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Jsonl => Format::Jsonl,
            FormatArg::Tsv => Format::Tsv,
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ContainmentArg {
    Tokens,
    Substring,
    Off,
}

impl From<ContainmentArg> for ContainmentMode {
    fn from(c: ContainmentArg) -> Self {
        match c {
            ContainmentArg::Tokens => ContainmentMode::Tokens,
            ContainmentArg::Substring => ContainmentMode::Substring,
            ContainmentArg::Off => ContainmentMode::Off,
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SimilarityArg {
    Column,
    File,
    Lexical,
    None,
}

impl From<SimilarityArg> for SimilaritySource {
    fn from(s: SimilarityArg) -> Self {
        match s {
            SimilarityArg::Column => SimilaritySource::Column,
            SimilarityArg::File => SimilaritySource::File,
            SimilarityArg::Lexical => SimilaritySource::Lexical,
            SimilarityArg::None => SimilaritySource::None,
        }
    }
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: levelforge::Error| e.to_string())
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: levelforge::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Analyze(a) => cmd::analyze::run(a),
        Command::Pipeline(a) => cmd::pipeline::run(a),
        Command::Filter(a) => cmd::stages::filter(a),
        Command::Label(a) => cmd::stages::label(a),
        Command::Bucket(a) => cmd::stages::bucket(a),
        Command::Build(a) => cmd::stages::build(a),
        Command::Split(a) => cmd::stages::split(a),
        Command::Prompt(a) => cmd::prompt::run(a),
        Command::Score(a) => cmd::score::run(a),
        Command::ClassifierEval(a) => cmd::classify::run(a),
        Command::Agree(a) => cmd::agree::run(a),
        Command::Report(a) => cmd::report::run(a),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("levelforge: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

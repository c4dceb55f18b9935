//! `huetone` CLI: score skin color in images and run fairness audits over
//! the scores.
//!
//! Exit codes are a stable contract for CI: 0 on success, 1 for data or
//! processing failures in strict mode, 2 for usage and format errors.

mod commands;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Fixed default seed so audits are reproducible unless a seed is chosen.
const DEFAULT_SEED: u64 = 0;

#[derive(Parser)]
#[command(name = "huetone", version, about = "Multidimensional skin color scoring and fairness audits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert sRGB colors to CIELAB, hue angle, and ITA (one JSON object
    /// per color).
    Convert(ConvertArgs),
    /// Score every image in a manifest, writing JSON-Lines records.
    Score(ScoreArgs),
    /// Cross-tabulate and plot a batch of scores.
    Audit(AuditArgs),
    /// Pairwise-preference audit: pair generation, stub deciders, rating.
    Elo(EloArgs),
    /// Accuracy disaggregated by skin tone, hue, and intersections.
    Disagg(DisaggArgs),
    /// Welch t-tests with Bonferroni correction over CSV columns.
    Stats(StatsArgs),
}

#[derive(Args)]
struct ConvertArgs {
    /// Colors as `r,g,b` or `#rrggbb`.
    #[arg(required = true)]
    colors: Vec<String>,
}

#[derive(Args)]
struct ScoreArgs {
    /// Manifest CSV: `id,image_path,mask_path[,group]`.
    #[arg(long)]
    manifest: PathBuf,
    /// Output scores file (JSON Lines, manifest order).
    #[arg(long)]
    out: PathBuf,
    /// Errors sidecar; defaults to `<out>.errors.jsonl`.
    #[arg(long)]
    errors: Option<PathBuf>,
    /// Clustering seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Cluster count.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Clusters kept by highest lightness.
    #[arg(long, default_value_t = 3)]
    keep_top: usize,
    /// Clustering iteration cap.
    #[arg(long, default_value_t = 100)]
    max_iters: usize,
    /// Abort on the first image failure instead of writing the sidecar.
    #[arg(long)]
    strict: bool,
    /// Worker threads for batch scoring; 0 uses all cores. Output order
    /// is manifest order either way.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct AuditArgs {
    /// Scores file produced by `score`.
    #[arg(long)]
    scores: PathBuf,
    /// Directory for report.json, crosstab.csv, and the SVG charts.
    #[arg(long)]
    out_dir: PathBuf,
    /// Light/dark boundary on L*.
    #[arg(long, default_value_t = 60.0)]
    tone_threshold: f64,
    /// Red/yellow boundary on h* in degrees.
    #[arg(long, default_value_t = 55.0)]
    hue_threshold: f64,
    /// Histogram bin count.
    #[arg(long, default_value_t = 20)]
    bins: usize,
}

#[derive(Args)]
struct EloArgs {
    #[command(subcommand)]
    command: EloCommand,
}

#[derive(Subcommand)]
enum EloCommand {
    /// Sample a balanced pair manifest over group combinations.
    Pairgen(PairgenArgs),
    /// Decide a pair manifest with a built-in stub decider.
    DecideStub(DecideStubArgs),
    /// Replay outcomes into ratings and group preference statistics.
    Rate(RateArgs),
}

#[derive(Args)]
struct PairgenArgs {
    /// CSV with id and group columns.
    #[arg(long)]
    population: PathBuf,
    /// Pairs sampled per group combination.
    #[arg(long)]
    per_combo: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Also sample same-group combinations (off by default, matching the
    /// cross-group benchmark design).
    #[arg(long)]
    same_group: bool,
    /// Output pair manifest CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecideStubArgs {
    /// Stub name: `random` or `prefers-lighter`.
    #[arg(long)]
    decider: String,
    /// Pair manifest CSV.
    #[arg(long)]
    manifest: PathBuf,
    /// Scores file; required by score-driven deciders.
    #[arg(long)]
    scores: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output outcomes CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RateArgs {
    /// CSV with id and group columns; every id starts at the initial
    /// rating.
    #[arg(long)]
    population: PathBuf,
    /// Pair manifest CSV.
    #[arg(long)]
    manifest: PathBuf,
    /// Outcomes CSV aligned with the manifest.
    #[arg(long)]
    outcomes: PathBuf,
    /// Output ratings CSV.
    #[arg(long)]
    out: PathBuf,
    /// Sigmoid temperature.
    #[arg(long, default_value_t = 400.0)]
    m: f64,
    /// Update gain.
    #[arg(long, default_value_t = 16.0)]
    k: f64,
    /// Initial rating.
    #[arg(long, default_value_t = 1400.0)]
    init: f64,
}

#[derive(Args)]
struct DisaggArgs {
    /// Predictions CSV: id,predicted,actual.
    #[arg(long)]
    predictions: PathBuf,
    /// Scores file produced by `score`.
    #[arg(long)]
    scores: PathBuf,
    /// Directory for disagg.json and disagg.csv.
    #[arg(long)]
    out_dir: PathBuf,
    /// True label treated as the positive class for split columns.
    #[arg(long)]
    split: Option<String>,
    #[arg(long, default_value_t = 60.0)]
    tone_threshold: f64,
    #[arg(long, default_value_t = 55.0)]
    hue_threshold: f64,
}

#[derive(Args)]
struct StatsArgs {
    /// Input CSV.
    #[arg(long)]
    input: PathBuf,
    /// Column holding the numeric values.
    #[arg(long)]
    value: String,
    /// Column holding the group labels.
    #[arg(long)]
    group: String,
    /// Optional JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure carrying the process exit code.
pub struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    /// Usage or input-format failure (exit 2).
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    /// Data or processing failure (exit 1).
    pub fn data(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Convert(args) => commands::convert::run(&args),
        Command::Score(args) => commands::score::run(&args),
        Command::Audit(args) => commands::audit::run(&args),
        Command::Elo(args) => match args.command {
            EloCommand::Pairgen(args) => commands::elo::pairgen(&args),
            EloCommand::DecideStub(args) => commands::elo::decide_stub(&args),
            EloCommand::Rate(args) => commands::elo::rate(&args),
        },
        Command::Disagg(args) => commands::disagg::run(&args),
        Command::Stats(args) => commands::stats::run(&args),
    };
    if let Err(e) = result {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

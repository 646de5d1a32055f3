mod challenge;
mod compute;
mod enumerate;
mod error;
mod plot;
mod provenance;
mod study;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use agree2x2::inference::{BootstrapConfig, InferenceConfig, Procedure};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "agree", version, about = "Agreement estimators for 2x2 tables")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute every estimator (and optionally every test) on one table.
    #[command(allow_negative_numbers = true)]
    Compute(ComputeArgs),
    /// Write every table with total in a range to CSV.
    Enumerate(EnumerateArgs),
    /// Run estimators and decisions over every table in a range.
    Study(StudyArgs),
    /// Print the built-in challenge tables.
    Challenge(ChallengeArgs),
    /// Render a density or hexbin plot from a study CSV.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Args)]
struct InferenceArgs {
    /// Two-sided significance level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Bootstrap resamples per table.
    #[arg(long = "boot", default_value_t = 10_000)]
    boot: usize,
    /// Base seed of the per-table bootstrap streams.
    #[arg(long, env = "AGREE_SEED", default_value_t = 0)]
    seed: u64,
}

impl InferenceArgs {
    fn config(&self, procedures: Vec<Procedure>) -> Result<InferenceConfig, CliError> {
        let cfg = InferenceConfig {
            alpha: self.alpha,
            bootstrap: BootstrapConfig { resamples: self.boot, seed: self.seed, ..BootstrapConfig::default() },
            procedures,
        };
        cfg.validate().map_err(CliError::Usage)?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct ComputeArgs {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    /// Also run every inferential procedure.
    #[arg(long)]
    test: bool,
    /// Emit JSON instead of a text report.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    inference: InferenceArgs,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StudyArgs {
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    /// Procedure whose decisions are taken as correct.
    #[arg(long, default_value = "g")]
    benchmark: String,
    /// Comma-separated procedures to run; all by default.
    #[arg(long, value_delimiter = ',')]
    procedures: Vec<String>,
    /// Point estimates only, without decisions.
    #[arg(long)]
    no_test: bool,
    /// Hexagons across the G axis.
    #[arg(long, default_value_t = 40)]
    hex_bins: u32,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    inference: InferenceArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ChallengeSet {
    Regular,
    Extreme,
}

#[derive(Debug, Args)]
struct ChallengeArgs {
    #[arg(long, value_enum, default_value = "regular")]
    set: ChallengeSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    Density,
    Hexbin,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Study CSV written by `agree study`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Procedure (density) or estimator column (hexbin).
    #[arg(long)]
    estimator: String,
    /// Benchmark procedure for density plots.
    #[arg(long, default_value = "g")]
    benchmark: String,
    /// Hexagons across the G axis.
    #[arg(long, default_value_t = 40)]
    hex_bins: u32,
    #[arg(long)]
    out: PathBuf,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute(args) => compute::run(&args),
        Command::Enumerate(args) => enumerate::run(&args),
        Command::Study(args) => study::run(&args),
        Command::Challenge(args) => challenge::run(&args),
        Command::Plot(args) => plot::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

//! `celebnet` command-line driver.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use celebnet::Flavor;
use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::SynthArgs;
use crate::config::{Overrides, PipelineConfig};

#[derive(Parser)]
#[command(
    name = "celebnet",
    version,
    about = "Celebrity co-engagement network and language analysis"
)]
struct Cli {
    #[command(flatten)]
    opts: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Retweet,
    Mention,
}

#[derive(Subcommand)]
enum Command {
    /// Validate inputs and print a corpus summary with retweet density per category
    Ingest,
    /// Build one co-engagement network and write its edge list
    Graph {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
    },
    /// Centrality measures for both networks
    Centrality,
    /// Linguistic profile of every roster celebrity
    Features,
    /// Rank correlation of every feature with future followers, plus bucket averages
    Correlate,
    /// Stratified cross-validation of one classifier on one feature set
    Classify {
        /// Feature set: all-network, few-network, all-linguistic, liwc,
        /// non-liwc-linguistic, handpicked-linguistic or combined
        #[arg(long)]
        features: String,
        /// gnb, sgd or forest
        #[arg(long, default_value = "gnb")]
        classifier: String,
    },
    /// Full pipeline and markdown report
    Report,
    /// Generate a synthetic corpus
    Synth {
        /// JSON synth spec; overrides the size flags
        #[arg(long, value_name = "FILE")]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 300)]
        n_celebrities: usize,
        #[arg(long, default_value_t = 3000)]
        n_users: usize,
        /// No planted signal
        #[arg(long)]
        null: bool,
    },
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let cfg = PipelineConfig::resolve(&cli.opts)?;
    match cli.command {
        Command::Ingest => commands::ingest(&cfg),
        Command::Graph { flavor } => commands::graph(
            &cfg,
            match flavor {
                FlavorArg::Retweet => Flavor::Retweet,
                FlavorArg::Mention => Flavor::Mention,
            },
        ),
        Command::Centrality => commands::centrality(&cfg),
        Command::Features => commands::features(&cfg),
        Command::Correlate => commands::correlate(&cfg),
        Command::Classify {
            features,
            classifier,
        } => commands::classify(&cfg, &features, &classifier),
        Command::Report => commands::report(&cfg),
        Command::Synth {
            spec,
            n_celebrities,
            n_users,
            null,
        } => commands::synth(
            &cfg,
            &SynthArgs {
                spec,
                n_celebrities,
                n_users,
                null,
            },
        ),
    }
}

/// 2 for bad input, 1 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<celebnet::Error>() {
        Some(e) if e.is_validation() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

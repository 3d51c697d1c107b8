//! `zbench` — zero-shot retrieval benchmarking: build indexes over corpora
//! and precomputed vectors, run batch retrieval, segment long documents,
//! fuse and aggregate runs, evaluate against qrels, render radar charts,
//! and operate the self-service leaderboard.

mod commands;
mod error;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Parser)]
#[command(
    name = "zbench",
    version,
    about = "Zero-shot retrieval benchmarking engine",
    long_about = None,
    disable_help_subcommand = true
)]
struct Cli {
    /// Cap the worker threads used for batch search and scans.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index directory from a corpus or vector file
    Index(commands::index::IndexArgs),
    /// Batch-search an index over a topic file, writing a TREC run
    Search(commands::search::SearchArgs),
    /// Evaluate a run against qrels (nDCG@k, recall@k)
    Eval(commands::eval::EvalArgs),
    /// Split documents into sliding-window sentence passages
    Segment(commands::segment::SegmentArgs),
    /// Collapse a passage run to documents by max passage score
    Maxp(commands::maxp::MaxpArgs),
    /// Fuse two runs by normalized score averaging
    Fuse(commands::fuse::FuseArgs),
    /// Render a radar chart comparing models against a baseline
    Radar(commands::radar::RadarArgs),
    /// Run the leaderboard service
    Serve(commands::serve::ServeArgs),
    /// Submit run files to a leaderboard service
    Submit(commands::submit::SubmitArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests land here too; only real usage errors
            // exit nonzero.
            let is_usage_error = e.use_stderr();
            let _ = e.print();
            return if is_usage_error { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };

    if let Some(threads) = cli.threads {
        if threads < 1 {
            eprintln!("error: --threads must be >= 1");
            return ExitCode::from(1);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }

    let result = match cli.command {
        Command::Index(args) => commands::index::run(args),
        Command::Search(args) => commands::search::run(args),
        Command::Eval(args) => commands::eval::run(args),
        Command::Segment(args) => commands::segment::run(args),
        Command::Maxp(args) => commands::maxp::run(args),
        Command::Fuse(args) => commands::fuse::run(args),
        Command::Radar(args) => commands::radar::run(args),
        Command::Serve(args) => commands::serve::run(args),
        Command::Submit(args) => commands::submit::run(args),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

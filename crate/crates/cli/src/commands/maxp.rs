//! `zbench maxp` — passage run -> document run by max passage score.

use std::path::PathBuf;

use clap::Args;

use zbench_core::analysis::DEFAULT_PASSAGE_SEPARATOR;
use zbench_core::data::{read_run, write_run};
use zbench_core::rankops::maxp_aggregate;

use crate::error::CliResult;

#[derive(Args)]
pub struct MaxpArgs {
    /// Input passage-level TREC run
    #[arg(long)]
    pub run: PathBuf,

    /// Output document-level TREC run
    #[arg(long)]
    pub output: PathBuf,

    /// Separator between doc id and window index in passage ids
    #[arg(long, default_value = DEFAULT_PASSAGE_SEPARATOR)]
    pub separator: String,
}

pub fn run(args: MaxpArgs) -> CliResult<()> {
    let passage_run = read_run(&args.run)?;
    let doc_run = maxp_aggregate(&passage_run, &args.separator)?;
    write_run(&doc_run, &args.output)?;
    println!(
        "aggregated {} queries to document level in {}",
        doc_run.num_queries(),
        args.output.display()
    );
    Ok(())
}

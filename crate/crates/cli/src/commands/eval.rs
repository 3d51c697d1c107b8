//! `zbench eval` — trec_eval-style evaluation of one run against qrels.

use std::path::PathBuf;

use clap::Args;

use zbench_core::data::{read_qrels, read_run};
use zbench_core::eval::{ndcg_at, recall_at, EvalReport};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy)]
pub enum Metric {
    NdcgCut(usize),
    Recall(usize),
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    let (name, k) = s
        .rsplit_once('.')
        .ok_or_else(|| format!("expected `ndcg_cut.K` or `recall.K`, got `{s}`"))?;
    let k: usize = k.parse().map_err(|_| format!("bad cutoff in `{s}`"))?;
    if k < 1 {
        return Err("cutoff must be >= 1".to_string());
    }
    match name {
        "ndcg_cut" => Ok(Metric::NdcgCut(k)),
        "recall" => Ok(Metric::Recall(k)),
        other => Err(format!("unknown metric `{other}` (use ndcg_cut.K or recall.K)")),
    }
}

#[derive(Args)]
pub struct EvalArgs {
    /// Average over the complete judged query set (queries absent from the
    /// run score 0)
    #[arg(short = 'c')]
    pub complete: bool,

    /// Metric selector, e.g. ndcg_cut.10 or recall.100
    #[arg(short = 'm', long = "metric", value_parser = parse_metric)]
    pub metric: Metric,

    /// Print per-query values in addition to the aggregate
    #[arg(short = 'q')]
    pub per_query: bool,

    /// Qrels file (3-column TSV or 4-column classic)
    pub qrels: PathBuf,

    /// TREC run file
    pub run: PathBuf,
}

pub fn run(args: EvalArgs) -> CliResult<()> {
    let loaded = read_qrels(&args.qrels)?;
    if loaded.duplicate_overwrites > 0 {
        eprintln!(
            "warning: {} duplicate qrels entries overwritten (last grade wins)",
            loaded.duplicate_overwrites
        );
    }
    let run = read_run(&args.run)?;
    let report: EvalReport = match args.metric {
        Metric::NdcgCut(k) => ndcg_at(&run, &loaded.qrels, k, args.complete)?,
        Metric::Recall(k) => recall_at(&run, &loaded.qrels, k, args.complete)?,
    };
    print_report(&report, args.per_query);
    Ok(())
}

/// The standard evaluator's text layout: `metric <tab> query <tab> value`.
fn print_report(report: &EvalReport, per_query: bool) {
    if per_query {
        for (qid, value) in &report.per_query {
            println!("{}\t{}\t{:.4}", report.metric, qid, value);
        }
    }
    println!("{}\tall\t{:.4}", report.metric, report.aggregate);
}

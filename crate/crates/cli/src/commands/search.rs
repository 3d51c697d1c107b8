//! `zbench search` — batch retrieval over any index kind, writing a TREC
//! run file. Topic format follows the index: document topics for bm25,
//! sparse vector records for impact, dense vector records for dense.

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;

use zbench_core::data::{
    read_dense_vectors, read_queries, read_sparse_vectors, write_run, Ranking,
};
use zbench_core::lexical::Bm25Params;
use zbench_core::store::{load_index_dir, LoadedIndex};

use crate::error::{CliError, CliResult};

#[derive(Args)]
pub struct SearchArgs {
    /// Index directory produced by `zbench index`
    #[arg(long)]
    pub index: PathBuf,

    /// Topic file (format must match the index kind)
    #[arg(long)]
    pub topics: PathBuf,

    /// Output TREC run file
    #[arg(long)]
    pub output: PathBuf,

    /// Results per query
    #[arg(long, default_value_t = 1000)]
    pub hits: usize,

    /// Per-field weight as `field=weight`; repeatable (bm25 indexes only).
    /// Defaults to equal weights over the index's fields.
    #[arg(long = "fields", value_parser = parse_field_weight)]
    pub fields: Vec<(String, f64)>,

    /// BM25 k1
    #[arg(long, default_value_t = 0.9)]
    pub k1: f64,

    /// BM25 b
    #[arg(long, default_value_t = 0.4)]
    pub b: f64,

    /// Run tag written to the sixth TREC column (defaults to the index kind)
    #[arg(long)]
    pub tag: Option<String>,
}

fn parse_field_weight(s: &str) -> Result<(String, f64), String> {
    let (field, weight) = s
        .split_once('=')
        .ok_or_else(|| format!("expected `field=weight`, got `{s}`"))?;
    let weight: f64 = weight.parse().map_err(|_| format!("bad weight in `{s}`"))?;
    Ok((field.to_string(), weight))
}

pub fn run(args: SearchArgs) -> CliResult<()> {
    let loaded = load_index_dir(&args.index)?;
    if !args.fields.is_empty() && !matches!(loaded, LoadedIndex::Lexical { .. }) {
        return Err(CliError::Data(
            "--fields applies only to bm25 indexes".to_string(),
        ));
    }
    let tag = args.tag.clone().unwrap_or_else(|| loaded.kind().name().to_string());
    let mut ranking = Ranking::new(tag);

    match loaded {
        LoadedIndex::Lexical { index, analyzer } => {
            let queries = read_queries(&args.topics)?;
            let weights: BTreeMap<String, f64> = if args.fields.is_empty() {
                index.mode().default_field_weights()
            } else {
                args.fields.iter().cloned().collect()
            };
            let params = Bm25Params::new(args.k1, args.b)?;
            let results: Vec<(String, Vec<(String, f64)>)> = queries
                .par_iter()
                .map(|q| {
                    index
                        .search(&q.text, &analyzer, args.hits, &weights, &params)
                        .map(|hits| (q.id.clone(), hits))
                })
                .collect::<Result<_, _>>()?;
            for (qid, hits) in results {
                ranking.insert_query(qid, hits);
            }
        }
        LoadedIndex::Impact(index) => {
            let mut seen = HashSet::new();
            for record in read_sparse_vectors(&args.topics)? {
                let record = record?;
                if !seen.insert(record.id.clone()) {
                    return Err(CliError::Data(format!("duplicate topic id `{}`", record.id)));
                }
                let hits = index.search(&record.vector, args.hits)?;
                ranking.insert_query(record.id, hits);
            }
        }
        LoadedIndex::Dense(store) => {
            let mut seen = HashSet::new();
            for record in read_dense_vectors(&args.topics)? {
                let record = record?;
                if !seen.insert(record.id.clone()) {
                    return Err(CliError::Data(format!("duplicate topic id `{}`", record.id)));
                }
                let hits = store.search_parallel(&record.vector, args.hits)?;
                ranking.insert_query(record.id, hits);
            }
        }
    }

    write_run(&ranking, &args.output)?;
    println!(
        "wrote run `{}` for {} topics to {}",
        ranking.tag,
        ranking.num_queries(),
        args.output.display()
    );
    Ok(())
}

//! `zbench segment` — sliding-window passage generation. Output keeps the
//! corpus record schema, with passage ids `<doc_id><sep><window_index>`,
//! so it can be fed straight back into `zbench index`.

use std::io::Write;
use std::path::PathBuf;

use clap::Args;

use zbench_core::analysis::{make_windows, split_sentences, WindowConfig, DEFAULT_PASSAGE_SEPARATOR};
use zbench_core::data::CorpusReader;

use crate::error::{CliError, CliResult};

#[derive(Args)]
pub struct SegmentArgs {
    /// Input corpus (line-delimited documents)
    #[arg(long)]
    pub corpus: PathBuf,

    /// Output passage corpus (same record format)
    #[arg(long)]
    pub output: PathBuf,

    /// Window size in sentences
    #[arg(long, default_value_t = 10)]
    pub window: usize,

    /// Stride in sentences
    #[arg(long, default_value_t = 5)]
    pub stride: usize,

    /// Separator between doc id and window index in passage ids
    #[arg(long, default_value = DEFAULT_PASSAGE_SEPARATOR)]
    pub separator: String,
}

pub fn run(args: SegmentArgs) -> CliResult<()> {
    let cfg = WindowConfig::new(args.window, args.stride)?;
    if args.separator.is_empty() {
        return Err(CliError::Data("--separator must be nonempty".to_string()));
    }
    let out = std::fs::File::create(&args.output)?;
    let mut out = std::io::BufWriter::new(out);

    let mut docs = 0usize;
    let mut passages = 0usize;
    let mut empty_docs = 0usize;
    for doc in CorpusReader::open(&args.corpus)? {
        let doc = doc?;
        docs += 1;
        if doc.id.contains(&args.separator) {
            return Err(CliError::Data(format!(
                "doc id `{}` contains the passage separator `{}`; pick another with --separator",
                doc.id, args.separator
            )));
        }
        let sentences = split_sentences(&doc.text);
        if sentences.is_empty() {
            empty_docs += 1;
            continue;
        }
        for passage in make_windows(&doc.id, &doc.text, &sentences, cfg) {
            let record = serde_json::json!({
                "_id": passage.id(&args.separator),
                "title": doc.title,
                "text": passage.text,
            });
            let line = serde_json::to_string(&record)
                .map_err(|e| CliError::Internal(format!("encode passage: {e}")))?;
            writeln!(out, "{line}")?;
            passages += 1;
        }
    }
    out.flush()?;
    println!(
        "segmented {docs} documents into {passages} passages (window {}, stride {}); {empty_docs} without sentence content skipped",
        args.window, args.stride
    );
    Ok(())
}

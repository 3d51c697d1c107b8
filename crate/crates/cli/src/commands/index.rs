//! `zbench index` — build a bm25-flat / bm25-multifield / impact / dense
//! index directory.

use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;

use zbench_core::analysis::{Analyzer, AnalyzerKind, WordpieceVocab};
use zbench_core::data::{read_dense_vectors, read_sparse_vectors, CorpusReader};
use zbench_core::dense::build_dense_index;
use zbench_core::lexical::{build_impact_index, build_lexical_index, FieldMode, Quantization};
use zbench_core::store::IndexKind;

use crate::error::{CliError, CliResult};

#[derive(Args)]
pub struct IndexArgs {
    /// Corpus file: line-delimited documents for bm25 modes, sparse vector
    /// records for impact, dense vector records for dense
    #[arg(long)]
    pub corpus: PathBuf,

    /// Output index directory (created if absent)
    #[arg(long)]
    pub output: PathBuf,

    /// Index type
    #[arg(long, value_parser = parse_mode)]
    pub mode: IndexKind,

    /// Analyzer for bm25 modes
    #[arg(long, default_value = "english", value_parser = parse_analyzer)]
    pub analyzer: AnalyzerKind,

    /// Wordpiece vocabulary file (one token per line), required with
    /// --analyzer wordpiece
    #[arg(long)]
    pub vocab: Option<PathBuf>,

    /// Impact-index weight storage: `none` or `fixed:<scale>:<cap>`
    #[arg(long, default_value = "fixed:100:255", value_parser = parse_quantization)]
    pub quantize: Quantization,
}

fn parse_mode(s: &str) -> Result<IndexKind, String> {
    IndexKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_analyzer(s: &str) -> Result<AnalyzerKind, String> {
    AnalyzerKind::from_str(s).map_err(|e| e.to_string())
}

fn parse_quantization(s: &str) -> Result<Quantization, String> {
    if s == "none" {
        return Ok(Quantization::None);
    }
    let parts: Vec<&str> = s.split(':').collect();
    if let ["fixed", scale, cap] = parts.as_slice() {
        let scale: f64 = scale.parse().map_err(|_| format!("bad scale `{scale}`"))?;
        let cap: u32 = cap.parse().map_err(|_| format!("bad cap `{cap}`"))?;
        if scale <= 0.0 {
            return Err("scale must be > 0".into());
        }
        return Ok(Quantization::Fixed { scale, cap });
    }
    Err(format!("expected `none` or `fixed:<scale>:<cap>`, got `{s}`"))
}

fn build_analyzer(args: &IndexArgs) -> CliResult<Analyzer> {
    Ok(match args.analyzer {
        AnalyzerKind::English => Analyzer::english(),
        AnalyzerKind::Whitespace => Analyzer::whitespace(),
        AnalyzerKind::Wordpiece => {
            let vocab_path = args.vocab.as_ref().ok_or_else(|| {
                CliError::Data("--analyzer wordpiece requires --vocab".to_string())
            })?;
            Analyzer::wordpiece(WordpieceVocab::from_file(vocab_path)?)
        }
    })
}

pub fn run(args: IndexArgs) -> CliResult<()> {
    match args.mode {
        IndexKind::Bm25Flat | IndexKind::Bm25Multifield => {
            let analyzer = build_analyzer(&args)?;
            let field_mode = match args.mode {
                IndexKind::Bm25Flat => FieldMode::Flat,
                _ => FieldMode::Multifield,
            };
            let corpus = CorpusReader::open(&args.corpus)?;
            let index = build_lexical_index(corpus, &analyzer, field_mode)?;
            index.save(&args.output, &analyzer)?;
            println!(
                "indexed {} documents into {} ({}, analyzer {}, fields [{}], fingerprint {})",
                index.doc_count(),
                args.output.display(),
                args.mode.name(),
                analyzer.fingerprint(),
                index.field_names().collect::<Vec<_>>().join(", "),
                index.fingerprint(),
            );
        }
        IndexKind::Impact => {
            let records = read_sparse_vectors(&args.corpus)?
                .map(|r| r.map(|record| (record.id, record.vector)));
            let index = build_impact_index(records, args.quantize)?;
            index.save(&args.output)?;
            println!(
                "indexed {} sparse vectors into {} (impact, {:?}, fingerprint {})",
                index.doc_count(),
                args.output.display(),
                index.quantization(),
                index.fingerprint(),
            );
        }
        IndexKind::Dense => {
            let records =
                read_dense_vectors(&args.corpus)?.map(|r| r.map(|record| (record.id, record.vector)));
            let store = build_dense_index(records)?;
            store.save(&args.output)?;
            println!(
                "indexed {} dense vectors into {} (dense, dim {}, fingerprint {})",
                store.count(),
                args.output.display(),
                store.dim(),
                store.fingerprint(),
            );
        }
    }
    Ok(())
}

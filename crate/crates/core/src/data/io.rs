//! File I/O for corpora, queries, qrels, and TREC run files.

use std::collections::{BTreeMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{Document, Query, QrelSet, RankedDoc, Ranking};
use crate::{Error, Result};

#[derive(Deserialize)]
struct CorpusRecord {
    #[serde(rename = "_id")]
    id: String,
    #[serde(default)]
    title: String,
    text: String,
}

#[derive(Deserialize)]
struct QueryRecord {
    #[serde(rename = "_id")]
    id: String,
    text: String,
}

/// Streaming reader over a line-delimited corpus file.
///
/// Documents are yielded in file order without buffering the file; only the
/// set of ids seen so far is retained (for duplicate detection), which stays
/// small relative to the corpus text itself.
pub struct CorpusReader<R: BufRead = BufReader<File>> {
    path: PathBuf,
    lines: std::io::Lines<R>,
    line_no: usize,
    seen: HashSet<String>,
}

impl CorpusReader<BufReader<File>> {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
        Ok(Self::from_reader(BufReader::new(file), path))
    }
}

impl<R: BufRead> CorpusReader<R> {
    /// Streams from any buffered reader; `path` is used in error messages.
    pub fn from_reader(reader: R, path: impl Into<PathBuf>) -> Self {
        CorpusReader {
            path: path.into(),
            lines: reader.lines(),
            line_no: 0,
            seen: HashSet::new(),
        }
    }

    fn next_document(&mut self) -> Option<Result<Document>> {
        loop {
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(e) => return Some(Err(Error::io(&self.path, e))),
            };
            self.line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            let record: CorpusRecord = match serde_json::from_str(&line) {
                Ok(r) => r,
                Err(e) => return Some(Err(Error::parse(&self.path, self.line_no, e.to_string()))),
            };
            if record.id.is_empty() {
                return Some(Err(Error::parse(&self.path, self.line_no, "empty `_id`")));
            }
            if !self.seen.insert(record.id.clone()) {
                return Some(Err(Error::DuplicateId {
                    id: record.id,
                    context: format!("{}:{}", self.path.display(), self.line_no),
                }));
            }
            return Some(Ok(Document {
                id: record.id,
                title: record.title,
                text: record.text,
            }));
        }
    }
}

impl<R: BufRead> Iterator for CorpusReader<R> {
    type Item = Result<Document>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_document()
    }
}

/// Loads a topic file (same line-delimited record format as corpora).
pub fn read_queries(path: impl AsRef<Path>) -> Result<Vec<Query>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut queries = Vec::new();
    let mut seen = HashSet::new();
    for (line_no, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: QueryRecord = serde_json::from_str(&line)
            .map_err(|e| Error::parse(path, line_no + 1, e.to_string()))?;
        if record.id.is_empty() {
            return Err(Error::parse(path, line_no + 1, "empty `_id`"));
        }
        if !seen.insert(record.id.clone()) {
            return Err(Error::DuplicateId {
                id: record.id,
                context: format!("{}:{}", path.display(), line_no + 1),
            });
        }
        queries.push(Query {
            id: record.id,
            text: record.text,
        });
    }
    Ok(queries)
}

/// A parsed qrels file plus the count of duplicate (query, doc) pairs whose
/// earlier grades were overwritten.
#[derive(Debug)]
pub struct LoadedQrels {
    pub qrels: QrelSet,
    pub duplicate_overwrites: usize,
}

/// Parses judgments in either 3-column TSV (`query-id  corpus-id  score`,
/// optional header line) or 4-column classic (`qid 0 docid rel`) form; the
/// two may be mixed line by line. Later duplicates overwrite earlier ones.
pub fn read_qrels(path: impl AsRef<Path>) -> Result<LoadedQrels> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_qrels_from(BufReader::new(file), path)
}

pub(crate) fn read_qrels_from(reader: impl BufRead, path: &Path) -> Result<LoadedQrels> {
    let mut qrels = QrelSet::new();
    let mut duplicate_overwrites = 0usize;
    for (line_no, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (query_id, doc_id, grade_str) = match fields.as_slice() {
            [q, d, g] => (*q, *d, *g),
            [q, _, d, g] => (*q, *d, *g),
            _ => {
                return Err(Error::parse(
                    path,
                    line_no + 1,
                    format!("expected 3 or 4 columns, got {}", fields.len()),
                ))
            }
        };
        let grade: u32 = match grade_str.parse() {
            Ok(g) => g,
            // A non-numeric grade on the first line is a column header.
            Err(_) if line_no == 0 => continue,
            Err(_) => {
                return Err(Error::parse(
                    path,
                    line_no + 1,
                    format!("non-integer grade `{grade_str}`"),
                ))
            }
        };
        if qrels.insert(query_id, doc_id, grade) {
            duplicate_overwrites += 1;
        }
    }
    Ok(LoadedQrels {
        qrels,
        duplicate_overwrites,
    })
}

/// Reads a TREC run file and validates the per-query ranking invariants.
///
/// Lines may appear in any order; entries are reassembled per query by the
/// rank column, which must be exactly 1..n with no gaps or duplicate docs.
pub fn read_run(path: impl AsRef<Path>) -> Result<Ranking> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_run_from(BufReader::new(file), path)
}

/// Parses TREC run text held in memory; `label` names the source in error
/// messages (uploaded run files arrive this way).
pub fn read_run_from_str(text: &str, label: &str) -> Result<Ranking> {
    read_run_from(std::io::Cursor::new(text.as_bytes()), Path::new(label))
}

pub(crate) fn read_run_from(reader: impl Read, path: &Path) -> Result<Ranking> {
    let reader = BufReader::new(reader);
    let mut tag: Option<String> = None;
    let mut per_query: BTreeMap<String, Vec<RankedDoc>> = BTreeMap::new();
    for (line_no, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [qid, _q0, doc_id, rank, score, run_tag] = fields.as_slice() else {
            return Err(Error::parse(
                path,
                line_no + 1,
                format!("expected 6 columns, got {}", fields.len()),
            ));
        };
        let rank: u32 = rank.parse().map_err(|_| {
            Error::parse(path, line_no + 1, format!("non-integer rank `{rank}`"))
        })?;
        let score: f64 = score.parse().map_err(|_| {
            Error::parse(path, line_no + 1, format!("non-numeric score `{score}`"))
        })?;
        if tag.is_none() {
            tag = Some(run_tag.to_string());
        }
        per_query.entry(qid.to_string()).or_default().push(RankedDoc {
            doc_id: doc_id.to_string(),
            score,
            rank,
        });
    }

    let mut ranking = Ranking::new(tag.unwrap_or_else(|| "run".to_string()));
    for (qid, mut docs) in per_query {
        docs.sort_by_key(|d| d.rank);
        ranking.insert_ranked(qid, docs);
    }
    ranking.validate()?;
    Ok(ranking)
}

/// Writes a run in TREC 6-column format, queries in ascending id order.
///
/// Scores are serialized with Rust's shortest round-trip float formatting,
/// so `read_run(write_run(r))` reproduces `r` exactly and output is
/// byte-stable across runs.
pub fn write_run(ranking: &Ranking, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    w.write_all(write_run_to_string(ranking)?.as_bytes())
        .map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// In-memory variant of [`write_run`]; also used for byte-level comparisons.
pub fn write_run_to_string(ranking: &Ranking) -> Result<String> {
    ranking.validate()?;
    let tag = if ranking.tag.is_empty() { "run" } else { &ranking.tag };
    if tag.chars().any(char::is_whitespace) {
        return Err(Error::InvalidArgument(format!(
            "run tag `{tag}` contains whitespace"
        )));
    }
    let mut out = String::new();
    for (qid, docs) in ranking.iter() {
        if qid.chars().any(char::is_whitespace) {
            return Err(Error::InvalidRanking {
                query_id: qid.to_string(),
                msg: "query id contains whitespace".to_string(),
            });
        }
        for doc in docs {
            if doc.doc_id.chars().any(char::is_whitespace) {
                return Err(Error::InvalidRanking {
                    query_id: qid.to_string(),
                    msg: format!("doc id `{}` contains whitespace", doc.doc_id),
                });
            }
            out.push_str(&format!(
                "{} Q0 {} {} {} {}\n",
                qid, doc.doc_id, doc.rank, doc.score, tag
            ));
        }
    }
    Ok(out)
}

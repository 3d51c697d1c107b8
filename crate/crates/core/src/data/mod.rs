//! Data model for corpora, queries, relevance judgments, and rankings.
//!
//! File formats (all UTF-8):
//! - corpora/queries: line-delimited JSON records with `_id`, `title`, `text`
//! - qrels: 3-column TSV (`query-id  corpus-id  score`, optional header) or
//!   4-column classic judgments (`qid 0 docid rel`)
//! - runs: TREC 6-column text (`qid Q0 docid rank score tag`)

mod io;
mod registry;
mod vectors;

pub use io::{
    read_qrels, read_queries, read_run, read_run_from_str, write_run, write_run_to_string,
    CorpusReader, LoadedQrels,
};
pub use registry::{registry, DatasetSpec, REGISTRY_SIZE};
pub use vectors::{
    read_dense_vectors, read_sparse_vectors, write_dense_vectors, write_sparse_vectors,
    DenseRecord, SparseRecord,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One corpus record: a unique id, an optional title, and the main body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    /// Empty when the corpus provides no title.
    pub title: String,
    pub text: String,
}

/// One test topic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub id: String,
    pub text: String,
}

/// Graded relevance judgments: query id -> doc id -> grade (>= 0).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QrelSet {
    grades: BTreeMap<String, BTreeMap<String, u32>>,
}

impl QrelSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a judgment; returns `true` when it overwrote an earlier grade
    /// for the same (query, doc) pair.
    pub fn insert(&mut self, query_id: impl Into<String>, doc_id: impl Into<String>, grade: u32) -> bool {
        self.grades
            .entry(query_id.into())
            .or_default()
            .insert(doc_id.into(), grade)
            .is_some()
    }

    pub fn grade(&self, query_id: &str, doc_id: &str) -> u32 {
        self.grades
            .get(query_id)
            .and_then(|m| m.get(doc_id))
            .copied()
            .unwrap_or(0)
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.grades.keys().map(String::as_str)
    }

    pub fn contains_query(&self, query_id: &str) -> bool {
        self.grades.contains_key(query_id)
    }

    pub fn judgments(&self, query_id: &str) -> Option<&BTreeMap<String, u32>> {
        self.grades.get(query_id)
    }

    /// Whether the query has at least one judgment with grade > 0.
    pub fn has_relevant(&self, query_id: &str) -> bool {
        self.grades
            .get(query_id)
            .is_some_and(|m| m.values().any(|&g| g > 0))
    }

    /// Number of docs judged relevant (grade >= 1) for the query.
    pub fn relevant_count(&self, query_id: &str) -> usize {
        self.grades
            .get(query_id)
            .map_or(0, |m| m.values().filter(|&&g| g > 0).count())
    }

    pub fn num_queries(&self) -> usize {
        self.grades.len()
    }

    pub fn num_judgments(&self) -> usize {
        self.grades.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }
}

/// One retrieved document inside a per-query result list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedDoc {
    pub doc_id: String,
    pub score: f64,
    /// 1-based rank.
    pub rank: u32,
}

/// A run: per-query ordered result lists plus a run tag.
///
/// Invariants (checked by [`Ranking::validate`]): per query, ranks are
/// exactly 1..n, scores are non-increasing with rank, and doc ids are unique.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub tag: String,
    queries: BTreeMap<String, Vec<RankedDoc>>,
}

impl Ranking {
    pub fn new(tag: impl Into<String>) -> Self {
        Ranking {
            tag: tag.into(),
            queries: BTreeMap::new(),
        }
    }

    /// Stores a result list that is already sorted best-first; ranks are
    /// assigned 1..n in list order.
    pub fn insert_query(&mut self, query_id: impl Into<String>, hits: Vec<(String, f64)>) {
        let docs = hits
            .into_iter()
            .zip(1u32..)
            .map(|((doc_id, score), rank)| RankedDoc {
                doc_id,
                score,
                rank,
            })
            .collect();
        self.queries.insert(query_id.into(), docs);
    }

    /// Sorts hits by (score desc, doc id asc), truncates to `k`, and stores
    /// the list with ranks 1..n.
    pub fn insert_query_sorted(&mut self, query_id: impl Into<String>, mut hits: Vec<(String, f64)>, k: usize) {
        hits.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        hits.truncate(k);
        self.insert_query(query_id, hits);
    }

    pub fn insert_ranked(&mut self, query_id: impl Into<String>, docs: Vec<RankedDoc>) {
        self.queries.insert(query_id.into(), docs);
    }

    pub fn get(&self, query_id: &str) -> Option<&[RankedDoc]> {
        self.queries.get(query_id).map(Vec::as_slice)
    }

    pub fn remove(&mut self, query_id: &str) -> Option<Vec<RankedDoc>> {
        self.queries.remove(query_id)
    }

    /// Queries in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[RankedDoc])> {
        self.queries.iter().map(|(q, d)| (q.as_str(), d.as_slice()))
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.queries.keys().map(String::as_str)
    }

    pub fn contains_query(&self, query_id: &str) -> bool {
        self.queries.contains_key(query_id)
    }

    pub fn num_queries(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    /// Checks the per-query invariants, reporting the first offending query.
    pub fn validate(&self) -> Result<()> {
        for (query_id, docs) in &self.queries {
            let mut seen = std::collections::HashSet::new();
            for (i, doc) in docs.iter().enumerate() {
                let expected = (i + 1) as u32;
                if doc.rank != expected {
                    return Err(Error::InvalidRanking {
                        query_id: query_id.clone(),
                        msg: format!("rank {} at position {} (expected {})", doc.rank, i + 1, expected),
                    });
                }
                if !seen.insert(doc.doc_id.as_str()) {
                    return Err(Error::InvalidRanking {
                        query_id: query_id.clone(),
                        msg: format!("duplicate doc id `{}`", doc.doc_id),
                    });
                }
                if i > 0 && doc.score > docs[i - 1].score {
                    return Err(Error::InvalidRanking {
                        query_id: query_id.clone(),
                        msg: format!(
                            "score {} at rank {} exceeds score {} at rank {}",
                            doc.score,
                            doc.rank,
                            docs[i - 1].score,
                            docs[i - 1].rank
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

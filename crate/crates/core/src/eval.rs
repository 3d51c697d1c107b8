//! trec_eval-compatible metrics: nDCG@k, recall@k, complete-set averaging,
//! and the 18-dataset macro-average.
//!
//! Conventions pinned to the standard evaluator:
//!
//! - nDCG uses linear gain, `DCG@k = Σ rel_i / log2(i + 1)` with `rel_i` the
//!   judged grade at rank i and unjudged documents contributing 0; the ideal
//!   DCG sorts grades descending.
//! - Queries with no judgment of grade > 0 are excluded from evaluation
//!   entirely (not scored 0).
//! - With complete-set averaging, every remaining judged query counts and
//!   scores 0 when absent from the run; otherwise only queries present in
//!   both run and qrels count.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::data::{DatasetSpec, QrelSet, Ranking};
use crate::{Error, Result};

/// Per-query and aggregate values for one metric over one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub metric: String,
    pub per_query: BTreeMap<String, f64>,
    /// Arithmetic mean over the evaluated query set (0 when empty).
    pub aggregate: f64,
    pub num_queries_evaluated: usize,
}

impl EvalReport {
    fn from_per_query(metric: String, per_query: BTreeMap<String, f64>) -> Self {
        let n = per_query.len();
        let aggregate = if n == 0 {
            0.0
        } else {
            per_query.values().sum::<f64>() / n as f64
        };
        EvalReport { metric, per_query, aggregate, num_queries_evaluated: n }
    }
}

/// Queries eligible for evaluation, and each one's per-query metric value.
fn evaluate(
    metric: String,
    run: &Ranking,
    qrels: &QrelSet,
    complete_set: bool,
    score_query: impl Fn(&str) -> f64,
) -> EvalReport {
    let mut per_query = BTreeMap::new();
    for qid in qrels.query_ids() {
        if !qrels.has_relevant(qid) {
            continue;
        }
        match run.contains_query(qid) {
            true => {
                per_query.insert(qid.to_string(), score_query(qid));
            }
            false if complete_set => {
                per_query.insert(qid.to_string(), 0.0);
            }
            false => {}
        }
    }
    EvalReport::from_per_query(metric, per_query)
}

/// Normalized discounted cumulative gain at cutoff `k`.
pub fn ndcg_at(run: &Ranking, qrels: &QrelSet, k: usize, complete_set: bool) -> Result<EvalReport> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    Ok(evaluate(format!("ndcg_cut_{k}"), run, qrels, complete_set, |qid| {
        let docs = run.get(qid).unwrap_or(&[]);
        let dcg: f64 = docs
            .iter()
            .take(k)
            .enumerate()
            .map(|(i, d)| qrels.grade(qid, &d.doc_id) as f64 / ((i + 2) as f64).log2())
            .sum();
        let mut grades: Vec<u32> = qrels
            .judgments(qid)
            .map(|m| m.values().copied().filter(|&g| g > 0).collect())
            .unwrap_or_default();
        grades.sort_unstable_by(|a, b| b.cmp(a));
        let idcg: f64 = grades
            .iter()
            .take(k)
            .enumerate()
            .map(|(i, &g)| g as f64 / ((i + 2) as f64).log2())
            .sum();
        dcg / idcg
    }))
}

/// Fraction of judged-relevant (grade >= 1) documents retrieved in the
/// top `k`.
pub fn recall_at(
    run: &Ranking,
    qrels: &QrelSet,
    k: usize,
    complete_set: bool,
) -> Result<EvalReport> {
    if k < 1 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    Ok(evaluate(format!("recall_{k}"), run, qrels, complete_set, |qid| {
        let docs = run.get(qid).unwrap_or(&[]);
        let hit = docs
            .iter()
            .take(k)
            .filter(|d| qrels.grade(qid, &d.doc_id) >= 1)
            .count();
        hit as f64 / qrels.relevant_count(qid) as f64
    }))
}

/// Unweighted mean over all datasets in the registry. Partial score sets
/// are refused: a missing dataset is an error naming every gap. Scores may
/// be keyed by dataset name or key; unknown extra keys are ignored.
pub fn macro_average(per_dataset: &BTreeMap<String, f64>, registry: &[DatasetSpec]) -> Result<f64> {
    let mut sum = 0.0;
    let mut missing = Vec::new();
    for dataset in registry {
        let found = per_dataset
            .iter()
            .find(|(name, _)| {
                DatasetSpec::find(name).map(|d| d.key) == Some(dataset.key)
                    || name.as_str() == dataset.name
                    || name.as_str() == dataset.key
            })
            .map(|(_, &score)| score);
        match found {
            Some(score) => sum += score,
            None => missing.push(dataset.name.to_string()),
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingDatasets(missing));
    }
    Ok(sum / registry.len() as f64)
}

//! Submission validation: the run-file protocol enforced before scoring.
//!
//! Order of checks per dataset: (1) every run maps to a known dataset and
//! all 18 datasets are present, (2) every query id exists in the dataset's
//! qrels, (3) retrieved documents whose id equals the query id are
//! discarded and ranks compacted, (4) the remaining result count per query
//! must lie within the configured depth bounds. Self-retrieval filtering
//! runs before the depth check, so an over-deep list is only saved by
//! compaction if enough entries were filtered out.

use std::collections::BTreeMap;

use zbench_core::data::{DatasetSpec, QrelSet, RankedDoc, Ranking};

use crate::model::{RejectCode, RejectionReason};

/// Outcome of validating one submission's run set.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// Empty when the submission is acceptable.
    pub reasons: Vec<RejectionReason>,
    /// Post-filter runs keyed by canonical dataset key.
    pub filtered_runs: BTreeMap<String, Ranking>,
    /// Dataset key -> number of self-retrieval hits discarded.
    pub discarded_self_hits: BTreeMap<String, usize>,
    /// Every query in every run has exactly 100 results post-filtering
    /// (the precondition for publishing recall@100).
    pub uniform_depth_100: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Validates a full submission against the registry and qrels store.
/// `runs` may be keyed by dataset key or display name.
pub fn validate_submission(
    runs: &BTreeMap<String, Ranking>,
    registry: &[DatasetSpec],
    qrels_store: &BTreeMap<String, QrelSet>,
    min_depth: usize,
    max_depth: usize,
) -> ValidationReport {
    let mut report = ValidationReport {
        reasons: Vec::new(),
        filtered_runs: BTreeMap::new(),
        discarded_self_hits: BTreeMap::new(),
        uniform_depth_100: true,
    };

    // Map provided run names onto canonical dataset keys.
    let mut by_key: BTreeMap<&str, &Ranking> = BTreeMap::new();
    for (name, run) in runs {
        match DatasetSpec::find(name) {
            Some(dataset) => {
                if by_key.insert(dataset.key, run).is_some() {
                    report.reasons.push(
                        RejectionReason::new(
                            RejectCode::MalformedRun,
                            format!("dataset `{}` submitted more than once", dataset.key),
                        )
                        .dataset(dataset.key),
                    );
                }
            }
            None => {
                report.reasons.push(RejectionReason::new(
                    RejectCode::MalformedRun,
                    format!("`{name}` is not a benchmark dataset"),
                ));
            }
        }
    }

    for dataset in registry {
        let Some(run) = by_key.get(dataset.key) else {
            report.reasons.push(
                RejectionReason::new(
                    RejectCode::MissingDataset,
                    format!("no run submitted for `{}`", dataset.name),
                )
                .dataset(dataset.key),
            );
            continue;
        };
        let Some(qrels) = qrels_store.get(dataset.key) else {
            report.reasons.push(
                RejectionReason::new(
                    RejectCode::MalformedRun,
                    format!("no qrels available for `{}`", dataset.key),
                )
                .dataset(dataset.key),
            );
            continue;
        };

        let mut filtered = Ranking::new(run.tag.clone());
        let mut discarded = 0usize;
        for (qid, docs) in run.iter() {
            if !qrels.contains_query(qid) {
                report.reasons.push(
                    RejectionReason::new(
                        RejectCode::UnknownQuery,
                        format!("query `{qid}` is not judged in `{}`", dataset.key),
                    )
                    .dataset(dataset.key)
                    .query(qid),
                );
                continue;
            }
            let kept = filter_self_retrieval(qid, docs, &mut discarded);
            if kept.len() < min_depth || kept.len() > max_depth {
                report.reasons.push(
                    RejectionReason::new(
                        RejectCode::DepthOutOfRange,
                        format!(
                            "query `{qid}` has {} results after filtering (allowed {min_depth}..={max_depth})",
                            kept.len()
                        ),
                    )
                    .dataset(dataset.key)
                    .query(qid),
                );
            }
            if kept.len() != 100 {
                report.uniform_depth_100 = false;
            }
            filtered.insert_ranked(qid.to_string(), kept);
        }
        report.discarded_self_hits.insert(dataset.key.to_string(), discarded);
        report.filtered_runs.insert(dataset.key.to_string(), filtered);
    }

    if !report.is_valid() {
        report.filtered_runs.clear();
    }
    report
}

/// Drops documents retrieved for their own query and compacts ranks.
fn filter_self_retrieval(qid: &str, docs: &[RankedDoc], discarded: &mut usize) -> Vec<RankedDoc> {
    let mut kept = Vec::with_capacity(docs.len());
    for doc in docs {
        if doc.doc_id == qid {
            *discarded += 1;
            continue;
        }
        kept.push(RankedDoc {
            doc_id: doc.doc_id.clone(),
            score: doc.score,
            rank: kept.len() as u32 + 1,
        });
    }
    kept
}

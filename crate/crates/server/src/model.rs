//! Protocol records: submissions, validation reports, board entries.

use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Public,
    Private,
}

/// Submission lifecycle. The only transitions out of `Pending` are
/// `Scored` and `Rejected`; `Withdrawn` records an owner delete.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum SubmissionStatus {
    Pending,
    Scored,
    Rejected { reasons: Vec<RejectionReason> },
    Withdrawn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectCode {
    DepthOutOfRange,
    UnknownQuery,
    MissingDataset,
    MalformedRun,
}

/// One structured rejection, with enough context to fix the run file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionReason {
    pub code: RejectCode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<String>,
    pub detail: String,
}

impl RejectionReason {
    pub fn new(code: RejectCode, detail: impl Into<String>) -> Self {
        RejectionReason { code, dataset: None, query: None, detail: detail.into() }
    }

    pub fn dataset(mut self, dataset: impl Into<String>) -> Self {
        self.dataset = Some(dataset.into());
        self
    }

    pub fn query(mut self, query: impl Into<String>) -> Self {
        self.query = Some(query.into());
        self
    }
}

/// One scored submission as published on the board.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeaderboardEntry {
    pub submission_id: String,
    pub model_name: String,
    pub user: String,
    /// Dataset key -> nDCG@10 (complete-set averaging).
    pub per_dataset_ndcg: BTreeMap<String, f64>,
    /// Dataset key -> recall@100; meaningful only when `recall_available`.
    pub per_dataset_recall: BTreeMap<String, f64>,
    /// True only when every query in every run had exactly 100 results
    /// after self-retrieval filtering.
    pub recall_available: bool,
    /// Unweighted mean of nDCG@10 over all 18 datasets.
    pub macro_avg: f64,
    pub submitted_at: DateTime<Utc>,
}

/// Total board order: macro average descending, then earlier submissions,
/// then id.
pub fn board_ordering(a: &LeaderboardEntry, b: &LeaderboardEntry) -> std::cmp::Ordering {
    b.macro_avg
        .total_cmp(&a.macro_avg)
        .then_with(|| a.submitted_at.cmp(&b.submitted_at))
        .then_with(|| a.submission_id.cmp(&b.submission_id))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(id: &str, macro_avg: f64, ts: i64) -> LeaderboardEntry {
        LeaderboardEntry {
            submission_id: id.to_string(),
            model_name: "m".into(),
            user: "u".into(),
            per_dataset_ndcg: BTreeMap::new(),
            per_dataset_recall: BTreeMap::new(),
            recall_available: false,
            macro_avg,
            submitted_at: DateTime::from_timestamp(ts, 0).unwrap(),
        }
    }

    #[test]
    fn board_order_is_total() {
        let mut entries = vec![
            entry("c", 0.5, 100),
            entry("a", 0.7, 200),
            entry("b", 0.5, 50),
            entry("d", 0.5, 100),
        ];
        entries.sort_by(board_ordering);
        let ids: Vec<_> = entries.iter().map(|e| e.submission_id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c", "d"]);
    }
}

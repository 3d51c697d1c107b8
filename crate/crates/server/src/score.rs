//! Scoring a validated submission into a board entry.

use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use zbench_core::data::{DatasetSpec, QrelSet, Ranking};
use zbench_core::eval::{macro_average, ndcg_at, recall_at};

use crate::model::LeaderboardEntry;
use crate::ServerError;

/// Scores the post-validation runs: per-dataset nDCG@10 and recall@100 with
/// complete-set averaging, plus the all-dataset macro average. Pure given
/// the qrels, so scoring a submission twice yields an identical entry.
#[allow(clippy::too_many_arguments)]
pub fn score_submission(
    submission_id: &str,
    user: &str,
    model_name: &str,
    submitted_at: DateTime<Utc>,
    filtered_runs: &BTreeMap<String, Ranking>,
    registry: &[DatasetSpec],
    qrels_store: &BTreeMap<String, QrelSet>,
    recall_available: bool,
) -> Result<LeaderboardEntry, ServerError> {
    let mut per_dataset_ndcg = BTreeMap::new();
    let mut per_dataset_recall = BTreeMap::new();
    for dataset in registry {
        let run = filtered_runs.get(dataset.key).ok_or_else(|| {
            ServerError::Internal(format!("validated submission lacks `{}`", dataset.key))
        })?;
        let qrels = qrels_store.get(dataset.key).ok_or_else(|| {
            ServerError::Internal(format!("qrels store lacks `{}`", dataset.key))
        })?;
        let ndcg = ndcg_at(run, qrels, 10, true)
            .map_err(|e| ServerError::Internal(format!("scoring `{}`: {e}", dataset.key)))?;
        let recall = recall_at(run, qrels, 100, true)
            .map_err(|e| ServerError::Internal(format!("scoring `{}`: {e}", dataset.key)))?;
        per_dataset_ndcg.insert(dataset.key.to_string(), ndcg.aggregate);
        per_dataset_recall.insert(dataset.key.to_string(), recall.aggregate);
    }
    let macro_avg = macro_average(&per_dataset_ndcg, registry)
        .map_err(|e| ServerError::Internal(format!("macro average: {e}")))?;
    Ok(LeaderboardEntry {
        submission_id: submission_id.to_string(),
        model_name: model_name.to_string(),
        user: user.to_string(),
        per_dataset_ndcg,
        per_dataset_recall,
        recall_available,
        macro_avg,
        submitted_at,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zbench_core::data::registry;

    fn qrels_store() -> BTreeMap<String, QrelSet> {
        registry()
            .iter()
            .map(|d| {
                let mut q = QrelSet::new();
                q.insert("q1", "d1", 2);
                q.insert("q1", "d2", 1);
                (d.key.to_string(), q)
            })
            .collect()
    }

    fn ideal_runs() -> BTreeMap<String, Ranking> {
        registry()
            .iter()
            .map(|d| {
                let mut r = Ranking::new("ideal");
                let mut hits = vec![("d1".to_string(), 100.0), ("d2".to_string(), 99.0)];
                hits.extend((0..8).map(|i| (format!("x{i}"), 50.0 - i as f64)));
                r.insert_query("q1".to_string(), hits);
                (d.key.to_string(), r)
            })
            .collect()
    }

    #[test]
    fn ideal_submission_scores_macro_one() {
        let entry = score_submission(
            "s1",
            "alice",
            "ideal",
            Utc::now(),
            &ideal_runs(),
            registry(),
            &qrels_store(),
            false,
        )
        .unwrap();
        assert_eq!(entry.per_dataset_ndcg.len(), 18);
        for v in entry.per_dataset_ndcg.values() {
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert!((entry.macro_avg - 1.0).abs() < 1e-12);
        assert!(!entry.recall_available);
    }

    #[test]
    fn macro_is_mean_of_per_dataset_values() {
        let entry = score_submission(
            "s1",
            "alice",
            "m",
            Utc::now(),
            &ideal_runs(),
            registry(),
            &qrels_store(),
            true,
        )
        .unwrap();
        let mean: f64 =
            entry.per_dataset_ndcg.values().sum::<f64>() / entry.per_dataset_ndcg.len() as f64;
        assert!((entry.macro_avg - mean).abs() < 1e-9);
    }

    #[test]
    fn scoring_is_pure() {
        let a = score_submission(
            "s1",
            "alice",
            "m",
            DateTime::from_timestamp(1000, 0).unwrap(),
            &ideal_runs(),
            registry(),
            &qrels_store(),
            false,
        )
        .unwrap();
        let b = score_submission(
            "s1",
            "alice",
            "m",
            DateTime::from_timestamp(1000, 0).unwrap(),
            &ideal_runs(),
            registry(),
            &qrels_store(),
            false,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}

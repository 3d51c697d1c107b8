//! In-memory service state, rebuilt from the journal on startup.

use std::collections::BTreeMap;
use std::sync::{Mutex, RwLock};

use chrono::{DateTime, Utc};
use serde::Serialize;
use zbench_core::data::{registry, DatasetSpec, QrelSet};

use crate::config::ServerConfig;
use crate::journal::{self, JournalEvent, JournalWriter};
use crate::model::{board_ordering, LeaderboardEntry, SubmissionStatus, Visibility};
use crate::rate::QuotaRecord;
use crate::ServerError;

/// Everything the service remembers about one submission.
#[derive(Debug, Clone, Serialize)]
pub struct SubmissionRecord {
    pub id: String,
    pub user: String,
    pub model_name: String,
    pub visibility: Visibility,
    pub created_at: DateTime<Utc>,
    pub discarded_self_hits: BTreeMap<String, usize>,
    pub status: SubmissionStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry: Option<LeaderboardEntry>,
    /// Set when scoring failed internally; the submission stays pending.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

/// Materialized view over the journal. Applying the events of a journal in
/// order reproduces the store (and therefore the board) exactly.
#[derive(Debug, Default)]
pub struct Store {
    submissions: BTreeMap<String, SubmissionRecord>,
}

impl Store {
    pub fn from_events(events: &[JournalEvent]) -> Self {
        let mut store = Store::default();
        for event in events {
            store.apply(event);
        }
        store
    }

    pub fn apply(&mut self, event: &JournalEvent) {
        match event {
            JournalEvent::Received {
                id,
                user,
                model_name,
                visibility,
                created_at,
                discarded_self_hits,
            } => {
                self.submissions.insert(
                    id.clone(),
                    SubmissionRecord {
                        id: id.clone(),
                        user: user.clone(),
                        model_name: model_name.clone(),
                        visibility: *visibility,
                        created_at: *created_at,
                        discarded_self_hits: discarded_self_hits.clone(),
                        status: SubmissionStatus::Pending,
                        entry: None,
                        diagnostic: None,
                    },
                );
            }
            JournalEvent::Rejected { id, reasons, .. } => {
                if let Some(record) = self.submissions.get_mut(id) {
                    record.status = SubmissionStatus::Rejected { reasons: reasons.clone() };
                }
            }
            JournalEvent::Scored { id, entry, .. } => {
                if let Some(record) = self.submissions.get_mut(id) {
                    record.status = SubmissionStatus::Scored;
                    record.entry = Some(entry.clone());
                }
            }
            JournalEvent::Withdrawn { id, .. } => {
                if let Some(record) = self.submissions.get_mut(id) {
                    record.status = SubmissionStatus::Withdrawn;
                }
            }
        }
    }

    pub fn get(&self, id: &str) -> Option<&SubmissionRecord> {
        self.submissions.get(id)
    }

    pub fn set_diagnostic(&mut self, id: &str, diagnostic: String) {
        if let Some(record) = self.submissions.get_mut(id) {
            record.diagnostic = Some(diagnostic);
        }
    }

    /// The published board: scored, public, not withdrawn; total order by
    /// macro average desc, submission time asc, id asc.
    pub fn board(&self) -> Vec<LeaderboardEntry> {
        let mut entries: Vec<LeaderboardEntry> = self
            .submissions
            .values()
            .filter(|r| r.visibility == Visibility::Public)
            .filter(|r| matches!(r.status, SubmissionStatus::Scored))
            .filter_map(|r| r.entry.clone())
            .collect();
        entries.sort_by(board_ordering);
        entries
    }

    /// Rate-limit view of submission history.
    pub fn quota_history(&self) -> Vec<QuotaRecord> {
        self.submissions
            .values()
            .map(|r| QuotaRecord {
                user: r.user.clone(),
                created_at: r.created_at,
                rejected: matches!(r.status, SubmissionStatus::Rejected { .. }),
            })
            .collect()
    }
}

/// Shared service state. The journal writer is the single point of
/// persistence; appends and store application happen together under the
/// journal lock so on-disk order matches in-memory order.
pub struct AppState {
    pub cfg: ServerConfig,
    pub registry: &'static [DatasetSpec],
    pub qrels: BTreeMap<String, QrelSet>,
    pub tokens: BTreeMap<String, String>,
    pub store: RwLock<Store>,
    pub journal: Mutex<JournalWriter>,
    pub scoring: tokio::sync::Semaphore,
}

impl AppState {
    /// Loads qrels for every registry dataset, replays the journal, and
    /// refreshes the board snapshot.
    pub fn initialize(cfg: ServerConfig) -> Result<Self, ServerError> {
        let mut qrels = BTreeMap::new();
        for dataset in registry() {
            let path = cfg.qrels_dir.join(format!("{}.qrels", dataset.key));
            let loaded = zbench_core::data::read_qrels(&path).map_err(|e| {
                ServerError::Config(format!("qrels for `{}`: {e}", dataset.key))
            })?;
            qrels.insert(dataset.key.to_string(), loaded.qrels);
        }
        let events = journal::replay(&cfg.data_dir)?;
        let store = Store::from_events(&events);
        let journal_writer = JournalWriter::open(&cfg.data_dir)?;
        journal::write_board_snapshot(&cfg.data_dir, &store.board())?;
        Ok(AppState {
            tokens: cfg.token_map(),
            registry: registry(),
            qrels,
            store: RwLock::new(store),
            journal: Mutex::new(journal_writer),
            scoring: tokio::sync::Semaphore::new(cfg.scoring_workers),
            cfg,
        })
    }

    /// Appends an event and applies it to the store atomically with respect
    /// to other writers, then refreshes the board snapshot.
    pub fn record_event(&self, event: &JournalEvent) -> Result<(), ServerError> {
        {
            let mut journal = self.journal.lock().expect("journal lock");
            journal.append(event)?;
            self.store.write().expect("store lock").apply(event);
        }
        let board = self.store.read().expect("store lock").board();
        journal::write_board_snapshot(&self.cfg.data_dir, &board)
    }

    /// Rate-checks and journals a `Received` event under one journal lock,
    /// so two racing submissions cannot both slip under the quota. The
    /// board itself is unchanged by a pending submission, so no snapshot is
    /// written here.
    pub fn admit_submission(
        &self,
        user: &str,
        now: DateTime<Utc>,
        window: chrono::Duration,
        event: &JournalEvent,
    ) -> Result<crate::rate::RateDecision, ServerError> {
        let mut journal = self.journal.lock().expect("journal lock");
        let history = self.store.read().expect("store lock").quota_history();
        match crate::rate::check_rate_limit(user, now, &history, window) {
            crate::rate::RateDecision::Deny { retry_after } => {
                Ok(crate::rate::RateDecision::Deny { retry_after })
            }
            crate::rate::RateDecision::Allow => {
                journal.append(event)?;
                self.store.write().expect("store lock").apply(event);
                Ok(crate::rate::RateDecision::Allow)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RejectionReason;

    fn received(id: &str, user: &str, visibility: Visibility, ts: i64) -> JournalEvent {
        JournalEvent::Received {
            id: id.into(),
            user: user.into(),
            model_name: format!("model-{id}"),
            visibility,
            created_at: DateTime::from_timestamp(ts, 0).unwrap(),
            discarded_self_hits: BTreeMap::new(),
        }
    }

    fn scored(id: &str, macro_avg: f64, ts: i64) -> JournalEvent {
        JournalEvent::Scored {
            id: id.into(),
            at: Utc::now(),
            entry: LeaderboardEntry {
                submission_id: id.into(),
                model_name: format!("model-{id}"),
                user: "u".into(),
                per_dataset_ndcg: BTreeMap::new(),
                per_dataset_recall: BTreeMap::new(),
                recall_available: false,
                macro_avg,
                submitted_at: DateTime::from_timestamp(ts, 0).unwrap(),
            },
        }
    }

    #[test]
    fn board_excludes_private_rejected_and_withdrawn() {
        let events = vec![
            received("pub", "a", Visibility::Public, 1),
            scored("pub", 0.5, 1),
            received("priv", "a", Visibility::Private, 2),
            scored("priv", 0.9, 2),
            received("rej", "a", Visibility::Public, 3),
            JournalEvent::Rejected {
                id: "rej".into(),
                at: Utc::now(),
                reasons: vec![RejectionReason::new(
                    crate::model::RejectCode::MissingDataset,
                    "x",
                )],
            },
            received("gone", "a", Visibility::Public, 4),
            scored("gone", 0.8, 4),
            JournalEvent::Withdrawn { id: "gone".into(), at: Utc::now() },
        ];
        let store = Store::from_events(&events);
        let board = store.board();
        assert_eq!(board.len(), 1);
        assert_eq!(board[0].submission_id, "pub");
    }

    #[test]
    fn replay_reproduces_store_exactly() {
        let events = vec![
            received("s1", "a", Visibility::Public, 10),
            scored("s1", 0.4, 10),
            received("s2", "b", Visibility::Public, 20),
            scored("s2", 0.6, 20),
            received("s3", "a", Visibility::Public, 30),
        ];
        let once = Store::from_events(&events);
        let twice = Store::from_events(&events);
        assert_eq!(once.board(), twice.board());
        assert_eq!(once.board()[0].submission_id, "s2");
        let history = once.quota_history();
        assert_eq!(history.len(), 3);
        assert!(history.iter().all(|r| !r.rejected));
    }
}

//! Append-only submission journal (line-delimited JSON events).
//!
//! The journal is the source of truth: replaying it from the start
//! reproduces the served board exactly. A materialized `board.json`
//! snapshot is additionally written through an atomic rename after every
//! state change, so readers of the data directory never observe partial
//! state.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::model::{LeaderboardEntry, RejectionReason, Visibility};
use crate::ServerError;

pub const JOURNAL_FILE: &str = "journal.jsonl";
pub const BOARD_SNAPSHOT_FILE: &str = "board.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum JournalEvent {
    Received {
        id: String,
        user: String,
        model_name: String,
        visibility: Visibility,
        created_at: DateTime<Utc>,
        /// Dataset key -> self-retrieval hits discarded during validation.
        discarded_self_hits: BTreeMap<String, usize>,
    },
    Rejected {
        id: String,
        at: DateTime<Utc>,
        reasons: Vec<RejectionReason>,
    },
    Scored {
        id: String,
        at: DateTime<Utc>,
        entry: LeaderboardEntry,
    },
    Withdrawn {
        id: String,
        at: DateTime<Utc>,
    },
}

impl JournalEvent {
    pub fn id(&self) -> &str {
        match self {
            JournalEvent::Received { id, .. }
            | JournalEvent::Rejected { id, .. }
            | JournalEvent::Scored { id, .. }
            | JournalEvent::Withdrawn { id, .. } => id,
        }
    }
}

/// Single-writer append handle. All appends flow through one instance
/// behind a mutex, so events are totally ordered on disk.
pub struct JournalWriter {
    path: PathBuf,
    file: File,
}

impl JournalWriter {
    pub fn open(data_dir: &Path) -> Result<Self, ServerError> {
        std::fs::create_dir_all(data_dir)
            .map_err(|e| ServerError::Io(format!("{}: {e}", data_dir.display())))?;
        let path = data_dir.join(JOURNAL_FILE);
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| ServerError::Io(format!("{}: {e}", path.display())))?;
        Ok(JournalWriter { path, file })
    }

    pub fn append(&mut self, event: &JournalEvent) -> Result<(), ServerError> {
        let mut line = serde_json::to_string(event)
            .map_err(|e| ServerError::Internal(format!("journal encode: {e}")))?;
        line.push('\n');
        self.file
            .write_all(line.as_bytes())
            .and_then(|_| self.file.flush())
            .map_err(|e| ServerError::Io(format!("{}: {e}", self.path.display())))
    }
}

/// Reads every event in append order; an absent journal is an empty one.
pub fn replay(data_dir: &Path) -> Result<Vec<JournalEvent>, ServerError> {
    let path = data_dir.join(JOURNAL_FILE);
    let file = match File::open(&path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(ServerError::Io(format!("{}: {e}", path.display()))),
    };
    let mut events = Vec::new();
    for (line_no, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| ServerError::Io(format!("{}: {e}", path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        let event: JournalEvent = serde_json::from_str(&line).map_err(|e| {
            ServerError::Io(format!("{}:{}: {e}", path.display(), line_no + 1))
        })?;
        events.push(event);
    }
    Ok(events)
}

/// Atomically replaces the materialized board snapshot.
pub fn write_board_snapshot(
    data_dir: &Path,
    board: &[LeaderboardEntry],
) -> Result<(), ServerError> {
    let path = data_dir.join(BOARD_SNAPSHOT_FILE);
    let tmp = data_dir.join(format!("{BOARD_SNAPSHOT_FILE}.tmp"));
    let mut text = serde_json::to_string_pretty(board)
        .map_err(|e| ServerError::Internal(format!("board encode: {e}")))?;
    text.push('\n');
    std::fs::write(&tmp, text).map_err(|e| ServerError::Io(format!("{}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, &path)
        .map_err(|e| ServerError::Io(format!("{}: {e}", path.display())))
}

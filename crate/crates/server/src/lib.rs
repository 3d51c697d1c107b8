//! Self-service leaderboard for the 18-dataset zero-shot retrieval
//! benchmark: TREC run submission over HTTP, protocol validation
//! (depth bounds, self-retrieval filtering, judged-query checks), scoring
//! via the core evaluation module, an append-only journal with atomic
//! board snapshots, and a rolling-window submission rate limit.

pub mod config;
pub mod journal;
pub mod model;
pub mod rate;
pub mod score;
pub mod state;
pub mod validate;

mod api;

pub use api::{router, start, RunningServer};
pub use config::ServerConfig;

#[derive(Debug, thiserror::Error)]
pub enum ServerError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

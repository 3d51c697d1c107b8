//! Service configuration: a single TOML file plus environment overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::ServerError;

pub const ENV_BIND: &str = "ZBENCH_BIND";
pub const ENV_DATA_DIR: &str = "ZBENCH_DATA_DIR";
pub const ENV_QRELS_DIR: &str = "ZBENCH_QRELS_DIR";
pub const ENV_RATE_LIMIT_SECONDS: &str = "ZBENCH_RATE_LIMIT_SECONDS";

fn default_bind() -> String {
    "127.0.0.1:8080".to_string()
}

fn default_rate_limit_seconds() -> u64 {
    86_400
}

fn default_min_depth() -> usize {
    10
}

fn default_max_depth() -> usize {
    100
}

fn default_scoring_workers() -> usize {
    2
}

/// Leaderboard service configuration.
///
/// `users` maps user name to bearer token; `qrels_dir` must hold one
/// `<dataset-key>.qrels` file per registry dataset. `min_depth` exists so
/// operators can relax the at-least-top-10 requirement; the default follows
/// the submission protocol.
#[derive(Debug, Clone, Deserialize)]
pub struct ServerConfig {
    #[serde(default = "default_bind")]
    pub bind: String,
    pub data_dir: PathBuf,
    pub qrels_dir: PathBuf,
    #[serde(default = "default_rate_limit_seconds")]
    pub rate_limit_seconds: u64,
    #[serde(default = "default_min_depth")]
    pub min_depth: usize,
    #[serde(default = "default_max_depth")]
    pub max_depth: usize,
    #[serde(default = "default_scoring_workers")]
    pub scoring_workers: usize,
    pub users: BTreeMap<String, String>,
}

impl ServerConfig {
    /// Loads the TOML file, then applies `ZBENCH_*` environment overrides.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ServerError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| ServerError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg: ServerConfig = toml::from_str(&text)
            .map_err(|e| ServerError::Config(format!("{}: {e}", path.display())))?;
        cfg.apply_env_overrides()?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_env_overrides(&mut self) -> Result<(), ServerError> {
        if let Ok(v) = std::env::var(ENV_BIND) {
            self.bind = v;
        }
        if let Ok(v) = std::env::var(ENV_DATA_DIR) {
            self.data_dir = PathBuf::from(v);
        }
        if let Ok(v) = std::env::var(ENV_QRELS_DIR) {
            self.qrels_dir = PathBuf::from(v);
        }
        if let Ok(v) = std::env::var(ENV_RATE_LIMIT_SECONDS) {
            self.rate_limit_seconds = v
                .parse()
                .map_err(|_| ServerError::Config(format!("bad {ENV_RATE_LIMIT_SECONDS}: {v}")))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ServerError> {
        if self.users.is_empty() {
            return Err(ServerError::Config("no users configured".into()));
        }
        let mut tokens = std::collections::HashSet::new();
        for (user, token) in &self.users {
            if token.is_empty() {
                return Err(ServerError::Config(format!("empty token for user `{user}`")));
            }
            if !tokens.insert(token) {
                return Err(ServerError::Config(format!(
                    "token for user `{user}` is not unique"
                )));
            }
        }
        if self.min_depth < 1 || self.min_depth > self.max_depth {
            return Err(ServerError::Config(format!(
                "need 1 <= min_depth <= max_depth, got {}..{}",
                self.min_depth, self.max_depth
            )));
        }
        if self.scoring_workers < 1 {
            return Err(ServerError::Config("scoring_workers must be >= 1".into()));
        }
        Ok(())
    }

    /// token -> user lookup.
    pub fn token_map(&self) -> BTreeMap<String, String> {
        self.users.iter().map(|(u, t)| (t.clone(), u.clone())).collect()
    }
}

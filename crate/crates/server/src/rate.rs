//! Submission rate limiting: one submission per user per rolling window.

use chrono::{DateTime, Duration, Utc};

/// The quota-relevant view of one past submission.
#[derive(Debug, Clone)]
pub struct QuotaRecord {
    pub user: String,
    pub created_at: DateTime<Utc>,
    /// Rejected submissions never consume quota.
    pub rejected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RateDecision {
    Allow,
    Deny { retry_after: Duration },
}

/// Denies when the user has a non-rejected submission inside the rolling
/// window ending at `now`. The retry hint counts from the most recent
/// blocking submission.
pub fn check_rate_limit(
    user: &str,
    now: DateTime<Utc>,
    history: &[QuotaRecord],
    window: Duration,
) -> RateDecision {
    let blocking = history
        .iter()
        .filter(|r| {
            r.user == user && !r.rejected && r.created_at > now - window && r.created_at <= now
        })
        .map(|r| r.created_at)
        .max();
    match blocking {
        Some(created_at) => RateDecision::Deny { retry_after: created_at + window - now },
        None => RateDecision::Allow,
    }
}

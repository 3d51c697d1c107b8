//! HTTP surface of the leaderboard service.
//!
//! ```text
//! POST   /api/submissions        multipart: `metadata` JSON part + one
//!                                TREC run part per dataset (part name =
//!                                dataset key) -> 202 {id} or 400/429
//! GET    /api/submissions/{id}   owner-only status/report
//! GET    /api/leaderboard        public entries, macro average descending
//! GET    /api/datasets           the 18-dataset registry
//! DELETE /api/submissions/{id}   owner withdraws a submission
//! ```

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::{DefaultBodyLimit, Multipart, Path, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::{Duration, Utc};
use serde::Deserialize;
use serde_json::json;
use zbench_core::data::{read_run_from_str, Ranking};

use crate::journal::JournalEvent;
use crate::model::{RejectCode, RejectionReason, Visibility};
use crate::rate::RateDecision;
use crate::score::score_submission;
use crate::state::AppState;
use crate::validate::validate_submission;
use crate::{ServerConfig, ServerError};

type SharedState = Arc<AppState>;

const MAX_UPLOAD_BYTES: usize = 256 * 1024 * 1024;

/// A started service bound to `addr`.
pub struct RunningServer {
    pub addr: SocketAddr,
    pub handle: tokio::task::JoinHandle<()>,
}

/// Initializes state (qrels, journal replay) and serves until aborted.
pub async fn start(cfg: ServerConfig) -> Result<RunningServer, ServerError> {
    let state = Arc::new(AppState::initialize(cfg)?);
    let bind = state.cfg.bind.clone();
    let app = router(state);
    let listener = tokio::net::TcpListener::bind(&bind)
        .await
        .map_err(|e| ServerError::Io(format!("bind {bind}: {e}")))?;
    let addr = listener
        .local_addr()
        .map_err(|e| ServerError::Io(format!("local addr: {e}")))?;
    let handle = tokio::spawn(async move {
        if let Err(e) = axum::serve(listener, app).await {
            eprintln!("server error: {e}");
        }
    });
    Ok(RunningServer { addr, handle })
}

pub fn router(state: SharedState) -> Router {
    Router::new()
        .route("/api/submissions", post(create_submission))
        .route(
            "/api/submissions/{id}",
            get(get_submission).delete(delete_submission),
        )
        .route("/api/leaderboard", get(get_leaderboard))
        .route("/api/datasets", get(get_datasets))
        .layer(DefaultBodyLimit::max(MAX_UPLOAD_BYTES))
        .with_state(state)
}

/// JSON error response carrying its HTTP status.
struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
    retry_after: Option<i64>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            body: json!({ "error": message.into() }),
            retry_after: None,
        }
    }

    fn unauthorized() -> Self {
        Self::new(StatusCode::UNAUTHORIZED, "missing or unknown bearer token")
    }

    fn not_found() -> Self {
        Self::new(StatusCode::NOT_FOUND, "unknown submission id")
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn rate_limited(retry_after: Duration) -> Self {
        let seconds = retry_after.num_seconds().max(0);
        ApiError {
            status: StatusCode::TOO_MANY_REQUESTS,
            body: json!({
                "error": "rate limited: one submission per user per window",
                "retry_after_seconds": seconds,
            }),
            retry_after: Some(seconds),
        }
    }
}

impl From<ServerError> for ApiError {
    fn from(e: ServerError) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut response = (self.status, Json(self.body)).into_response();
        if let Some(seconds) = self.retry_after {
            if let Ok(value) = seconds.to_string().parse() {
                response.headers_mut().insert(header::RETRY_AFTER, value);
            }
        }
        response
    }
}

fn authorize(state: &AppState, headers: &HeaderMap) -> Result<String, ApiError> {
    let token = headers
        .get(header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "))
        .ok_or_else(ApiError::unauthorized)?;
    state.tokens.get(token).cloned().ok_or_else(ApiError::unauthorized)
}

#[derive(Debug, Deserialize)]
struct SubmissionMetadata {
    model_name: String,
    #[serde(default = "default_visibility")]
    visibility: Visibility,
}

fn default_visibility() -> Visibility {
    Visibility::Public
}

async fn create_submission(
    State(state): State<SharedState>,
    headers: HeaderMap,
    mut multipart: Multipart,
) -> Result<Response, ApiError> {
    let user = authorize(&state, &headers)?;
    let now = Utc::now();

    let mut metadata: Option<SubmissionMetadata> = None;
    let mut runs: BTreeMap<String, Ranking> = BTreeMap::new();
    let mut parse_reasons: Vec<RejectionReason> = Vec::new();
    while let Some(field) = multipart
        .next_field()
        .await
        .map_err(|e| ApiError::bad_request(format!("multipart: {e}")))?
    {
        let name = field.name().unwrap_or_default().to_string();
        let text = field
            .text()
            .await
            .map_err(|e| ApiError::bad_request(format!("part `{name}`: {e}")))?;
        if name == "metadata" {
            metadata = Some(
                serde_json::from_str(&text)
                    .map_err(|e| ApiError::bad_request(format!("metadata: {e}")))?,
            );
        } else if name.is_empty() {
            return Err(ApiError::bad_request("multipart part without a name"));
        } else {
            match read_run_from_str(&text, &name) {
                Ok(run) => {
                    runs.insert(name, run);
                }
                Err(e) => parse_reasons.push(
                    RejectionReason::new(RejectCode::MalformedRun, e.to_string()).dataset(name),
                ),
            }
        }
    }
    let metadata = metadata.ok_or_else(|| ApiError::bad_request("missing `metadata` part"))?;
    if metadata.model_name.trim().is_empty() {
        return Err(ApiError::bad_request("metadata.model_name must be nonempty"));
    }

    let report = validate_submission(
        &runs,
        state.registry,
        &state.qrels,
        state.cfg.min_depth,
        state.cfg.max_depth,
    );

    let id = uuid::Uuid::new_v4().to_string();
    let received = JournalEvent::Received {
        id: id.clone(),
        user: user.clone(),
        model_name: metadata.model_name.clone(),
        visibility: metadata.visibility,
        created_at: now,
        discarded_self_hits: report.discarded_self_hits.clone(),
    };

    // Admission (rate check + journal append) is atomic under the journal
    // lock, so two racing submissions cannot both slip under the quota.
    let window = Duration::seconds(state.cfg.rate_limit_seconds as i64);
    match state.admit_submission(&user, now, window, &received)? {
        RateDecision::Deny { retry_after } => return Err(ApiError::rate_limited(retry_after)),
        RateDecision::Allow => {}
    }

    let mut reasons = parse_reasons;
    reasons.extend(report.reasons.clone());
    if !reasons.is_empty() {
        state.record_event(&JournalEvent::Rejected {
            id: id.clone(),
            at: now,
            reasons: reasons.clone(),
        })?;
        let body = json!({ "id": id, "status": "rejected", "reasons": reasons });
        return Ok((StatusCode::BAD_REQUEST, Json(body)).into_response());
    }

    let task_state = state.clone();
    let model_name = metadata.model_name;
    let filtered_runs = report.filtered_runs;
    let recall_available = report.uniform_depth_100;
    let task_id = id.clone();
    tokio::spawn(async move {
        let _permit = task_state.scoring.acquire().await.expect("semaphore open");
        let result = score_submission(
            &task_id,
            &user,
            &model_name,
            now,
            &filtered_runs,
            task_state.registry,
            &task_state.qrels,
            recall_available,
        );
        match result {
            Ok(entry) => {
                if let Err(e) = task_state.record_event(&JournalEvent::Scored {
                    id: task_id.clone(),
                    at: Utc::now(),
                    entry,
                }) {
                    eprintln!("failed to record scored submission {task_id}: {e}");
                }
            }
            Err(e) => {
                eprintln!("scoring {task_id} failed: {e}");
                task_state
                    .store
                    .write()
                    .expect("store lock")
                    .set_diagnostic(&task_id, e.to_string());
            }
        }
    });

    let body = json!({ "id": id, "status": "pending" });
    Ok((StatusCode::ACCEPTED, Json(body)).into_response())
}

async fn get_submission(
    State(state): State<SharedState>,
    headers: HeaderMap,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let user = authorize(&state, &headers)?;
    let store = state.store.read().expect("store lock");
    let record = store.get(&id).filter(|r| r.user == user).ok_or_else(ApiError::not_found)?;
    Ok(Json(record.clone()).into_response())
}

async fn delete_submission(
    State(state): State<SharedState>,
    headers: HeaderMap,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let user = authorize(&state, &headers)?;
    {
        let store = state.store.read().expect("store lock");
        store.get(&id).filter(|r| r.user == user).ok_or_else(ApiError::not_found)?;
    }
    state.record_event(&JournalEvent::Withdrawn { id: id.clone(), at: Utc::now() })?;
    Ok(Json(json!({ "id": id, "status": "withdrawn" })).into_response())
}

async fn get_leaderboard(State(state): State<SharedState>) -> Response {
    let board = state.store.read().expect("store lock").board();
    Json(json!({ "entries": board })).into_response()
}

async fn get_datasets(State(state): State<SharedState>) -> Response {
    Json(state.registry).into_response()
}

//! JSON analytics API over a loaded store.
//!
//! Every number in a response comes from the store's CQ and view
//! operations; handlers only select and wrap. Field names are listed in
//! `docs/api.md`.

use std::io;
use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use linkflows_core::store::{
    CommentFilter, Cq6Mode, CqQuestion, QuadStore, StoreError, DEFAULT_CQ5_THRESHOLD,
};
use serde::Serialize;
use serde_json::{json, Value};
use tokio::net::TcpListener;
use tokio::task::JoinHandle;

/// The store currently served. Requests take a snapshot of the `Arc`, so a
/// reload swaps it without disturbing requests in progress.
#[derive(Debug)]
pub struct ApiState {
    store: RwLock<Arc<QuadStore>>,
}

impl ApiState {
    pub fn new(store: QuadStore) -> Arc<Self> {
        Arc::new(ApiState {
            store: RwLock::new(Arc::new(store)),
        })
    }

    pub fn store(&self) -> Arc<QuadStore> {
        self.store.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    /// Replaces the store, returning the previous one.
    pub fn swap(&self, store: QuadStore) -> Arc<QuadStore> {
        let mut guard = self.store.write().unwrap_or_else(|e| e.into_inner());
        std::mem::replace(&mut *guard, Arc::new(store))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: u16,
    pub error: &'static str,
    pub message: String,
}

impl ApiError {
    fn bad_request(error: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status: 400,
            error,
            message: message.into(),
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let (status, error) = match &e {
            StoreError::UnknownArticle(_) => (404, "UNKNOWN_ARTICLE"),
            StoreError::InvalidFilter { .. } => (400, "INVALID_FILTER"),
            _ => (500, "STORE"),
        };
        ApiError {
            status,
            error,
            message: e.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("payloads serialize")
}

async fn articles(State(state): State<Arc<ApiState>>) -> ApiResult {
    Ok(Json(to_json(&state.store().domain().articles())))
}

async fn article(State(state): State<Arc<ApiState>>, Path(id): Path<String>) -> ApiResult {
    Ok(Json(to_json(state.store().domain().article(&id)?)))
}

async fn reviewers(State(state): State<Arc<ApiState>>, Path(id): Path<String>) -> ApiResult {
    let store = state.store();
    let info = store.domain().article(&id)?;
    Ok(Json(json!({
        "article": info.uri,
        "alias": info.alias,
        "rows": to_json(&store.cq1(&id)?.rows),
        "stacks": to_json(&store.reviewer_stacks(&id)?),
    })))
}

async fn sections(State(state): State<Arc<ApiState>>, Path(id): Path<String>) -> ApiResult {
    let store = state.store();
    let info = store.domain().article(&id)?;
    Ok(Json(json!({
        "article": info.uri,
        "alias": info.alias,
        "rows": to_json(&store.section_matrix(&id)?.rows),
    })))
}

/// Parses the question number and its `threshold` / `mode` parameters.
pub fn parse_question(n: &str, params: &[(String, String)]) -> Result<CqQuestion, ApiError> {
    let mut threshold = DEFAULT_CQ5_THRESHOLD;
    let mut mode = Cq6Mode::default();
    for (k, v) in params {
        match k.as_str() {
            "threshold" => {
                threshold = v
                    .parse()
                    .ok()
                    .filter(|t| (1..=5).contains(t))
                    .ok_or_else(|| {
                        ApiError::bad_request("INVALID_PARAMETER", format!("threshold={v}"))
                    })?
            }
            "mode" => {
                mode = serde_json::from_value(Value::String(v.clone()))
                    .map_err(|_| ApiError::bad_request("INVALID_PARAMETER", format!("mode={v}")))?
            }
            _ => {
                return Err(ApiError::bad_request(
                    "INVALID_PARAMETER",
                    format!("unknown parameter {k}"),
                ))
            }
        }
    }
    n.parse()
        .ok()
        .and_then(|n| CqQuestion::new(n, threshold, mode))
        .ok_or_else(|| {
            ApiError::bad_request("INVALID_QUESTION", format!("no competency question {n}"))
        })
}

async fn cq(
    State(state): State<Arc<ApiState>>,
    Path((id, n)): Path<(String, String)>,
    Query(params): Query<Vec<(String, String)>>,
) -> ApiResult {
    let q = parse_question(&n, &params)?;
    Ok(Json(state.store().cq_payload(&id, q)?))
}

async fn comments(
    State(state): State<Arc<ApiState>>,
    Query(params): Query<Vec<(String, String)>>,
) -> ApiResult {
    let filter = CommentFilter::from_pairs(params.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
    let list = state.store().comments(&filter)?;
    Ok(Json(
        json!({ "count": list.len(), "comments": to_json(&list) }),
    ))
}

async fn stats(State(state): State<Arc<ApiState>>) -> ApiResult {
    Ok(Json(to_json(&state.store().stats())))
}

async fn fallback() -> ApiError {
    ApiError {
        status: 404,
        error: "NOT_FOUND",
        message: "no such endpoint".into(),
    }
}

pub fn router(state: Arc<ApiState>) -> Router {
    Router::new()
        .route("/api/stats", get(stats))
        .route("/api/articles", get(articles))
        .route("/api/articles/{id}", get(article))
        .route("/api/articles/{id}/reviewers", get(reviewers))
        .route("/api/articles/{id}/sections", get(sections))
        .route("/api/articles/{id}/cq/{n}", get(cq))
        .route("/api/comments", get(comments))
        .fallback(fallback)
        .with_state(state)
}

/// Binds `addr` and serves the API in a background task.
pub async fn spawn(
    state: Arc<ApiState>,
    addr: SocketAddr,
) -> io::Result<(SocketAddr, JoinHandle<io::Result<()>>)> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    let app = router(state);
    Ok((
        local,
        tokio::spawn(async move { axum::serve(listener, app).await }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn question_parsing() {
        assert_eq!(
            parse_question("5", &[]).unwrap(),
            CqQuestion::Q5 { threshold: 4 }
        );
        let p = vec![("threshold".to_owned(), "2".to_owned())];
        assert_eq!(
            parse_question("5", &p).unwrap(),
            CqQuestion::Q5 { threshold: 2 }
        );
        let m = vec![("mode".to_owned(), "negative-compulsory".to_owned())];
        assert_eq!(
            parse_question("6", &m).unwrap(),
            CqQuestion::Q6 {
                mode: Cq6Mode::NegativeCompulsory
            }
        );
        assert_eq!(
            parse_question("8", &[]).unwrap_err().error,
            "INVALID_QUESTION"
        );
        assert_eq!(
            parse_question("x", &[]).unwrap_err().error,
            "INVALID_QUESTION"
        );
        let bad = vec![("threshold".to_owned(), "9".to_owned())];
        assert_eq!(
            parse_question("5", &bad).unwrap_err().error,
            "INVALID_PARAMETER"
        );
    }

    #[test]
    fn swap_replaces_the_store() {
        let state = ApiState::new(QuadStore::default());
        let before = state.store();
        let old = state.swap(QuadStore::default());
        assert!(Arc::ptr_eq(&before, &old));
        assert!(!Arc::ptr_eq(&before, &state.store()));
    }
}

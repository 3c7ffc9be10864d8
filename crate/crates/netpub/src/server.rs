//! Publish and content-addressed retrieval over HTTP.
//!
//! `POST /np` takes a TriG nanopublication, verifies it and stores it as
//! `{artifact code}.trig`. `GET /np/{code}` returns the stored file, or
//! canonical N-Quads with `?format=nq`. `GET /stats` reports request
//! counters.

use std::io;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use axum::extract::{Path as UrlPath, Query, Request, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use linkflows_core::nanopub::{validate, verify_trusty, TrustyCode};
use linkflows_core::rdf::parse_trig;
use linkflows_core::Nanopublication;
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tokio::sync::oneshot;
use tokio::task::JoinHandle;

pub const TRIG: &str = "application/trig";
pub const NQUADS: &str = "application/n-quads";

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub addr: SocketAddr,
    pub dir: PathBuf,
    /// Added to every `/np` request before it is handled.
    pub latency: Option<Duration>,
    pub stats: Arc<ServerStats>,
}

impl ServerConfig {
    pub fn new(addr: SocketAddr, dir: impl Into<PathBuf>) -> Self {
        ServerConfig {
            addr,
            dir: dir.into(),
            latency: None,
            stats: Arc::new(ServerStats::default()),
        }
    }

    /// Binds an ephemeral port on the loopback interface.
    pub fn local(dir: impl Into<PathBuf>) -> Self {
        Self::new(SocketAddr::from(([127, 0, 0, 1], 0)), dir)
    }

    pub fn latency(mut self, latency: Duration) -> Self {
        self.latency = Some(latency);
        self
    }

    /// Shares a counter set, e.g. across several servers in a test.
    pub fn stats(mut self, stats: Arc<ServerStats>) -> Self {
        self.stats = stats;
        self
    }
}

/// Counters over `/np` requests.
#[derive(Debug, Default)]
pub struct ServerStats {
    in_flight: AtomicUsize,
    max_in_flight: AtomicUsize,
    requests: AtomicU64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsSnapshot {
    pub in_flight: usize,
    pub max_in_flight: usize,
    pub requests: u64,
}

impl ServerStats {
    pub fn snapshot(&self) -> StatsSnapshot {
        StatsSnapshot {
            in_flight: self.in_flight.load(Ordering::SeqCst),
            max_in_flight: self.max_in_flight.load(Ordering::SeqCst),
            requests: self.requests.load(Ordering::SeqCst),
        }
    }

    pub fn reset(&self) {
        self.max_in_flight
            .store(self.in_flight.load(Ordering::SeqCst), Ordering::SeqCst);
        self.requests.store(0, Ordering::SeqCst);
    }

    fn enter(&self) {
        let now = self.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
        self.max_in_flight.fetch_max(now, Ordering::SeqCst);
        self.requests.fetch_add(1, Ordering::SeqCst);
    }

    fn leave(&self) {
        self.in_flight.fetch_sub(1, Ordering::SeqCst);
    }
}

struct AppState {
    dir: PathBuf,
    latency: Option<Duration>,
    stats: Arc<ServerStats>,
    tmp_counter: AtomicU64,
}

/// Error body of every 4xx response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishBody {
    pub uri: String,
    pub code: String,
    pub created: bool,
}

fn reject(status: StatusCode, rule: &str, message: impl Into<String>) -> Response {
    (
        status,
        Json(ErrorBody {
            error: rule.to_owned(),
            message: message.into(),
        }),
    )
        .into_response()
}

fn internal(e: io::Error) -> Response {
    reject(StatusCode::INTERNAL_SERVER_ERROR, "STORAGE", e.to_string())
}

/// Parses and checks a published body; the error is `(rule id, message)`.
pub fn check_body(body: &str) -> Result<Nanopublication, (&'static str, String)> {
    let quads = parse_trig(body).map_err(|e| ("PARSE_ERROR", e.to_string()))?;
    let n =
        Nanopublication::from_quads(quads).map_err(|e| ("NOT_A_NANOPUBLICATION", e.to_string()))?;
    let report = validate(&n);
    if let Some(rule) = report.first_rule() {
        return Err((rule.id(), report.to_string()));
    }
    match verify_trusty(&n) {
        Ok(true) => Ok(n),
        Ok(false) => Err((
            "TRUSTY_MISMATCH",
            format!("{} does not match its content", n.uri()),
        )),
        Err(e) => Err(("NOT_TRUSTY", e.to_string())),
    }
}

fn stored_path(dir: &Path, code: &TrustyCode) -> PathBuf {
    dir.join(format!("{}.trig", code.as_str()))
}

async fn publish(State(state): State<Arc<AppState>>, body: String) -> Response {
    let n = match check_body(&body) {
        Ok(n) => n,
        Err((rule, message)) => return reject(StatusCode::BAD_REQUEST, rule, message),
    };
    let code = n
        .artifact_code()
        .expect("verified nanopublications carry a code");
    let path = stored_path(&state.dir, &code);
    let created = match tokio::fs::try_exists(&path).await {
        Ok(true) => false,
        Ok(false) => {
            // Write-then-rename so readers never see a partial file.
            let tmp = state.dir.join(format!(
                ".{}.{}.tmp",
                code.as_str(),
                state.tmp_counter.fetch_add(1, Ordering::SeqCst)
            ));
            if let Err(e) = tokio::fs::write(&tmp, n.to_trig()).await {
                return internal(e);
            }
            if let Err(e) = tokio::fs::rename(&tmp, &path).await {
                return internal(e);
            }
            true
        }
        Err(e) => return internal(e),
    };
    let location = format!("/np/{}", code.as_str());
    let status = if created {
        StatusCode::CREATED
    } else {
        StatusCode::OK
    };
    let mut resp = (
        status,
        Json(PublishBody {
            uri: n.uri().as_str().to_owned(),
            code: code.as_str().to_owned(),
            created,
        }),
    )
        .into_response();
    resp.headers_mut().insert(
        header::LOCATION,
        HeaderValue::from_str(&location).expect("codes are URL-safe"),
    );
    resp
}

#[derive(Debug, Deserialize)]
struct GetParams {
    format: Option<String>,
}

async fn retrieve(
    State(state): State<Arc<AppState>>,
    UrlPath(code): UrlPath<String>,
    Query(params): Query<GetParams>,
) -> Response {
    let Some(code) = TrustyCode::parse(&code) else {
        return reject(
            StatusCode::NOT_FOUND,
            "NOT_FOUND",
            format!("no nanopublication {code}"),
        );
    };
    let text = match tokio::fs::read_to_string(stored_path(&state.dir, &code)).await {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            return reject(
                StatusCode::NOT_FOUND,
                "NOT_FOUND",
                format!("no nanopublication {}", code.as_str()),
            )
        }
        Err(e) => return internal(e),
    };
    match params.format.as_deref() {
        None | Some("trig") => ([(header::CONTENT_TYPE, TRIG)], text).into_response(),
        Some("nq") => match parse_trig(&text) {
            Ok(q) => (
                [(header::CONTENT_TYPE, NQUADS)],
                linkflows_core::rdf::canonical_nquads(&q),
            )
                .into_response(),
            Err(e) => reject(StatusCode::INTERNAL_SERVER_ERROR, "STORAGE", e.to_string()),
        },
        Some(other) => reject(
            StatusCode::BAD_REQUEST,
            "BAD_FORMAT",
            format!("unknown format {other}"),
        ),
    }
}

async fn stats(State(state): State<Arc<AppState>>) -> Json<StatsSnapshot> {
    Json(state.stats.snapshot())
}

async fn track(State(state): State<Arc<AppState>>, req: Request, next: Next) -> Response {
    state.stats.enter();
    if let Some(d) = state.latency {
        tokio::time::sleep(d).await;
    }
    let resp = next.run(req).await;
    state.stats.leave();
    resp
}

fn router(state: Arc<AppState>) -> Router {
    let np = Router::new()
        .route("/np", post(publish))
        .route("/np/{code}", get(retrieve))
        .layer(middleware::from_fn_with_state(state.clone(), track));
    Router::new()
        .merge(np)
        .route("/stats", get(stats))
        .with_state(state)
}

pub struct RunningServer {
    addr: SocketAddr,
    stats: Arc<ServerStats>,
    shutdown: Option<oneshot::Sender<()>>,
    task: JoinHandle<io::Result<()>>,
}

impl RunningServer {
    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    /// Base URL, e.g. `http://127.0.0.1:4000`.
    pub fn url(&self) -> String {
        format!("http://{}", self.addr)
    }

    pub fn stats(&self) -> &Arc<ServerStats> {
        &self.stats
    }

    /// Stops accepting connections and waits for the server task.
    pub async fn shutdown(mut self) -> io::Result<()> {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        self.task.await.map_err(io::Error::other)?
    }

    /// Runs until the task ends or Ctrl-C.
    pub async fn wait(mut self) -> io::Result<()> {
        tokio::select! {
            r = &mut self.task => r.map_err(io::Error::other)?,
            _ = tokio::signal::ctrl_c() => self.shutdown().await,
        }
    }
}

pub async fn serve(config: ServerConfig) -> io::Result<RunningServer> {
    tokio::fs::create_dir_all(&config.dir).await?;
    let listener = TcpListener::bind(config.addr).await?;
    let addr = listener.local_addr()?;
    let state = Arc::new(AppState {
        dir: config.dir,
        latency: config.latency,
        stats: config.stats.clone(),
        tmp_counter: AtomicU64::new(0),
    });
    let (tx, rx) = oneshot::channel::<()>();
    let app = router(state);
    let task = tokio::spawn(async move {
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = rx.await;
            })
            .await
    });
    Ok(RunningServer {
        addr,
        stats: config.stats,
        shutdown: Some(tx),
        task,
    })
}

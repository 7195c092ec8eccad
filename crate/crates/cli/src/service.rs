//! The HTTP/JSON service.
//!
//! Every handler except `/register` only reads shared state; `/register`
//! takes the registry write lock, which also serializes writes to the
//! registry file.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use serde_json::Value;
use tower_http::services::ServeDir;

use hclcolor::analysis::PickQuery;
use hclcolor::palettes::{PaletteType, Registry};
use hclcolor::Execution;

use crate::api::{self, ApiError, ApiResult, GenerateRequest, ListResponse, RegisterRequest};
use crate::cli::ServeArgs;
use crate::registry_file;

pub struct AppState {
    pub registry: RwLock<Registry>,
    /// Registry file rewritten after each registration, if any.
    pub registry_path: Option<PathBuf>,
    pub exec: Execution,
}

impl AppState {
    pub fn new(registry: Registry, registry_path: Option<PathBuf>) -> Self {
        AppState {
            registry: RwLock::new(registry),
            registry_path,
            exec: Execution::default(),
        }
    }

    fn read(&self) -> std::sync::RwLockReadGuard<'_, Registry> {
        self.registry.read().unwrap_or_else(|e| e.into_inner())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self {
            ApiError::Validation { .. } => StatusCode::BAD_REQUEST,
            ApiError::NotFound { .. } => StatusCode::NOT_FOUND,
            ApiError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(self.body())).into_response()
    }
}

type Shared = State<Arc<AppState>>;

fn reply<T: Serialize>(r: ApiResult<T>) -> Response {
    match r {
        Ok(v) => Json(v).into_response(),
        Err(e) => e.into_response(),
    }
}

fn body_value(bytes: &Bytes) -> ApiResult<Value> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::field("body", e.to_string()))
}

/// Runs CPU-heavy work off the async executor.
async fn blocking<T, F>(f: F) -> ApiResult<T>
where
    T: Send + 'static,
    F: FnOnce() -> ApiResult<T> + Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .unwrap_or_else(|e| Err(ApiError::Io(format!("worker failed: {e}"))))
}

async fn list_palettes(State(state): Shared, Query(query): Query<HashMap<String, String>>) -> Response {
    let result = (|| {
        if let Some(key) = query.keys().find(|k| k.as_str() != "type") {
            return Err(ApiError::field(key, "unknown query parameter"));
        }
        let filter = query
            .get("type")
            .map(|t| t.parse::<PaletteType>())
            .transpose()
            .map_err(|e| ApiError::field("type", e.to_string()))?;
        Ok(ListResponse {
            palettes: api::list(&state.read(), filter),
        })
    })();
    reply(result)
}

async fn generate(State(state): Shared, body: Bytes) -> Response {
    let result = body_value(&body)
        .and_then(GenerateRequest::from_json)
        .and_then(|req| api::generate_with_trace(&state.read(), &req));
    reply(result)
}

async fn cvd(body: Bytes) -> Response {
    reply(api::parse_json::<api::CvdRequest>(&body).and_then(|req| api::cvd(&req)))
}

async fn analyze(State(state): Shared, body: Bytes) -> Response {
    let exec = state.exec;
    reply(blocking(move || api::analyze(&api::parse_json(&body)?, exec)).await)
}

async fn pick(State(state): Shared, body: Bytes) -> Response {
    let exec = state.exec;
    reply(blocking(move || api::pick(&api::parse_json::<PickQuery>(&body)?, exec)).await)
}

async fn register(State(state): Shared, body: Bytes) -> Response {
    let result = body_value(&body).and_then(RegisterRequest::from_json).and_then(|req| {
        let mut registry = state.registry.write().unwrap_or_else(|e| e.into_inner());
        // Validate and persist on a copy so a failed write leaves the
        // in-memory registry unchanged.
        let mut next = registry.clone();
        let out = api::register(&mut next, req)?;
        if let Some(path) = &state.registry_path {
            registry_file::save(&next, path)?;
        }
        *registry = next;
        Ok(out)
    });
    reply(result)
}

/// The API routes, plus static files from `static_dir` at the root.
pub fn router(state: Arc<AppState>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/palettes", get(list_palettes))
        .route("/generate", post(generate))
        .route("/cvd", post(cvd))
        .route("/analyze", post(analyze))
        .route("/pick", post(pick))
        .route("/register", post(register))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until interrupted. Used by `hclcolor serve`.
pub fn serve_blocking(registry: Registry, registry_path: Option<PathBuf>, args: ServeArgs) -> ApiResult<String> {
    let addr: SocketAddr = format!("{}:{}", args.bind, args.port)
        .parse()
        .map_err(|e| ApiError::field("bind", format!("{e}")))?;
    if let Some(dir) = &args.static_dir {
        if !dir.is_dir() {
            return Err(ApiError::Io(format!("{}: not a directory", dir.display())));
        }
    }
    let state = Arc::new(AppState::new(registry, registry_path));
    let app = router(state, args.static_dir);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| ApiError::Io(e.to_string()))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| ApiError::Io(format!("binding {addr}: {e}")))?;
        let local = listener.local_addr().map_err(|e| ApiError::Io(e.to_string()))?;
        eprintln!("listening on http://{local}");
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| ApiError::Io(e.to_string()))
    })?;
    Ok(String::new())
}

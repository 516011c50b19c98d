use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::State;
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use plabic_core::{Collection, CollectionJson, Error};
use serde::{Deserialize, Serialize};

use crate::session::Session;
use crate::{error_name, to_json_string, Failure};

/// Header carrying the client token; requests without it share the `default` session.
pub const TOKEN_HEADER: &str = "x-session-token";

pub struct AppState {
    seed: Collection,
    cut_limit: usize,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
}

impl AppState {
    pub fn new(seed: Collection, cut_limit: usize) -> AppState {
        AppState { seed, cut_limit, sessions: Mutex::new(HashMap::new()) }
    }

    fn session(&self, headers: &HeaderMap) -> Result<Arc<Mutex<Session>>, ApiError> {
        let token = headers.get(TOKEN_HEADER).and_then(|v| v.to_str().ok()).unwrap_or("default").to_string();
        let mut sessions = self.sessions.lock().expect("session table");
        if let Some(s) = sessions.get(&token) {
            return Ok(s.clone());
        }
        let s = Arc::new(Mutex::new(Session::with_cut_limit(self.seed.clone(), self.cut_limit)?));
        sessions.insert(token, s.clone());
        Ok(s)
    }
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: &'static str,
    message: String,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match Failure::of(&e) {
            Failure::InvalidInput => StatusCode::BAD_REQUEST,
            Failure::Unsupported => StatusCode::UNPROCESSABLE_ENTITY,
            Failure::Precondition => StatusCode::CONFLICT,
            Failure::Environment | Failure::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError { status, body: ErrorBody { error: error_name(&e), message: e.to_string() } }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, body: ErrorBody { error: "Malformed", message: e.body_text() } }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, json_response(&self.body)).into_response()
    }
}

fn json_response<T: Serialize>(value: &T) -> Response {
    ([("content-type", "application/json")], to_json_string(value)).into_response()
}

#[derive(Debug, Deserialize)]
pub struct LabelBody {
    pub label: Vec<usize>,
}

#[derive(Debug, Deserialize)]
pub struct CutBody {
    pub arrows: Vec<usize>,
}

type Shared = Arc<AppState>;

/// Runs `f` on the caller's session off the async runtime; the session lock keeps
/// each session single-writer.
async fn with_session<T, F>(app: Shared, headers: HeaderMap, f: F) -> Result<Response, ApiError>
where
    F: FnOnce(&mut Session) -> Result<T, ApiError> + Send + 'static,
    T: Serialize,
{
    tokio::task::spawn_blocking(move || {
        let session = app.session(&headers)?;
        let mut s = session.lock().expect("session");
        let value = f(&mut s)?;
        Ok(json_response(&value))
    })
    .await
    .map_err(|e| ApiError::from(Error::Internal(e.to_string())))?
}

async fn state(State(app): State<Shared>, headers: HeaderMap) -> Result<Response, ApiError> {
    with_session(app, headers, |s| Ok(s.state())).await
}

async fn report(State(app): State<Shared>, headers: HeaderMap) -> Result<Response, ApiError> {
    with_session(app, headers, |s| Ok(s.report().clone())).await
}

async fn cuts(State(app): State<Shared>, headers: HeaderMap) -> Result<Response, ApiError> {
    with_session(app, headers, |s| Ok(s.cuts())).await
}

async fn load(
    State(app): State<Shared>,
    headers: HeaderMap,
    body: Result<Json<CollectionJson>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(json) = body?;
    let coll = Collection::from_json(&json)?;
    with_session(app, headers, move |s| {
        s.load(coll)?;
        Ok(s.state())
    })
    .await
}

async fn mutate(
    State(app): State<Shared>,
    headers: HeaderMap,
    body: Result<Json<LabelBody>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(body) = body?;
    with_session(app, headers, move |s| {
        s.mutate(&body.label)?;
        Ok(s.state())
    })
    .await
}

async fn orbit_mutate(
    State(app): State<Shared>,
    headers: HeaderMap,
    body: Result<Json<LabelBody>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(body) = body?;
    with_session(app, headers, move |s| {
        s.orbit_mutate(&body.label)?;
        Ok(s.state())
    })
    .await
}

async fn set_cut(
    State(app): State<Shared>,
    headers: HeaderMap,
    body: Result<Json<CutBody>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(body) = body?;
    with_session(app, headers, move |s| {
        s.set_cut(&body.arrows)?;
        Ok(s.state())
    })
    .await
}

async fn cut_mutate(
    State(app): State<Shared>,
    headers: HeaderMap,
    body: Result<Json<LabelBody>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(body) = body?;
    with_session(app, headers, move |s| {
        s.cut_mutate(&body.label)?;
        Ok(s.state())
    })
    .await
}

async fn undo(State(app): State<Shared>, headers: HeaderMap) -> Result<Response, ApiError> {
    with_session(app, headers, |s| {
        if !s.undo()? {
            return Err(ApiError {
                status: StatusCode::CONFLICT,
                body: ErrorBody { error: "NothingToUndo", message: "undo stack is empty".into() },
            });
        }
        Ok(s.state())
    })
    .await
}

pub fn router(app: AppState) -> Router {
    Router::new()
        .route("/api/state", get(state))
        .route("/api/load", post(load))
        .route("/api/mutate", post(mutate))
        .route("/api/orbit-mutate", post(orbit_mutate))
        .route("/api/cut", post(set_cut))
        .route("/api/cut-mutate", post(cut_mutate))
        .route("/api/cuts", get(cuts))
        .route("/api/report", get(report))
        .route("/api/undo", post(undo))
        .with_state(Arc::new(app))
}

pub async fn serve(listener: tokio::net::TcpListener, app: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(app)).await
}

//! In-memory mutation sessions behind a JSON API.
//!
//! GET /seeds, POST /session, POST /session/{id}/mutate, POST
//! /session/{id}/undo, GET /session/{id}/path.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use lpa::catalog::{builtin_seed, BUILTIN_NAMES};
use lpa::explore::Budget;
use lpa::ZSeed;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::sync::OnceCell;

use crate::context::{self, Class};
use crate::render::{render, RenderedSeed};

type OrbitNames = Arc<HashMap<String, String>>;

pub struct AppState {
    sessions: Mutex<HashMap<String, Arc<tokio::sync::Mutex<Session>>>>,
    next_id: AtomicU64,
    workers: usize,
    /// orbit name by key hash, for classes with named orbits
    e6_orbits: OnceCell<Option<OrbitNames>>,
}

impl AppState {
    pub fn new(workers: usize) -> Arc<Self> {
        Arc::new(Self {
            sessions: Mutex::new(HashMap::new()),
            next_id: AtomicU64::new(1),
            workers: workers.max(1),
            e6_orbits: OnceCell::new(),
        })
    }

    async fn orbit_names(&self, seed: &str) -> Option<OrbitNames> {
        if seed != "e6" {
            return None;
        }
        let workers = self.workers;
        self.e6_orbits
            .get_or_init(|| async move {
                let computed = tokio::task::spawn_blocking(move || e6_orbit_names(workers)).await;
                match computed {
                    Ok(Ok(m)) => Some(Arc::new(m)),
                    Ok(Err(e)) => {
                        log::warn!("orbit names unavailable: {e}");
                        None
                    }
                    Err(e) => {
                        log::warn!("orbit computation panicked: {e}");
                        None
                    }
                }
            })
            .await
            .clone()
    }
}

fn e6_orbit_names(workers: usize) -> Result<HashMap<String, String>, context::Failure> {
    let class = Class { name: "e6".into(), builtin: Some("e6"), seed: builtin_seed("e6")? };
    let g = context::explore_class(&class, Budget::default(), workers)?;
    let labels = context::labels(&class, &g)?;
    let gens = context::symmetries(&class, None)?.expect("built-in symmetry");
    let p = context::orbits(&class, &g, &gens, labels.as_deref())?;
    Ok(g.keys().enumerate().map(|(k, key)| (key.hex(), p.name_of(k).to_string())).collect())
}

struct Session {
    seed_name: String,
    current: ZSeed,
    /// seeds before each mutation of `path`
    history: Vec<ZSeed>,
    /// 1-based slots
    path: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SessionView {
    pub id: String,
    pub seed_name: String,
    pub seed: RenderedSeed,
    pub path: Vec<usize>,
}

#[derive(Deserialize)]
struct NewSession {
    seed: String,
}

#[derive(Deserialize)]
struct MutateRequest {
    slot: usize,
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

fn bad_request(msg: impl Into<String>) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.into())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/seeds", get(list_seeds))
        .route("/session", post(new_session))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/path", get(path))
        .with_state(state)
}

pub async fn serve(port: u16, workers: usize) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    log::info!("listening on {}", listener.local_addr()?);
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(workers))).await
}

async fn list_seeds() -> Json<serde_json::Value> {
    Json(json!({ "seeds": BUILTIN_NAMES }))
}

async fn view(state: &AppState, id: &str, s: &Session) -> SessionView {
    let orbit = match state.orbit_names(&s.seed_name).await {
        Some(names) => names.get(&s.current.canonical_key().hex()).cloned(),
        None => None,
    };
    SessionView { id: id.to_string(), seed_name: s.seed_name.clone(), seed: render(&s.current, orbit), path: s.path.clone() }
}

fn session(state: &AppState, id: &str) -> Result<Arc<tokio::sync::Mutex<Session>>, ApiError> {
    state
        .sessions
        .lock()
        .expect("session table")
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no session {id}")))
}

async fn new_session(State(state): State<Arc<AppState>>, Json(req): Json<NewSession>) -> Result<Json<SessionView>, ApiError> {
    if !BUILTIN_NAMES.contains(&req.seed.as_str()) {
        return Err(bad_request(format!("unknown seed {:?}", req.seed)));
    }
    let seed = builtin_seed(&req.seed).map_err(|e| bad_request(e.to_string()))?;
    let id = state.next_id.fetch_add(1, Ordering::Relaxed).to_string();
    let s = Session { seed_name: req.seed, current: seed, history: Vec::new(), path: Vec::new() };
    let v = view(&state, &id, &s).await;
    state.sessions.lock().expect("session table").insert(id, Arc::new(tokio::sync::Mutex::new(s)));
    Ok(Json(v))
}

async fn mutate(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Json(req): Json<MutateRequest>,
) -> Result<Json<SessionView>, ApiError> {
    let s = session(&state, &id)?;
    let mut s = s.lock().await;
    let rank = s.current.rank();
    if !(1..=rank).contains(&req.slot) {
        return Err(bad_request(format!("slot {} out of range 1..={rank}", req.slot)));
    }
    let next = s.current.mutate(req.slot - 1).map_err(|e| bad_request(e.to_string()))?;
    let prev = std::mem::replace(&mut s.current, next);
    s.history.push(prev);
    s.path.push(req.slot);
    Ok(Json(view(&state, &id, &s).await))
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let s = session(&state, &id)?;
    let mut s = s.lock().await;
    let prev = s.history.pop().ok_or_else(|| bad_request("nothing to undo"))?;
    s.current = prev;
    s.path.pop();
    Ok(Json(view(&state, &id, &s).await))
}

async fn path(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<serde_json::Value>, ApiError> {
    let s = session(&state, &id)?;
    let s = s.lock().await;
    Ok(Json(json!({ "id": id, "path": s.path, "depth": s.history.len() })))
}

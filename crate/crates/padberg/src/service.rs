//! Local JSON-over-HTTP API for the composer UI.
//!
//! | method | path                          | body / result                           |
//! |--------|-------------------------------|-----------------------------------------|
//! | GET    | `/api/health`                 | `{"status":"ok"}`                       |
//! | GET    | `/api/instruments`            | `{"instruments":["sine", ...]}`         |
//! | POST   | `/api/sessions`               | `{text, config?}` -> session summary    |
//! | GET    | `/api/sessions/{id}`          | full session state                      |
//! | PUT    | `/api/sessions/{id}/config`   | partial config -> score summary         |
//! | POST   | `/api/sessions/{id}/render`   | `audio/wav`                             |
//! | GET    | `/api/sessions/{id}/export.csv` | `text/csv`, `?monophonic=false` for all voices |
//!
//! Errors are `{"code": ..., "message": ...}` with status 400 for invalid
//! input, 404 for unknown sessions and 409 for stale revisions.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, RawQuery, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use padberg_core::{Block, NoteEvent, Score, TextMetadata, ToneRow};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::services::ServeDir;

use crate::exchange::score_to_csv;
use crate::render::{render_score, Instrument, RenderConfig, RenderError, SampleLibrary};
use crate::session::{ConfigUpdate, Session, SessionConfig, SessionHandle, SessionStore};
use crate::wav::wav_bytes;

#[derive(Debug, Clone, Default)]
pub struct ServiceOptions {
    /// Static UI files; sample clips live in its `audio/` subdirectory.
    pub assets_dir: Option<PathBuf>,
    pub render_defaults: RenderConfig,
}

struct Inner {
    store: SessionStore,
    samples: SampleLibrary,
    render_defaults: RenderConfig,
}

#[derive(Clone)]
pub struct AppState(Arc<Inner>);

impl AppState {
    pub fn new(options: &ServiceOptions) -> Self {
        let samples = match &options.assets_dir {
            Some(dir) => SampleLibrary::new(dir.join("audio")),
            None => SampleLibrary::default(),
        };
        Self(Arc::new(Inner {
            store: SessionStore::default(),
            samples,
            render_defaults: options.render_defaults.clone(),
        }))
    }
}

pub fn router(options: ServiceOptions) -> Router {
    let state = AppState::new(&options);
    let api = Router::new()
        .route("/api/health", get(health))
        .route("/api/instruments", get(instruments))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/config", put(update_config))
        .route("/api/sessions/{id}/render", post(render_session))
        .route("/api/sessions/{id}/export.csv", get(export_session_csv))
        .route("/api/{*rest}", axum::routing::any(not_found))
        .with_state(state);
    match options.assets_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(not_found),
    }
}

pub async fn serve(addr: SocketAddr, options: ServiceOptions) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(options)).await
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self { status, code, message: message.into() }
    }

    fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, code, message)
    }

    fn unknown_session(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session {id:?}"))
    }
}

impl From<padberg_core::Error> for ApiError {
    fn from(e: padberg_core::Error) -> Self {
        let code = match e {
            padberg_core::Error::EmptyInput => "empty_input",
            padberg_core::Error::InvalidVoices(_) => "invalid_voices",
            padberg_core::Error::InvalidRepeats => "invalid_repeats",
            _ => "invalid_input",
        };
        Self::bad_request(code, e.to_string())
    }
}

impl From<RenderError> for ApiError {
    fn from(e: RenderError) -> Self {
        let code = match e {
            RenderError::EmptyScore => "empty_score",
            RenderError::MissingSample(_) => "missing_sample",
            RenderError::InvalidConfig(_) => "invalid_config",
            RenderError::Wav(_) => return Self::new(StatusCode::INTERNAL_SERVER_ERROR, "render_failed", e.to_string()),
        };
        Self::bad_request(code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn parse_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request("invalid_json", e.to_string()))
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct RowNoteView {
    pub letter: char,
    pub pitch_index: u8,
    pub octave: i32,
    pub frequency_hz: f64,
    pub duration_ticks: u32,
    pub start_tick: u64,
    pub block: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct RowView {
    pub length: usize,
    pub vowels: usize,
    pub consonants: usize,
    pub blocks: usize,
    pub total_ticks: u64,
    pub measure_ticks: u64,
    pub notes: Vec<RowNoteView>,
}

impl From<&ToneRow> for RowView {
    fn from(row: &ToneRow) -> Self {
        let mut tick = 0;
        let notes = row
            .notes()
            .iter()
            .map(|n| {
                let view = RowNoteView {
                    letter: n.source.letter,
                    pitch_index: n.pitch.value(),
                    octave: n.octave,
                    frequency_hz: n.frequency_hz(),
                    duration_ticks: n.duration_ticks,
                    start_tick: tick,
                    block: n.source.block,
                };
                tick += u64::from(n.duration_ticks);
                view
            })
            .collect();
        Self {
            length: row.len(),
            vowels: row.vowels(),
            consonants: row.consonants(),
            blocks: row.block_count(),
            total_ticks: row.total_ticks(),
            measure_ticks: row.measure_ticks(),
            notes,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ScoreSummary {
    pub voices: u8,
    pub mode: padberg_core::Mode,
    pub repeats: u32,
    pub measure_ticks: u64,
    pub end_tick: u64,
    pub event_count: usize,
    pub duration_seconds: f64,
}

impl ScoreSummary {
    fn new(score: &Score, tick_seconds: f64) -> Self {
        Self {
            voices: score.voices,
            mode: score.mode,
            repeats: score.repeats,
            measure_ticks: score.measure_ticks,
            end_tick: score.end_tick(),
            event_count: score.events.len(),
            duration_seconds: score.end_tick() as f64 * tick_seconds,
        }
    }
}

#[derive(Debug, Serialize)]
struct SessionSummary<'a> {
    id: &'a str,
    revision: u64,
    text: &'a str,
    log: &'a [String],
    row: RowView,
    score: ScoreSummary,
}

#[derive(Debug, Serialize)]
struct SessionState<'a> {
    id: &'a str,
    created_at: u64,
    revision: u64,
    text: &'a str,
    normalized: String,
    config: &'a SessionConfig,
    log: &'a [String],
    blocks: &'a [Block],
    metadata: &'a TextMetadata,
    row: RowView,
    score: ScoreSummary,
    events: &'a [NoteEvent],
}

fn summary(s: &Session) -> SessionSummary<'_> {
    let c = &s.composition;
    SessionSummary {
        id: &s.id,
        revision: s.revision,
        text: c.source(),
        log: &c.log.lines,
        row: (&c.row).into(),
        score: ScoreSummary::new(&c.score, s.config.tick_seconds),
    }
}

fn state_view(s: &Session) -> SessionState<'_> {
    let c = &s.composition;
    SessionState {
        id: &s.id,
        created_at: s.created_at,
        revision: s.revision,
        text: c.source(),
        normalized: c.text.to_text(),
        config: &s.config,
        log: &c.log.lines,
        blocks: &c.blocks.blocks,
        metadata: &c.metadata,
        row: (&c.row).into(),
        score: ScoreSummary::new(&c.score, s.config.tick_seconds),
        events: &c.score.events,
    }
}

impl AppState {
    fn session(&self, id: &str) -> ApiResult<SessionHandle> {
        self.0.store.get(id).ok_or_else(|| ApiError::unknown_session(id))
    }

    fn check_config(&self, config: &SessionConfig) -> ApiResult<()> {
        config.render_config(&self.0.render_defaults).validate()?;
        if let Instrument::Sample(name) = &config.instrument {
            if !self.0.samples.contains(name) {
                return Err(RenderError::MissingSample(name.clone()).into());
            }
        }
        Ok(())
    }
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn not_found() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint")
}

async fn instruments(State(state): State<AppState>) -> Json<serde_json::Value> {
    let mut names = vec!["sine".to_string()];
    names.extend(state.0.samples.names());
    Json(json!({ "instruments": names }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    text: String,
    #[serde(default)]
    config: ConfigUpdate,
}

async fn create_session(State(state): State<AppState>, body: Bytes) -> ApiResult<Response> {
    let req: CreateRequest = parse_body(&body)?;
    let config = req.config.apply_to(&SessionConfig::default());
    state.check_config(&config)?;
    let handle = state.0.store.create(&req.text, config)?;
    let session = handle.lock().unwrap();
    Ok((StatusCode::CREATED, Json(summary(&session))).into_response())
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Response> {
    let handle = state.session(&id)?;
    let session = handle.lock().unwrap();
    Ok(Json(state_view(&session)).into_response())
}

async fn update_config(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> ApiResult<Response> {
    let handle = state.session(&id)?;
    let update: ConfigUpdate = parse_body(&body)?;
    let mut session = handle.lock().unwrap();
    if let Some(expected) = update.revision {
        if expected != session.revision {
            return Err(ApiError::new(
                StatusCode::CONFLICT,
                "stale_revision",
                format!("session is at revision {}, request was based on {expected}", session.revision),
            ));
        }
    }
    let config = update.apply_to(&session.config);
    state.check_config(&config)?;
    session.reconfigure(config)?;
    Ok(Json(json!({
        "id": session.id,
        "revision": session.revision,
        "config": session.config,
        "score": ScoreSummary::new(&session.composition.score, session.config.tick_seconds),
    }))
    .into_response())
}

async fn render_session(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Response> {
    let handle = state.session(&id)?;
    let (score, cfg) = {
        let session = handle.lock().unwrap();
        (session.composition.score.clone(), session.config.render_config(&state.0.render_defaults))
    };
    let samples = state.0.samples.clone();
    let bytes = tokio::task::spawn_blocking(move || -> ApiResult<Vec<u8>> {
        let buf = render_score(&score, &cfg, &samples)?;
        wav_bytes(&buf).map_err(|e| RenderError::from(e).into())
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "render_failed", e.to_string()))??;
    Ok(([(header::CONTENT_TYPE, "audio/wav")], bytes).into_response())
}

async fn export_session_csv(
    State(state): State<AppState>,
    Path(id): Path<String>,
    RawQuery(query): RawQuery,
) -> ApiResult<Response> {
    let mut monophonic = true;
    for pair in query.as_deref().unwrap_or("").split('&').filter(|p| !p.is_empty()) {
        match pair.split_once('=') {
            Some(("monophonic", v)) => {
                monophonic = v.parse().map_err(|_| {
                    ApiError::bad_request("invalid_query", format!("monophonic={v:?} is not a boolean"))
                })?;
            }
            _ => return Err(ApiError::bad_request("invalid_query", format!("unknown parameter {pair:?}"))),
        }
    }
    let handle = state.session(&id)?;
    let csv = score_to_csv(&handle.lock().unwrap().composition.score, monophonic);
    Ok(([(header::CONTENT_TYPE, "text/csv; charset=utf-8")], csv).into_response())
}

//! HTTP/JSON API.
//!
//! | method | path                              | auth     |
//! |--------|-----------------------------------|----------|
//! | POST   | `/api/register`                   | none     |
//! | POST   | `/api/contributions`              | bearer   |
//! | GET    | `/api/validation/queue?limit=N`   | bearer   |
//! | POST   | `/api/contributions/{id}/votes`   | bearer   |
//! | GET    | `/api/metrics`                    | none     |
//! | GET    | `/api/leaderboard?limit=N`        | none     |
//! | POST   | `/api/pretranslate`               | none     |
//! | GET    | `/api/seed/random?lang=X`         | optional |
//!
//! Errors are `{"error": code, "message": text}`.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use awal_core::contribution::{Status, Verdict, VoteError};
use awal_core::export::iso8601;
use awal_core::leaderboard::LeaderboardEntry;
use awal_core::pretranslate::{pretranslate, MtBackend, MtError, MtSuggestion, PostEditReport};
use awal_core::seed::{SeedError, SeedSentence};
use awal_core::stats::HeadlineMetrics;
use awal_core::submission::{Submission, SubmissionError};
use awal_core::{ContributionId, LanguageTag, Rules, ScriptClass, SeedId, UserId, GUIDELINES_REF, GUIDELINES_TEXT};
use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{FromRequestParts, Path, Query, State};
use axum::http::request::Parts;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::Utc;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::store::{Store, ValidationQueueItem, VoteOutcome};

pub const DEFAULT_LIMIT: usize = 10;
pub const MAX_LIMIT: usize = 100;

/// Wire form of an [`Error`].
#[derive(Debug)]
pub struct ApiError(pub Error);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub error: String,
    pub message: String,
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match &self.0 {
            Error::Unauthorized => StatusCode::UNAUTHORIZED,
            Error::NotFound(_) | Error::Seed(SeedError::EmptyBank(_)) => StatusCode::NOT_FOUND,
            Error::NameTaken(_) | Error::DuplicateRecord(_) => StatusCode::CONFLICT,
            Error::Vote(VoteError::DuplicateVote | VoteError::AlreadyDecided(_)) => StatusCode::CONFLICT,
            Error::Mt(MtError::BackendUnavailable(_)) => StatusCode::SERVICE_UNAVAILABLE,
            Error::Io(_) | Error::Corrupt { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            Error::Submission(SubmissionError::Pair(_) | SubmissionError::MissingSuggestion | SubmissionError::UneditedPretranslation)
            | Error::Vote(VoteError::SelfVote)
            | Error::InvalidName(_)
            | Error::Seed(_)
            | Error::Mt(_)
            | Error::Export(_)
            | Error::BadRequest(_) => StatusCode::BAD_REQUEST,
        }
    }
}

impl<E: Into<Error>> From<E> for ApiError {
    fn from(e: E) -> Self {
        ApiError(e.into())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = self.status();
        if status.is_server_error() {
            tracing::error!(error = %self.0, "request failed");
        }
        let body = ErrorBody { error: self.0.code().to_string(), message: self.0.to_string() };
        (status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> ApiResult<T> {
    payload.map(|Json(v)| v).map_err(|e| ApiError(Error::BadRequest(e.body_text())))
}

fn query<T>(q: Result<Query<T>, QueryRejection>) -> ApiResult<T> {
    q.map(|Query(v)| v).map_err(|e| ApiError(Error::BadRequest(e.body_text())))
}

struct Shared {
    store: Arc<Store>,
    backend: Arc<dyn MtBackend>,
    rules: Rules,
    served: Mutex<HashMap<UserId, HashSet<SeedId>>>,
}

#[derive(Clone)]
pub struct AppState {
    shared: Arc<Shared>,
}

impl AppState {
    pub fn new(store: Arc<Store>, backend: Arc<dyn MtBackend>, rules: Rules) -> AppState {
        AppState { shared: Arc::new(Shared { store, backend, rules, served: Mutex::new(HashMap::new()) }) }
    }

    pub fn store(&self) -> &Arc<Store> {
        &self.shared.store
    }

    pub fn rules(&self) -> &Rules {
        &self.shared.rules
    }
}

fn bearer(parts: &Parts) -> Option<Result<&str, ()>> {
    let value = parts.headers.get(header::AUTHORIZATION)?;
    Some(value.to_str().ok().and_then(|v| v.strip_prefix("Bearer ")).map(str::trim).filter(|t| !t.is_empty()).ok_or(()))
}

/// The authenticated caller.
pub struct Auth(pub UserId);

impl FromRequestParts<AppState> for Auth {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &AppState) -> Result<Self, Self::Rejection> {
        match bearer(parts) {
            Some(Ok(token)) => Ok(Auth(state.store().authenticate(token)?)),
            _ => Err(ApiError(Error::Unauthorized)),
        }
    }
}

/// Caller identity when a token is supplied; a supplied but invalid token
/// is still rejected.
pub struct MaybeAuth(pub Option<UserId>);

impl FromRequestParts<AppState> for MaybeAuth {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &AppState) -> Result<Self, Self::Rejection> {
        match bearer(parts) {
            None => Ok(MaybeAuth(None)),
            Some(Ok(token)) => Ok(MaybeAuth(Some(state.store().authenticate(token)?))),
            Some(Err(())) => Err(ApiError(Error::Unauthorized)),
        }
    }
}

async fn blocking<R: Send + 'static>(f: impl FnOnce() -> Result<R, Error> + Send + 'static) -> ApiResult<R> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError(Error::Io(std::io::Error::other(e))))?.map_err(ApiError)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RegisterRequest {
    pub display_name: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RegisterResponse {
    pub id: UserId,
    pub display_name: String,
    pub registered_at: String,
    pub token: String,
}

async fn register(
    State(state): State<AppState>,
    payload: Result<Json<RegisterRequest>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<RegisterResponse>)> {
    let req = body(payload)?;
    let store = state.store().clone();
    let (profile, token) = blocking(move || store.register(&req.display_name, Utc::now())).await?;
    Ok((
        StatusCode::CREATED,
        Json(RegisterResponse {
            id: profile.id,
            display_name: profile.display_name,
            registered_at: iso8601::format(&profile.registered_at),
            token,
        }),
    ))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SubmitResponse {
    pub id: ContributionId,
    pub points: u64,
    pub status: Status,
    pub tamazight_script: ScriptClass,
    pub script_mismatch: bool,
    pub postedit: Option<PostEditReport>,
    pub warnings: Vec<String>,
}

async fn submit(
    State(state): State<AppState>,
    Auth(user): Auth,
    payload: Result<Json<Submission>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<SubmitResponse>)> {
    let submission = body(payload)?;
    let store = state.store().clone();
    let rules = *state.rules();
    let out = blocking(move || store.submit(user, submission, &rules, Utc::now())).await?;
    let e = out.evaluation;
    let mut warnings = Vec::new();
    if e.unedited_warning {
        warnings.push("unedited_pretranslation".to_string());
    }
    if e.script_mismatch {
        warnings.push("script_mismatch".to_string());
    }
    Ok((
        StatusCode::CREATED,
        Json(SubmitResponse {
            id: out.id,
            points: e.points,
            status: Status::Pending,
            tamazight_script: e.tamazight_script,
            script_mismatch: e.script_mismatch,
            postedit: e.postedit,
            warnings,
        }),
    ))
}

#[derive(Debug, Default, Deserialize)]
pub struct LimitQuery {
    pub limit: Option<usize>,
}

impl LimitQuery {
    fn resolve(&self) -> usize {
        self.limit.unwrap_or(DEFAULT_LIMIT).min(MAX_LIMIT)
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QueueResponse {
    pub guidelines_ref: String,
    pub guidelines: String,
    pub items: Vec<ValidationQueueItem>,
}

async fn validation_queue(
    State(state): State<AppState>,
    Auth(user): Auth,
    q: Result<Query<LimitQuery>, QueryRejection>,
) -> ApiResult<Json<QueueResponse>> {
    let limit = query(q)?.resolve();
    let items = state.store().read(|s| s.validation_queue(user, limit));
    Ok(Json(QueueResponse { guidelines_ref: GUIDELINES_REF.into(), guidelines: GUIDELINES_TEXT.into(), items }))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VoteRequest {
    pub verdict: Verdict,
}

async fn cast_vote(
    State(state): State<AppState>,
    Auth(user): Auth,
    Path(raw_id): Path<String>,
    payload: Result<Json<VoteRequest>, JsonRejection>,
) -> ApiResult<Json<VoteOutcome>> {
    let id = raw_id.parse::<u64>().map(ContributionId).map_err(|_| ApiError(Error::NotFound(format!("contribution {raw_id:?}"))))?;
    let req = body(payload)?;
    let store = state.store().clone();
    let rules = *state.rules();
    let outcome = blocking(move || store.vote(user, id, req.verdict, &rules, Utc::now())).await?;
    Ok(Json(outcome))
}

async fn metrics(State(state): State<AppState>) -> Json<HeadlineMetrics> {
    Json(state.store().read(|s| s.metrics()))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LeaderboardResponse {
    pub entries: Vec<LeaderboardEntry>,
}

async fn leaderboard(State(state): State<AppState>, q: Result<Query<LimitQuery>, QueryRejection>) -> ApiResult<Json<LeaderboardResponse>> {
    let limit = query(q)?.resolve();
    Ok(Json(LeaderboardResponse { entries: state.store().read(|s| s.leaderboard(limit)) }))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PretranslateRequest {
    pub text: String,
    pub src_lang: LanguageTag,
    pub tgt_lang: LanguageTag,
}

async fn pretranslate_handler(
    State(state): State<AppState>,
    payload: Result<Json<PretranslateRequest>, JsonRejection>,
) -> ApiResult<Json<MtSuggestion>> {
    let req = body(payload)?;
    let backend = state.shared.backend.clone();
    let suggestion = pretranslate(&req.text, req.src_lang, req.tgt_lang, backend.as_ref(), state.rules()).await?;
    Ok(Json(suggestion))
}

#[derive(Debug, Deserialize)]
pub struct SeedQuery {
    pub lang: Option<String>,
    /// Fixes the random pick, for reproducible sessions.
    pub seed: Option<u64>,
}

async fn random_seed(
    State(state): State<AppState>,
    MaybeAuth(user): MaybeAuth,
    q: Result<Query<SeedQuery>, QueryRejection>,
) -> ApiResult<Json<SeedSentence>> {
    let q = query(q)?;
    let raw = q.lang.ok_or_else(|| ApiError(Error::BadRequest("missing lang parameter".into())))?;
    let language =
        raw.parse::<LanguageTag>().map_err(|_| ApiError(Error::Seed(SeedError::UnknownLanguage { line: 0, tag: raw.clone() })))?;

    let mut served = state.shared.served.lock().unwrap_or_else(|e| e.into_inner());
    let empty = HashSet::new();
    let history = user.and_then(|u| served.get(&u)).unwrap_or(&empty);
    let (sentence, reset) =
        state.store().read(|s| s.draw_seed(language, history, q.seed).map(|d| (d.sentence.clone(), d.history_reset)))?;
    if let Some(u) = user {
        let entry = served.entry(u).or_default();
        if reset {
            entry.retain(|id| state.store().read(|s| s.seeds().get(*id).is_some_and(|x| x.language != language)));
        }
        entry.insert(sentence.id);
    }
    Ok(Json(sentence))
}

async fn not_found() -> ApiError {
    ApiError(Error::NotFound("route".into()))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/register", post(register))
        .route("/api/contributions", post(submit))
        .route("/api/validation/queue", get(validation_queue))
        .route("/api/contributions/{id}/votes", post(cast_vote))
        .route("/api/metrics", get(metrics))
        .route("/api/leaderboard", get(leaderboard))
        .route("/api/pretranslate", post(pretranslate_handler))
        .route("/api/seed/random", get(random_seed))
        .fallback(not_found)
        .with_state(state)
}

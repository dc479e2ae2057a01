use axum::extract::rejection::{JsonRejection, PathRejection, QueryRejection};
use axum::extract::{Path, Query, Request, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cnlwiki::grammar::Prediction;
use cnlwiki::lexicon::{LexiconError, Word, WordCategory};
use cnlwiki::logic::SentencePattern;
use cnlwiki::wiki::{Article, SentenceId, SentenceView, StatsReport, WikiError, WikiState};
use serde::{Deserialize, Serialize};

use crate::{ApiError, AppState, REVISION_HEADER};

#[derive(Debug, Clone, Deserialize)]
pub struct NewWord {
    pub category: WordCategory,
    pub surface: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NewSentence {
    pub tokens: Vec<String>,
    #[serde(default)]
    pub restrict: Option<Vec<SentencePattern>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EditSentence {
    pub tokens: Vec<String>,
    pub expected_version: u64,
    #[serde(default)]
    pub restrict: Option<Vec<SentencePattern>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PredictRequest {
    pub prefix: Vec<String>,
    #[serde(default)]
    pub restrict: Option<Vec<SentencePattern>>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
struct DeleteQuery {
    expected_version: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportSummary {
    pub words: usize,
    pub sentences: usize,
    pub notes: usize,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/words", get(list_words).post(create_word))
        .route("/words/{surface}", axum::routing::delete(delete_word))
        .route("/articles/{surface}", get(article))
        .route("/sentences", post(create_sentence))
        .route(
            "/sentences/{id}",
            get(sentence).put(edit_sentence).delete(delete_sentence),
        )
        .route("/predict", post(predict))
        .route("/export", get(export))
        .route("/import", post(import))
        .route("/stats", get(stats))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .layer(middleware::from_fn_with_state(state.clone(), stamp_revision))
        .with_state(state)
}

async fn stamp_revision(State(state): State<AppState>, request: Request, next: Next) -> Response {
    let mut response = next.run(request).await;
    let revision = state.snapshot().revision;
    response
        .headers_mut()
        .insert(REVISION_HEADER, HeaderValue::from(revision));
    response
}

fn json_body<T>(body: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    body.map(|Json(b)| b).map_err(|e| ApiError::bad_request(e.body_text()))
}

fn sentence_id(path: Result<Path<u64>, PathRejection>) -> Result<SentenceId, ApiError> {
    path.map(|Path(id)| SentenceId(id))
        .map_err(|e| ApiError::bad_request(e.body_text()))
}

async fn list_words(State(state): State<AppState>) -> Json<Vec<Word>> {
    Json(state.snapshot().wiki.lexicon().words().cloned().collect())
}

async fn create_word(
    State(state): State<AppState>,
    body: Result<Json<NewWord>, JsonRejection>,
) -> Result<(StatusCode, Json<Word>), ApiError> {
    let request = json_body(body)?;
    let word = state.mutate(|wiki| wiki.add_word(request.category, &request.surface))?;
    Ok((StatusCode::CREATED, Json(word)))
}

async fn delete_word(State(state): State<AppState>, Path(surface): Path<String>) -> Result<StatusCode, ApiError> {
    state.mutate(|wiki| {
        let id = wiki
            .lexicon()
            .lookup(&surface)
            .map(|w| w.id)
            .ok_or_else(|| WikiError::UnknownWord(surface.clone()))?;
        wiki.remove_word(id)
    })?;
    Ok(StatusCode::NO_CONTENT)
}

async fn article(State(state): State<AppState>, Path(surface): Path<String>) -> Result<Json<Article>, ApiError> {
    Ok(Json(state.snapshot().wiki.render_article(&surface)?))
}

async fn sentence(
    State(state): State<AppState>,
    id: Result<Path<u64>, PathRejection>,
) -> Result<Json<SentenceView>, ApiError> {
    let id = sentence_id(id)?;
    Ok(Json(state.snapshot().wiki.sentence(id)?.into()))
}

async fn create_sentence(
    State(state): State<AppState>,
    body: Result<Json<NewSentence>, JsonRejection>,
) -> Result<(StatusCode, Json<SentenceView>), ApiError> {
    let request = json_body(body)?;
    let grammar = state.grammar(request.restrict.as_deref())?;
    let created = state.mutate(|wiki| {
        let tokens = wiki.resolve(&request.tokens)?;
        wiki.create_sentence(tokens, &grammar)
    })?;
    Ok((StatusCode::CREATED, Json((&created).into())))
}

async fn edit_sentence(
    State(state): State<AppState>,
    id: Result<Path<u64>, PathRejection>,
    body: Result<Json<EditSentence>, JsonRejection>,
) -> Result<Json<SentenceView>, ApiError> {
    let id = sentence_id(id)?;
    let request = json_body(body)?;
    let grammar = state.grammar(request.restrict.as_deref())?;
    let updated = state.mutate(|wiki| {
        let tokens = wiki.resolve(&request.tokens)?;
        wiki.edit_sentence(id, request.expected_version, tokens, &grammar)
    })?;
    Ok(Json((&updated).into()))
}

async fn delete_sentence(
    State(state): State<AppState>,
    id: Result<Path<u64>, PathRejection>,
    query: Result<Query<DeleteQuery>, QueryRejection>,
) -> Result<StatusCode, ApiError> {
    let id = sentence_id(id)?;
    let Query(query) = query.map_err(|e| ApiError::bad_request(e.body_text()))?;
    state.mutate(|wiki| wiki.delete_sentence(id, query.expected_version))?;
    Ok(StatusCode::NO_CONTENT)
}

async fn predict(
    State(state): State<AppState>,
    body: Result<Json<PredictRequest>, JsonRejection>,
) -> Result<Json<Prediction>, ApiError> {
    let request = json_body(body)?;
    let grammar = state.grammar(request.restrict.as_deref())?;
    let snapshot = state.snapshot();
    let prefix = snapshot.wiki.resolve(&request.prefix)?;
    Ok(Json(snapshot.wiki.predict(&prefix, &grammar)?))
}

async fn export(State(state): State<AppState>) -> impl IntoResponse {
    (
        [(header::CONTENT_TYPE, "text/plain; charset=utf-8")],
        state.snapshot().wiki.export(),
    )
}

async fn import(State(state): State<AppState>, body: String) -> Result<Json<ImportSummary>, ApiError> {
    let replacement = WikiState::import(&body)?;
    let summary = ImportSummary {
        words: replacement.lexicon().len(),
        sentences: replacement.sentences().count(),
        notes: replacement.notes().len(),
    };
    state.mutate(|wiki| {
        *wiki = replacement;
        Ok(())
    })?;
    Ok(Json(summary))
}

async fn stats(State(state): State<AppState>) -> Result<Json<StatsReport>, ApiError> {
    Ok(Json(state.snapshot().wiki.corpus_stats(None)?))
}

impl From<LexiconError> for ApiError {
    fn from(error: LexiconError) -> Self {
        WikiError::from(error).into()
    }
}

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use cnlwiki::lexicon::LexiconError;
use cnlwiki::wiki::WikiError;
use serde::Serialize;

/// Error body of every failed request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
            position: None,
        }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "BadRequest", message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "NotFound", message)
    }
}

impl From<WikiError> for ApiError {
    fn from(error: WikiError) -> Self {
        let status = match &error {
            WikiError::UnknownWord(_)
            | WikiError::UnknownSentence(_)
            | WikiError::Lexicon(LexiconError::UnknownWord(_)) => StatusCode::NOT_FOUND,
            WikiError::VersionConflict { .. }
            | WikiError::Lexicon(LexiconError::DuplicateSurface(_) | LexiconError::WordInUse(_)) => {
                StatusCode::CONFLICT
            }
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError {
            status,
            code: error.code(),
            message: error.to_string(),
            position: error.position(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

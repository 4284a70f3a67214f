//! Machine-translation suggestions and the post-edit gate.

use async_trait::async_trait;
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::levenshtein;
use crate::pair::{check_languages, PairViolation};
use crate::{LanguageTag, Rules};

/// How an unedited pretranslation is treated at submission time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PostEditMode {
    /// Refuse the submission.
    #[default]
    Enforce,
    /// Accept it and report a warning.
    Warn,
}

/// A backend translation, recorded verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MtSuggestion {
    pub src_lang: LanguageTag,
    pub tgt_lang: LanguageTag,
    pub input: String,
    pub output: String,
    pub backend_id: String,
    pub produced_at: DateTime<Utc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostEditReport {
    pub distance: usize,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct BackendError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MtError {
    #[error("nothing to translate")]
    EmptyInput,
    #[error(transparent)]
    Pair(#[from] PairViolation),
    #[error("translation backend unavailable: {0}")]
    BackendUnavailable(String),
}

/// A single request/response translation service.
#[async_trait]
pub trait MtBackend: Send + Sync {
    fn id(&self) -> &str;

    async fn translate(&self, text: &str, src_lang: LanguageTag, tgt_lang: LanguageTag) -> Result<String, BackendError>;
}

/// Deterministic offline backend: echoes the input behind a `[tgt] ` marker.
#[derive(Debug, Clone, Copy, Default)]
pub struct StubBackend;

impl StubBackend {
    pub const ID: &'static str = "stub";

    pub fn render(text: &str, tgt_lang: LanguageTag) -> String {
        format!("[{tgt_lang}] {text}")
    }
}

#[async_trait]
impl MtBackend for StubBackend {
    fn id(&self) -> &str {
        Self::ID
    }

    async fn translate(&self, text: &str, _src_lang: LanguageTag, tgt_lang: LanguageTag) -> Result<String, BackendError> {
        Ok(Self::render(text, tgt_lang))
    }
}

pub async fn pretranslate(
    input: &str,
    src_lang: LanguageTag,
    tgt_lang: LanguageTag,
    backend: &dyn MtBackend,
    rules: &Rules,
) -> Result<MtSuggestion, MtError> {
    if input.trim().is_empty() {
        return Err(MtError::EmptyInput);
    }
    check_languages(rules.require_tamazight, src_lang, tgt_lang)?;
    let output = backend.translate(input, src_lang, tgt_lang).await.map_err(|e| MtError::BackendUnavailable(e.0))?;
    Ok(MtSuggestion { src_lang, tgt_lang, input: input.to_string(), output, backend_id: backend.id().to_string(), produced_at: Utc::now() })
}

/// Distance between the suggestion and what the contributor submits; the
/// edit is accepted when at least one code point changed.
pub fn check_postedit(suggestion_output: &str, final_text: &str) -> PostEditReport {
    let distance = levenshtein(suggestion_output, final_text);
    PostEditReport { distance, accepted: distance >= 1 }
}

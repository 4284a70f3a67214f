//! HTTP client for a remote machine-translation backend.
//!
//! Request: `POST <url>` with `{"src": tag, "tgt": tag, "text": string}`.
//! Response: `{"text": string}`.

use std::time::Duration;

use async_trait::async_trait;
use awal_core::pretranslate::{BackendError, MtBackend};
use awal_core::LanguageTag;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct MtRequest {
    pub src: LanguageTag,
    pub tgt: LanguageTag,
    pub text: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MtResponse {
    pub text: String,
}

#[derive(Debug, Clone)]
pub struct RemoteBackend {
    client: reqwest::Client,
    url: String,
    id: String,
}

impl RemoteBackend {
    pub fn new(url: impl Into<String>, timeout: Duration) -> Result<RemoteBackend, BackendError> {
        let url = url.into();
        let client =
            reqwest::Client::builder().timeout(timeout).connect_timeout(timeout).build().map_err(|e| BackendError(e.to_string()))?;
        Ok(RemoteBackend { client, id: format!("remote:{url}"), url })
    }
}

#[async_trait]
impl MtBackend for RemoteBackend {
    fn id(&self) -> &str {
        &self.id
    }

    async fn translate(&self, text: &str, src_lang: LanguageTag, tgt_lang: LanguageTag) -> Result<String, BackendError> {
        let body = MtRequest { src: src_lang, tgt: tgt_lang, text: text.to_string() };
        let resp = self
            .client
            .post(&self.url)
            .json(&body)
            .send()
            .await
            .map_err(|e| BackendError(if e.is_timeout() { "timed out".into() } else { e.to_string() }))?;
        if !resp.status().is_success() {
            return Err(BackendError(format!("backend returned HTTP {}", resp.status())));
        }
        let parsed: MtResponse = resp.json().await.map_err(|e| BackendError(format!("bad backend response: {e}")))?;
        Ok(parsed.text)
    }
}

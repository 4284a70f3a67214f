#![allow(dead_code)]

use std::sync::Arc;

use awal_core::pretranslate::{MtBackend, StubBackend};
use awal_core::Rules;
use awal_platform::api::{router, AppState};
use awal_platform::Store;
use axum::body::{to_bytes, Body};
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use serde_json::Value;
use tower::ServiceExt;

pub fn app_with(store: Arc<Store>, backend: Arc<dyn MtBackend>, rules: Rules) -> Router {
    router(AppState::new(store, backend, rules))
}

pub fn app() -> (Router, Arc<Store>) {
    let store = Arc::new(Store::in_memory());
    (app_with(store.clone(), Arc::new(StubBackend), Rules::default()), store)
}

pub async fn call(app: &Router, method: Method, uri: &str, token: Option<&str>, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    if let Some(t) = token {
        req = req.header(header::AUTHORIZATION, format!("Bearer {t}"));
    }
    let req = match body {
        Some(v) => req.header(header::CONTENT_TYPE, "application/json").body(Body::from(v.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), 1 << 24).await.unwrap();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or(Value::String(String::from_utf8_lossy(&bytes).into_owned()))
    };
    (status, value)
}

pub async fn register(app: &Router, name: &str) -> (u64, String) {
    let (status, body) = call(app, Method::POST, "/api/register", None, Some(serde_json::json!({ "display_name": name }))).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    (body["id"].as_u64().unwrap(), body["token"].as_str().unwrap().to_string())
}

pub async fn submit(app: &Router, token: &str, body: Value) -> (StatusCode, Value) {
    call(app, Method::POST, "/api/contributions", Some(token), Some(body)).await
}

pub async fn vote(app: &Router, token: &str, id: u64, verdict: &str) -> (StatusCode, Value) {
    call(app, Method::POST, &format!("/api/contributions/{id}/votes"), Some(token), Some(serde_json::json!({ "verdict": verdict }))).await
}

/// Asserts `{"error": code, "message": ...}` with the given HTTP status.
pub fn assert_error(got: &(StatusCode, Value), status: StatusCode, code: &str) {
    assert_eq!(got.0, status, "body: {}", got.1);
    assert_eq!(got.1["error"], code, "body: {}", got.1);
    assert!(got.1["message"].as_str().is_some_and(|m| !m.is_empty()), "body: {}", got.1);
}

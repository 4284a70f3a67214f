mod common;

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use awal_core::pretranslate::{PostEditMode, StubBackend};
use awal_core::Rules;
use awal_platform::mt::{MtRequest, MtResponse, RemoteBackend};
use awal_platform::Store;
use axum::http::{Method, StatusCode};
use axum::routing::post;
use axum::{Json, Router};
use common::*;
use serde_json::{json, Value};

fn manual(src: &str, tgt: &str) -> Value {
    json!({ "src_lang": "ca", "tgt_lang": "zgh", "src_text": src, "tgt_text": tgt })
}

#[tokio::test]
async fn register_shapes() {
    let (app, _) = app();
    let (status, body) = call(&app, Method::POST, "/api/register", None, Some(json!({ "display_name": "amina" }))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["display_name"], "amina");
    assert_eq!(body["id"], 1);
    assert_eq!(body["token"].as_str().unwrap().len(), 64);
    assert!(body["registered_at"].as_str().unwrap().ends_with('Z'));

    let again = call(&app, Method::POST, "/api/register", None, Some(json!({ "display_name": "amina" }))).await;
    assert_error(&again, StatusCode::CONFLICT, "name_taken");
    let empty = call(&app, Method::POST, "/api/register", None, Some(json!({ "display_name": "" }))).await;
    assert_error(&empty, StatusCode::BAD_REQUEST, "invalid_name");
    let malformed = call(&app, Method::POST, "/api/register", None, Some(json!({ "name": "x" }))).await;
    assert_error(&malformed, StatusCode::BAD_REQUEST, "bad_request");
}

#[tokio::test]
async fn submit_shapes_and_errors() {
    let (app, _) = app();
    let (_, token) = register(&app, "amina").await;

    let (status, body) = submit(&app, &token, manual("hola", "azul")).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    assert_eq!(body["id"], 1);
    assert_eq!(body["points"], 8);
    assert_eq!(body["status"], "pending");
    assert_eq!(body["tamazight_script"], "latin");

    let unedited = json!({
        "src_lang": "ca", "tgt_lang": "zgh", "src_text": "hola", "tgt_text": "[zgh] hola",
        "tgt_provenance": "pretranslated", "mt_suggestion": "[zgh] hola"
    });
    assert_error(&submit(&app, &token, unedited).await, StatusCode::BAD_REQUEST, "unedited_pretranslation");

    let missing = json!({ "src_lang": "ca", "tgt_lang": "zgh", "src_text": "hola", "tgt_text": "azul", "tgt_provenance": "pretranslated" });
    assert_error(&submit(&app, &token, missing).await, StatusCode::BAD_REQUEST, "missing_suggestion");

    let no_zgh = json!({ "src_lang": "ca", "tgt_lang": "es", "src_text": "hola", "tgt_text": "hola" });
    assert_error(&submit(&app, &token, no_zgh).await, StatusCode::BAD_REQUEST, "no_tamazight_side");

    let blank = json!({ "src_lang": "zgh", "tgt_lang": "en", "src_text": "ⴰⵣⵓⵍ", "tgt_text": "   " });
    assert_error(&submit(&app, &token, blank).await, StatusCode::BAD_REQUEST, "empty_text");

    let unknown_lang = json!({ "src_lang": "xx", "tgt_lang": "zgh", "src_text": "a", "tgt_text": "b" });
    assert_error(&submit(&app, &token, unknown_lang).await, StatusCode::BAD_REQUEST, "bad_request");

    assert_error(&submit(&app, "bogus", manual("hola", "azul")).await, StatusCode::UNAUTHORIZED, "unauthorized");
    let anon = call(&app, Method::POST, "/api/contributions", None, Some(manual("hola", "azul"))).await;
    assert_error(&anon, StatusCode::UNAUTHORIZED, "unauthorized");
}

#[tokio::test]
async fn submit_reports_seed_and_postedit_scoring() {
    let (app, _) = app();
    let (_, token) = register(&app, "amina").await;
    let seeded = json!({
        "src_lang": "ca", "tgt_lang": "zgh", "src_text": "Una frase qualsevol del banc.", "tgt_text": "tanemmirt",
        "src_provenance": "seed_bank", "dialect": "tachelhit"
    });
    assert_eq!(submit(&app, &token, seeded).await.1["points"], 9);

    let edited = json!({
        "src_lang": "fr", "tgt_lang": "zgh", "src_text": "merci", "tgt_text": "azul fellawen.",
        "tgt_provenance": "pretranslated", "mt_suggestion": "azul fellawen"
    });
    let (status, body) = submit(&app, &token, edited).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(body["points"], 6);
    assert_eq!(body["postedit"], json!({ "distance": 1, "accepted": true }));
}

#[tokio::test]
async fn declared_script_mismatch_is_flagged() {
    let (app, store) = app();
    let (_, token) = register(&app, "amina").await;
    let body = json!({ "src_lang": "ca", "tgt_lang": "zgh", "src_text": "hola", "tgt_text": "azul", "declared_script": "tifinagh" });
    let (_, resp) = submit(&app, &token, body).await;
    assert_eq!(resp["script_mismatch"], true);
    assert_eq!(resp["warnings"], json!(["script_mismatch"]));
    assert!(store.read(|s| s.contributions().next().unwrap().script_mismatch()));
}

#[tokio::test]
async fn warn_mode_accepts_unedited_pretranslation() {
    let store = Arc::new(Store::in_memory());
    let rules = Rules { postedit: PostEditMode::Warn, ..Rules::default() };
    let app = app_with(store, Arc::new(StubBackend), rules);
    let (_, token) = register(&app, "amina").await;
    let body = json!({
        "src_lang": "ca", "tgt_lang": "zgh", "src_text": "hola", "tgt_text": "[zgh] hola",
        "tgt_provenance": "pretranslated", "mt_suggestion": "[zgh] hola"
    });
    let (status, resp) = submit(&app, &token, body).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(resp["points"], 4);
    assert_eq!(resp["warnings"], json!(["unedited_pretranslation"]));
}

#[tokio::test]
async fn validation_queue_rules() {
    let (app, _) = app();
    let (_, alice) = register(&app, "alice").await;
    let (_, bob) = register(&app, "bob").await;
    submit(&app, &alice, manual("u", "1")).await;
    submit(&app, &bob, manual("u", "2")).await;
    submit(&app, &alice, manual("u", "3")).await;

    let (status, body) = call(&app, Method::GET, "/api/validation/queue?limit=10", Some(&bob), None).await;
    assert_eq!(status, StatusCode::OK);
    let ids: Vec<u64> = body["items"].as_array().unwrap().iter().map(|i| i["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, vec![1, 3]);
    assert!(body["guidelines"].as_str().unwrap().contains("meaning"));
    let item = &body["items"][0];
    for key in ["src_lang", "tgt_lang", "src_text", "tgt_text", "script", "dialect", "guidelines"] {
        assert!(item.get(key).is_some(), "missing {key}");
    }

    let (_, one) = call(&app, Method::GET, "/api/validation/queue?limit=1", Some(&bob), None).await;
    assert_eq!(one["items"].as_array().unwrap().len(), 1);
    assert_eq!(one["items"][0]["id"], 1);

    vote(&app, &bob, 1, "approve").await;
    vote(&app, &bob, 3, "reject").await;
    let (_, none) = call(&app, Method::GET, "/api/validation/queue", Some(&bob), None).await;
    assert_eq!(none["items"], json!([]));

    let bad_limit = call(&app, Method::GET, "/api/validation/queue?limit=abc", Some(&bob), None).await;
    assert_error(&bad_limit, StatusCode::BAD_REQUEST, "bad_request");
    let anon = call(&app, Method::GET, "/api/validation/queue", None, None).await;
    assert_error(&anon, StatusCode::UNAUTHORIZED, "unauthorized");
}

#[tokio::test]
async fn vote_flow_and_errors() {
    let (app, _) = app();
    let (_, author) = register(&app, "author").await;
    let (_, v1) = register(&app, "v1").await;
    let (_, v2) = register(&app, "v2").await;
    let (_, v3) = register(&app, "v3").await;
    submit(&app, &author, manual("hola", "azul")).await;

    assert_error(&vote(&app, &author, 1, "approve").await, StatusCode::BAD_REQUEST, "self_vote");
    let (status, first) = vote(&app, &v1, 1, "approve").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(first, json!({ "contribution_id": 1, "status": "pending", "approvals": 1, "rejections": 0, "decided": false }));
    assert_error(&vote(&app, &v1, 1, "approve").await, StatusCode::CONFLICT, "duplicate_vote");
    let (_, second) = vote(&app, &v2, 1, "approve").await;
    assert_eq!(second["status"], "validated");
    assert_eq!(second["decided"], true);
    assert_error(&vote(&app, &v3, 1, "reject").await, StatusCode::CONFLICT, "already_decided");
    assert_error(&vote(&app, &v3, 42, "approve").await, StatusCode::NOT_FOUND, "not_found");
    assert_error(&vote(&app, &v3, 0, "maybe").await, StatusCode::BAD_REQUEST, "bad_request");
    let bad_id = call(&app, Method::POST, "/api/contributions/abc/votes", Some(&v3), Some(json!({ "verdict": "approve" }))).await;
    assert_error(&bad_id, StatusCode::NOT_FOUND, "not_found");
    let anon = call(&app, Method::POST, "/api/contributions/1/votes", None, Some(json!({ "verdict": "approve" }))).await;
    assert_error(&anon, StatusCode::UNAUTHORIZED, "unauthorized");
}

#[tokio::test]
async fn two_rejections_close_an_item() {
    let (app, _) = app();
    let (_, author) = register(&app, "author").await;
    let (_, v1) = register(&app, "v1").await;
    let (_, v2) = register(&app, "v2").await;
    submit(&app, &author, manual("hola", "azul")).await;
    vote(&app, &v1, 1, "reject").await;
    assert_eq!(vote(&app, &v2, 1, "reject").await.1["status"], "rejected");
}

#[tokio::test]
async fn metrics_and_leaderboard_are_public() {
    let (app, _) = app();
    let (status, empty) = call(&app, Method::GET, "/api/metrics", None, None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        empty,
        json!({
            "registered_users": 0, "contributing_users": 0, "contributor_pct": 0,
            "total_contributions": 0, "validated_contributions": 0, "validated_pct": 0,
            "avg_contributions_per_contributor": 0
        })
    );
    assert_eq!(call(&app, Method::GET, "/api/leaderboard", None, None).await.1, json!({ "entries": [] }));

    let (_, a) = register(&app, "a").await;
    let (_, b) = register(&app, "b").await;
    let (_, _c) = register(&app, "c").await;
    submit(&app, &a, manual("hola", "azul")).await;
    submit(&app, &b, manual("hola amics", "azul fellawen")).await;

    let (_, board) = call(&app, Method::GET, "/api/leaderboard?limit=10", None, None).await;
    assert_eq!(
        board["entries"],
        json!([
            { "rank": 1, "user_id": 2, "display_name": "b", "points": 23 },
            { "rank": 2, "user_id": 1, "display_name": "a", "points": 8 }
        ])
    );
    let (_, top) = call(&app, Method::GET, "/api/leaderboard?limit=1", None, None).await;
    assert_eq!(top["entries"].as_array().unwrap().len(), 1);

    let (_, m) = call(&app, Method::GET, "/api/metrics", None, None).await;
    assert_eq!(m["registered_users"], 3);
    assert_eq!(m["contributing_users"], 2);
    assert_eq!(m["contributor_pct"], 67);
    assert_eq!(m["avg_contributions_per_contributor"], 1);
}

#[tokio::test]
async fn pretranslate_endpoint() {
    let (app, _) = app();
    let (status, body) =
        call(&app, Method::POST, "/api/pretranslate", None, Some(json!({ "text": "hola", "src_lang": "ca", "tgt_lang": "zgh" }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["output"], "[zgh] hola");
    assert_eq!(body["input"], "hola");
    assert_eq!(body["backend_id"], "stub");
    assert!(body["produced_at"].is_string());

    let empty = call(&app, Method::POST, "/api/pretranslate", None, Some(json!({ "text": "", "src_lang": "ca", "tgt_lang": "zgh" }))).await;
    assert_error(&empty, StatusCode::BAD_REQUEST, "empty_input");
    let pair = call(&app, Method::POST, "/api/pretranslate", None, Some(json!({ "text": "x", "src_lang": "ca", "tgt_lang": "es" }))).await;
    assert_error(&pair, StatusCode::BAD_REQUEST, "no_tamazight_side");
}

#[tokio::test]
async fn random_seed_endpoint() {
    let (app, store) = app();
    let empty = call(&app, Method::GET, "/api/seed/random?lang=fr", None, None).await;
    assert_error(&empty, StatusCode::NOT_FOUND, "empty_bank");
    assert_error(&call(&app, Method::GET, "/api/seed/random?lang=xx", None, None).await, StatusCode::BAD_REQUEST, "unknown_language");
    assert_error(&call(&app, Method::GET, "/api/seed/random", None, None).await, StatusCode::BAD_REQUEST, "bad_request");

    store.ingest_seeds("ca\tBon dia.\nca\tBona nit.\nca\tFins demà.\nes\tHola.\n", "Tatoeba", "CC-BY-2.0-FR").unwrap();
    let (status, body) = call(&app, Method::GET, "/api/seed/random?lang=ca&seed=3", None, None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["language"], "ca");
    assert_eq!(body["license"], "CC-BY-2.0-FR");
    assert_eq!(body["source_name"], "Tatoeba");

    // with a token, three draws cover the three Catalan sentences
    let (_, token) = register(&app, "reader").await;
    let mut seen = HashSet::new();
    for _ in 0..3 {
        let (_, s) = call(&app, Method::GET, "/api/seed/random?lang=ca", Some(&token), None).await;
        assert!(seen.insert(s["id"].as_u64().unwrap()), "repeat before exhaustion");
    }
    assert_eq!(seen.len(), 3);
    let (status, _) = call(&app, Method::GET, "/api/seed/random?lang=ca", Some(&token), None).await;
    assert_eq!(status, StatusCode::OK);

    let bad = call(&app, Method::GET, "/api/seed/random?lang=ca", Some("nope"), None).await;
    assert_error(&bad, StatusCode::UNAUTHORIZED, "unauthorized");
}

#[tokio::test]
async fn tifinagh_round_trips_through_api_and_export() {
    let (app, store) = app();
    let (_, token) = register(&app, "ⵜⴰⵎⴰⵣⵉⵖⵜ").await;
    let text = "ⴰⵣⵓⵍ ⴼⵍⵍⴰⵡⵏ ⴰⴽⴽⵯ";
    let (_, body) =
        submit(&app, &token, json!({ "src_lang": "en", "tgt_lang": "zgh", "src_text": "hello everyone", "tgt_text": text })).await;
    assert_eq!(body["tamazight_script"], "tifinagh");
    let records = store.read(|s| s.records());
    let out = awal_core::export::export_to_string(&records, &Default::default(), awal_core::export::ExportFormat::Jsonl);
    assert!(out.contains(text));
    let (_, board) = call(&app, Method::GET, "/api/leaderboard", None, None).await;
    assert_eq!(board["entries"][0]["display_name"], "ⵜⴰⵎⴰⵣⵉⵖⵜ");
}

#[tokio::test]
async fn unknown_route_is_json_404() {
    let (app, _) = app();
    assert_error(&call(&app, Method::GET, "/api/nope", None, None).await, StatusCode::NOT_FOUND, "not_found");
}

async fn spawn(router: Router) -> String {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, router).await.unwrap() });
    format!("http://{addr}/translate")
}

#[tokio::test]
async fn remote_backend_protocol() {
    let mock = Router::new().route(
        "/translate",
        post(|Json(req): Json<MtRequest>| async move {
            Json(MtResponse { text: format!("{}>{}:{}", req.src, req.tgt, req.text.to_uppercase()) })
        }),
    );
    let url = spawn(mock).await;
    let backend = Arc::new(RemoteBackend::new(url.clone(), Duration::from_secs(2)).unwrap());
    let app = app_with(Arc::new(Store::in_memory()), backend, Rules::default());
    let (status, body) =
        call(&app, Method::POST, "/api/pretranslate", None, Some(json!({ "text": "azul", "src_lang": "zgh", "tgt_lang": "en" }))).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    assert_eq!(body["output"], "zgh>en:AZUL");
    assert_eq!(body["backend_id"], format!("remote:{url}"));
}

#[tokio::test]
async fn remote_backend_errors_map_to_unavailable() {
    let failing = Router::new().route("/translate", post(|| async { (StatusCode::INTERNAL_SERVER_ERROR, "boom") }));
    let slow = Router::new().route(
        "/translate",
        post(|| async {
            tokio::time::sleep(Duration::from_secs(5)).await;
            Json(MtResponse { text: "late".into() })
        }),
    );
    // a port nobody listens on
    let closed = {
        let l = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
        format!("http://{}/translate", l.local_addr().unwrap())
    };
    let req = json!({ "text": "hola", "src_lang": "ca", "tgt_lang": "zgh" });

    for (url, label) in [(spawn(failing).await, "http 500"), (spawn(slow).await, "timeout"), (closed, "refused")] {
        let backend = Arc::new(RemoteBackend::new(url, Duration::from_millis(300)).unwrap());
        let app = app_with(Arc::new(Store::in_memory()), backend, Rules::default());
        let started = Instant::now();
        let got = call(&app, Method::POST, "/api/pretranslate", None, Some(req.clone())).await;
        assert_error(&got, StatusCode::SERVICE_UNAVAILABLE, "backend_unavailable");
        assert!(started.elapsed() < Duration::from_secs(3), "{label} took {:?}", started.elapsed());
    }
}

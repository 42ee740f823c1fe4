use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use lpa_cli::serve::{router, AppState, SessionView};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req.header("content-type", "application/json").body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

async fn start(app: &Router, seed: &str) -> SessionView {
    let (status, v) = call(app, "POST", "/session", Some(json!({ "seed": seed }))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    serde_json::from_value(v).unwrap()
}

async fn mutate(app: &Router, id: &str, slot: usize) -> (StatusCode, Value) {
    call(app, "POST", &format!("/session/{id}/mutate"), Some(json!({ "slot": slot }))).await
}

#[tokio::test]
async fn lists_builtin_seeds() {
    let app = router(AppState::new(1));
    let (status, v) = call(&app, "GET", "/seeds", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["seeds"], json!(["a2-toy", "e4", "e5", "e6"]));
}

#[tokio::test]
async fn toy_session() {
    let app = router(AppState::new(1));
    let s = start(&app, "a2-toy").await;
    assert_eq!(s.seed.cluster, ["x1", "x2"]);
    assert_eq!(s.seed.exchange, ["1 + x2", "1 + x1"]);
    assert_eq!(s.seed.orbit, None);

    mutate(&app, &s.id, 1).await;
    let (status, v) = mutate(&app, &s.id, 2).await;
    assert_eq!(status, StatusCode::OK);
    let after: SessionView = serde_json::from_value(v).unwrap();
    assert_eq!(after.path, [1, 2]);
    assert!(after.seed.cluster.contains(&"(1 + x1 + x2)/(x1*x2)".to_string()));

    let (status, v) = call(&app, "GET", &format!("/session/{}/path", s.id), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["path"], json!([1, 2]));

    for _ in 0..2 {
        let (status, _) = call(&app, "POST", &format!("/session/{}/undo", s.id), None).await;
        assert_eq!(status, StatusCode::OK);
    }
    let (status, v) = call(&app, "POST", &format!("/session/{}/undo", s.id), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["error"].is_string());
    let (_, v) = call(&app, "GET", &format!("/session/{}/path", s.id), None).await;
    assert_eq!(v["path"], json!([]));
}

#[tokio::test]
async fn mutating_twice_restores_the_seed() {
    let app = router(AppState::new(1));
    for seed in ["a2-toy", "e4", "e5"] {
        let s = start(&app, seed).await;
        for slot in 1..=s.seed.cluster.len() {
            let (_, once) = mutate(&app, &s.id, slot).await;
            let once: SessionView = serde_json::from_value(once).unwrap();
            assert_ne!(once.seed.key, s.seed.key);
            let (_, twice) = mutate(&app, &s.id, slot).await;
            let twice: SessionView = serde_json::from_value(twice).unwrap();
            assert_eq!(twice.seed, s.seed, "{seed} slot {slot}");
        }
    }
}

#[tokio::test]
async fn errors() {
    let app = router(AppState::new(1));
    let s = start(&app, "a2-toy").await;
    for slot in [0, 3, 9] {
        let (status, v) = mutate(&app, &s.id, slot).await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
        assert!(v["error"].as_str().unwrap().contains("out of range"));
    }
    let (status, _) = mutate(&app, "no-such-session", 1).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "GET", "/session/no-such-session/path", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "POST", "/session", Some(json!({ "seed": "e7" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn e6_session_reports_orbits() {
    let app = router(AppState::new(1));
    let s = start(&app, "e6").await;
    assert_eq!(s.seed.cluster.len(), 5);
    assert_eq!(s.seed.orbit.as_deref(), Some("A"));
    // first row of the orbit table: the five mutations lead to D, B, C, A, A
    // from its representative; the initial seed is another member of A
    let mut seen = Vec::new();
    for slot in 1..=5 {
        let (status, v) = mutate(&app, &s.id, slot).await;
        assert_eq!(status, StatusCode::OK);
        let view: SessionView = serde_json::from_value(v).unwrap();
        seen.push(view.seed.orbit.clone().unwrap());
        let (_, v) = mutate(&app, &s.id, slot).await;
        let back: SessionView = serde_json::from_value(v).unwrap();
        assert_eq!(back.seed, s.seed);
    }
    let mut sorted = seen.clone();
    sorted.sort();
    assert_eq!(sorted, ["A", "A", "B", "C", "D"]);
}

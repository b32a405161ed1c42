use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tower::ServiceExt;
use triblock::game::{Bias, GameConfig, GameState, Move};
use triblock::polygon::PolygonSize;
use triblock_service::{app, SessionStore, StateView};

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(v) => req
            .header("content-type", "application/json")
            .body(Body::from(v.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
    };
    (status, value)
}

async fn create(app: &Router, n: usize, human: &str, bias: &str, first: &str) -> (String, Value) {
    let (status, v) = call(
        app,
        Method::POST,
        "/api/v1/games",
        Some(json!({"n": n, "human": human, "bias": bias, "first": first})),
    )
    .await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    (v["id"].as_str().unwrap().to_string(), v["state"].clone())
}

fn new_app() -> Router {
    app(SessionStore::new(), None)
}

/// Rebuilds the state from the reported history with the rules engine and
/// checks every reported field against it.
fn shadow_check(view: &Value) -> GameState {
    let view: StateView = serde_json::from_value(view.clone()).unwrap();
    let bias: Bias = view.bias.parse().unwrap();
    let cfg = GameConfig::with_bias(PolygonSize::new(view.n).unwrap(), bias, view.first);
    let state = GameState::replay(cfg, &view.history).unwrap();
    assert_eq!(view.maker, state.maker().iter().collect::<Vec<_>>());
    assert_eq!(view.breaker, state.breaker().iter().collect::<Vec<_>>());
    assert_eq!(view.status, state.status());
    state
}

#[tokio::test]
async fn create_as_maker_gives_an_empty_board() {
    let app = new_app();
    let (_, state) = create(&app, 8, "maker", "1:1", "maker").await;
    assert_eq!(state["maker"], json!([]));
    assert_eq!(state["breaker"], json!([]));
    assert_eq!(state["turn"], "maker");
    assert_eq!(state["status"], "ongoing");
    assert_eq!(state["witness"], Value::Null);
}

#[tokio::test]
async fn create_as_breaker_lets_the_engine_open() {
    let app = new_app();
    let (_, state) = create(&app, 8, "breaker", "1:1", "maker").await;
    assert_eq!(state["maker"], json!([[1, 7]]));
    assert_eq!(state["history"], json!([{"player": "maker", "diagonals": [[1, 7]]}]));
    assert_eq!(state["turn"], "breaker");
}

#[tokio::test]
async fn bad_creation_requests() {
    let app = new_app();
    for body in [
        json!({"n": 3, "human": "maker", "bias": "1:1", "first": "maker"}),
        json!({"n": 8, "human": "maker", "bias": "3:1", "first": "maker"}),
        json!({"n": 8, "human": "nobody"}),
        json!("not an object"),
    ] {
        let (status, v) = call(&app, Method::POST, "/api/v1/games", Some(body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
        assert_eq!(v["error"], "bad_request");
    }
}

#[tokio::test]
async fn move_errors_leave_the_state_alone() {
    let app = new_app();
    let (id, _) = create(&app, 8, "breaker", "1:1", "maker").await;
    let uri = format!("/api/v1/games/{id}");
    let moves = format!("{uri}/moves");
    let (_, before) = call(&app, Method::GET, &uri, None).await;
    let cases = [
        (json!({"diagonals": [[7, 1]]}), StatusCode::CONFLICT, "occupied"),
        (json!({"diagonals": [[0, 2], [0, 3]]}), StatusCode::BAD_REQUEST, "bad_request"),
        (json!({"diagonals": []}), StatusCode::BAD_REQUEST, "bad_request"),
        (json!({"diagonals": [[0, 1]]}), StatusCode::BAD_REQUEST, "bad_request"),
        (json!({"diagonals": [[0, 99]]}), StatusCode::BAD_REQUEST, "bad_request"),
        (json!({"moves": []}), StatusCode::BAD_REQUEST, "bad_request"),
    ];
    for (body, code, name) in cases {
        let (status, v) = call(&app, Method::POST, &moves, Some(body.clone())).await;
        assert_eq!((status, v["error"].as_str().unwrap()), (code, name), "{body}");
        assert!(v["detail"].is_string());
    }
    let (_, after) = call(&app, Method::GET, &uri, None).await;
    assert_eq!(before, after);
}

#[tokio::test]
async fn engine_only_games_refuse_moves() {
    let app = new_app();
    let (id, state) = create(&app, 6, "none", "1:1", "maker").await;
    assert_eq!(state["status"], "maker_won");
    let (status, v) = call(
        &app,
        Method::POST,
        &format!("/api/v1/games/{id}/moves"),
        Some(json!({"diagonals": [[0, 2]]})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(v["error"], "finished");
}

#[tokio::test]
async fn finished_games_give_no_hints() {
    let app = new_app();
    let (id, state) = create(&app, 7, "none", "1:1", "breaker").await;
    assert_eq!(state["status"], "maker_won");
    let (status, v) = call(&app, Method::GET, &format!("/api/v1/games/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(v["error"], "finished");
}

#[tokio::test]
async fn human_maker_wins_with_hints() {
    let app = new_app();
    let (id, _) = create(&app, 8, "maker", "1:1", "maker").await;
    let mut state = Value::Null;
    for turn in 1..=5 {
        let (status, hint) = call(&app, Method::GET, &format!("/api/v1/games/{id}/hint"), None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(hint["source"], "paper_maker");
        let (status, s) = call(
            &app,
            Method::POST,
            &format!("/api/v1/games/{id}/moves"),
            Some(json!({"diagonals": hint["diagonals"]})),
        )
        .await;
        assert_eq!(status, StatusCode::OK, "{s}");
        shadow_check(&s);
        state = s;
        if turn < 5 {
            assert_eq!(state["engine_reply"].as_array().unwrap().len(), 1);
        }
    }
    assert_eq!(state["status"], "maker_won");
    assert_eq!(state["turn"], Value::Null);
    assert_eq!(state["witness"].as_array().unwrap().len(), 5);
    assert_eq!(state["engine_reply"], json!([]));
}

#[tokio::test]
async fn human_breaker_wins_with_hints() {
    let app = new_app();
    let (id, _) = create(&app, 10, "breaker", "1:2", "maker").await;
    let mut turns = 0;
    loop {
        let (_, hint) = call(&app, Method::GET, &format!("/api/v1/games/{id}/hint"), None).await;
        assert_eq!(hint["source"], "paper_breaker");
        let (_, s) = call(
            &app,
            Method::POST,
            &format!("/api/v1/games/{id}/moves"),
            Some(json!({"diagonals": hint["diagonals"]})),
        )
        .await;
        turns += 1;
        shadow_check(&s);
        if s["status"] != "ongoing" {
            assert_eq!(s["status"], "breaker_won");
            assert!(s["breaker_structure"]["offset"].as_u64().is_some());
            break;
        }
    }
    assert!(turns <= 7);
}

#[tokio::test]
async fn delete_then_get() {
    let app = new_app();
    let (id, _) = create(&app, 5, "maker", "1:1", "maker").await;
    let uri = format!("/api/v1/games/{id}");
    let (status, _) = call(&app, Method::DELETE, &uri, None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    let (status, v) = call(&app, Method::GET, &uri, None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["error"], "not_found");
    let (status, _) = call(&app, Method::DELETE, &uri, None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, v) = call(&app, Method::GET, "/api/v1/nothing", None).await;
    assert_eq!((status, v["error"].as_str()), (StatusCode::NOT_FOUND, Some("not_found")));
}

#[tokio::test]
async fn random_requests_never_leave_the_rules() {
    let app = new_app();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..40 {
        let n = rng.random_range(4..=9);
        let human = ["maker", "breaker"][rng.random_range(0..2)];
        let bias = ["1:1", "1:2"][rng.random_range(0..2)];
        let first = ["maker", "breaker"][rng.random_range(0..2)];
        let (id, state) = create(&app, n, human, bias, first).await;
        let mut last = shadow_check(&state);
        for _ in 0..30 {
            let k = rng.random_range(0..=3);
            let diagonals: Vec<[usize; 2]> = (0..k)
                .map(|_| [rng.random_range(0..n + 1), rng.random_range(0..n + 1)])
                .collect();
            let target = if rng.random_bool(0.05) { "missing".to_string() } else { id.clone() };
            let (status, v) = call(
                &app,
                Method::POST,
                &format!("/api/v1/games/{target}/moves"),
                Some(json!({ "diagonals": diagonals })),
            )
            .await;
            let (_, now) = call(&app, Method::GET, &format!("/api/v1/games/{id}"), None).await;
            let state = shadow_check(&now);
            if status == StatusCode::OK {
                assert_eq!(v["history"], now["history"]);
                assert!(state.history().len() > last.history().len());
            } else {
                assert!(v["error"].is_string(), "round {round}: {v}");
                assert_eq!(state, last);
            }
            last = state;
        }
    }
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn sessions_do_not_interfere() {
    let app = new_app();
    let mut handles = Vec::new();
    for k in 0..12 {
        let app = app.clone();
        handles.push(tokio::spawn(async move {
            let (human, bias, n) = if k % 2 == 0 { ("maker", "1:1", 9) } else { ("breaker", "1:2", 9) };
            let (id, _) = create(&app, n, human, bias, "maker").await;
            loop {
                let (_, hint) = call(&app, Method::GET, &format!("/api/v1/games/{id}/hint"), None).await;
                let (status, s) = call(
                    &app,
                    Method::POST,
                    &format!("/api/v1/games/{id}/moves"),
                    Some(json!({"diagonals": hint["diagonals"]})),
                )
                .await;
                assert_eq!(status, StatusCode::OK);
                if s["status"] != "ongoing" {
                    let h: Vec<Move> = serde_json::from_value(s["history"].clone()).unwrap();
                    return (k % 2, h, s["status"].clone());
                }
            }
        }));
    }
    let mut by_kind: [Option<Vec<Move>>; 2] = [None, None];
    for h in handles {
        let (kind, history, status) = h.await.unwrap();
        assert_eq!(status, if kind == 0 { "maker_won" } else { "breaker_won" });
        // identical deterministic games, so any cross-talk would show as a difference
        match &by_kind[kind] {
            Some(prev) => assert_eq!(prev, &history),
            None => by_kind[kind] = Some(history),
        }
    }
}

#[tokio::test]
async fn static_files_are_served_beside_the_api() {
    let dir = std::env::temp_dir().join(format!("triblock-static-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("index.html"), "<h1>board</h1>").unwrap();
    let app = app(SessionStore::new(), Some(dir.clone()));
    let (status, v) = call(&app, Method::GET, "/index.html", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v, Value::String("<h1>board</h1>".into()));
    let (status, _) = call(&app, Method::GET, "/", None).await;
    assert_eq!(status, StatusCode::OK);
    let (status, v) = call(&app, Method::GET, "/api/v1/games/zzz", None).await;
    assert_eq!((status, v["error"].as_str()), (StatusCode::NOT_FOUND, Some("not_found")));
    std::fs::remove_dir_all(dir).unwrap();
}

//! HTTP service: routes, response shapes and error bodies.

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use hclcolor::palettes::Registry;
use hclcolor_cli::cli::run;
use hclcolor_cli::service::{router, AppState};

fn app() -> Router {
    router(Arc::new(AppState::new(Registry::builtin(), None)), None)
}

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Vec<u8>) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn post(app: &Router, path: &str, body: &str) -> (StatusCode, Value) {
    let req = Request::post(path)
        .header("content-type", "application/json")
        .body(Body::from(body.to_string()))
        .unwrap();
    let (status, bytes) = send(app, req).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

async fn get(app: &Router, path: &str) -> (StatusCode, Value) {
    let (status, bytes) = send(app, Request::get(path).body(Body::empty()).unwrap()).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

#[tokio::test]
async fn palettes_listing() {
    let app = app();
    let (status, v) = get(&app, "/palettes").await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<&str> = v["palettes"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    for name in ["Pastel 1", "Dark 2", "Dark 3", "Set 2", "Set 3", "Warm", "Cold", "Harmonic", "Dynamic"] {
        assert!(names.contains(&name), "{name}");
    }
    let (_, v) = get(&app, "/palettes?type=diverging").await;
    assert!(v["palettes"].as_array().unwrap().iter().all(|p| p["type"] == "diverging"));
    let (status, v) = get(&app, "/palettes?type=plaid").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["fields"][0]["field"], "type");
}

#[tokio::test]
async fn generate_returns_colors_and_trace() {
    let app = app();
    let (status, v) = post(&app, "/generate", r#"{"type":"qualitative","palette":"Dark 3","n":4}"#).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["colors"], json!(["#E16A86", "#909800", "#00AD9A", "#9183E6"]));
    assert_eq!(v["trace"]["n"], 4);
    assert_eq!(v["trace"]["luminance"].as_array().unwrap().len(), 4);
    let (_, v) = post(&app, "/generate", r#"{"type":"qualitative","h1":0,"h2":270,"c1":60,"l1":70,"n":4}"#).await;
    assert_eq!(v["colors"], json!(["#ED90A4", "#ABB150", "#00C1B2", "#ACA2EC"]));
}

#[tokio::test]
async fn generate_matches_cli() {
    let app = app();
    let body = r#"{"type":"diverging","palette":"Green-Brown","n":9,"rev":true,"alpha":0.25,"l2":95}"#;
    let (_, v) = post(&app, "/generate", body).await;
    let argv = [
        "hclcolor", "generate", "diverging", "--palette", "Green-Brown", "-n", "9", "--rev", "--alpha", "0.25", "--l2", "95",
        "--format", "json",
    ];
    let cli: Value = serde_json::from_str(&run(argv, &mut std::io::empty()).stdout).unwrap();
    assert_eq!(v["colors"], cli);
}

#[tokio::test]
async fn generate_validation_errors() {
    let app = app();
    let cases = [
        (r#"{"type":"qualitative","n":4,"h9":1}"#, "h9"),
        (r#"{"type":"qualitative","n":-2}"#, "n"),
        (r#"{"type":"qualitative","n":4,"c1":"high"}"#, "c1"),
        (r#"{"type":"qualitative","n":4,"alpha":3}"#, "alpha"),
        (r#"{"type":"sequential","palette":"Dark 3","n":4}"#, "type"),
        (r#"{"n":4}"#, "type"),
        (r#"{"type":"qualitative","n":0}"#, "n"),
        (r#"[1,2]"#, "body"),
        (r#"{"type":"qualitative""#, "body"),
    ];
    for (body, field) in cases {
        let (status, v) = post(&app, "/generate", body).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}: {v}");
        assert_eq!(v["error"], "validation");
        assert_eq!(v["fields"][0]["field"], field, "{body}: {v}");
        assert!(v["message"].as_str().unwrap().len() > 3);
    }
    let (_, v) = post(&app, "/generate", r#"{"type":"qualitative","n":4,"h9":1}"#).await;
    assert!(v["fields"][0]["message"].as_str().unwrap().contains("h9"));
}

#[tokio::test]
async fn unknown_palette_is_404_with_suggestions() {
    let (status, v) = post(&app(), "/generate", r#"{"palette":"Dark 9","n":3}"#).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(v["error"], "not_found");
    assert!(v["suggestions"].as_array().unwrap().contains(&json!("Dark 3")));
}

#[tokio::test]
async fn cvd_route() {
    let app = app();
    let (status, v) = post(&app, "/cvd", r##"{"colors":["#123456","#ABCDEF80"],"kind":"tritan","severity":0}"##).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["colors"], json!(["#123456", "#ABCDEF80"]));
    let (_, v) = post(&app, "/cvd", r##"{"colors":["#FF0000FF"],"kind":"deutan"}"##).await;
    assert_eq!(v["colors"], json!(["#5D4700FF"]));
    let (status, v) = post(&app, "/cvd", r##"{"colors":["#FF0000","bad"],"kind":"deutan","severity":1}"##).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["fields"][0]["field"], "colors[1]");
    let (_, v) = post(&app, "/cvd", r##"{"colors":[],"kind":"deutan","severity":2}"##).await;
    assert_eq!(v["fields"][0]["field"], "severity");
    let (_, v) = post(&app, "/cvd", r##"{"colors":[],"kind":"bluish"}"##).await;
    assert_eq!(v["fields"][0]["field"], "kind");
}

#[tokio::test]
async fn analyze_route() {
    let app = app();
    let (status, v) = post(&app, "/analyze", r##"{"colors":["#023FA5","#BEC1D4","#E2E2E2","#D6BCC0","#8E063B"]}"##).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["inferred"]["type"], "diverging");
    assert_eq!(v["projection"]["type"], "diverging");
    assert_eq!(v["trace"]["n"], 5);
    let (status, v) = post(&app, "/analyze", r##"{"colors":["#000000","#FFFFFF"]}"##).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["fields"][0]["field"], "colors");
}

#[tokio::test]
async fn pick_route() {
    let app = app();
    let (status, v) =
        post(&app, "/pick", r#"{"plane":"hue-chroma","value":70,"x_steps":7,"y_steps":5,"cmax":100}"#).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["grid"]["cells"].as_array().unwrap().len(), 5);
    assert_eq!(v["grid"]["cells"][0].as_array().unwrap().len(), 7);
    assert_eq!(v["boundary"].as_array().unwrap().len(), 7);
    let (status, v) = post(&app, "/pick", r#"{"plane":"hue-chroma","value":70,"x_steps":100000}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST, "{v}");
    let (status, _) = post(&app, "/pick", r#"{"plane":"sideways","value":70}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn register_persists_and_serves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reg.json");
    let app = router(Arc::new(AppState::new(Registry::builtin(), Some(path.clone()))), None);
    let (status, v) =
        post(&app, "/register", r#"{"name":"myset","type":"qualitative","h1":0,"c1":60,"l1":80}"#).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["palette"]["source"], "registered");
    let (_, v) = post(&app, "/generate", r#"{"palette":"myset","n":4}"#).await;
    assert_eq!(v["colors"], json!(["#FFACBF", "#C6CD70", "#32DDCD", "#C7BEFF"]));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved[0]["name"], "myset");
    let (status, _) = post(&app, "/register", r#"{"type":"qualitative"}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = post(&app, "/register", r#"{"name":"x","type":"qualitative","l1":"bright"}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn identical_requests_identical_bytes() {
    let app = app();
    let body = r##"{"colors":["#E16A86","#909800","#00AD9A","#9183E6"]}"##;
    let mk = || Request::post("/analyze").body(Body::from(body)).unwrap();
    let (_, a) = send(&app, mk()).await;
    let (_, b) = send(&app, mk()).await;
    assert_eq!(a, b);
}

#[tokio::test]
async fn static_files_and_unknown_routes() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<p>wizard</p>").unwrap();
    let app = router(Arc::new(AppState::new(Registry::builtin(), None)), Some(dir.path().to_path_buf()));
    let (status, body) = send(&app, Request::get("/index.html").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, b"<p>wizard</p>");
    let (status, _) = send(&app, Request::get("/generate").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::METHOD_NOT_ALLOWED);
    let (status, _) = send(&self::app(), Request::get("/missing").body(Body::empty()).unwrap()).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[test]
fn serve_binds_a_real_socket() {
    // Start on an ephemeral port in a background thread and query it.
    let state = Arc::new(AppState::new(Registry::builtin(), None));
    let rt = tokio::runtime::Runtime::new().unwrap();
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
        let addr = listener.local_addr().unwrap();
        let server = tokio::spawn(async move { axum::serve(listener, router(state, None)).await });
        let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
        use tokio::io::{AsyncReadExt, AsyncWriteExt};
        stream
            .write_all(b"GET /palettes?type=qualitative HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n")
            .await
            .unwrap();
        let mut text = String::new();
        stream.read_to_string(&mut text).await.unwrap();
        assert!(text.starts_with("HTTP/1.1 200"), "{text}");
        assert!(text.contains("Harmonic"));
        server.abort();
    });
}

//! Stateless HTTP service over an immutable [`Snapshot`].
//!
//! [`Api::respond`] maps a request path and query string to a reply and is
//! a pure function of the snapshot and the request; the axum layer only
//! moves bytes.

use std::net::SocketAddr;
use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use axum::body::Body;
use axum::extract::State;
use axum::http::{header, StatusCode, Uri};
use axum::response::Response;
use axum::Router;
use dvcity_core::{
    file_detail, DetailError, FilterState, HighlightKind, HighlightQuery, HighlightResult,
};
use serde::Serialize;

use crate::engine::{AppError, Snapshot};
use crate::timefmt::{describe_filter_error, format_timestamp, parse_timestamp};

pub const JSON: &str = "application/json";
pub const TSV: &str = "text/tab-separated-values; charset=utf-8";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub status: u16,
    pub content_type: &'static str,
    pub body: Vec<u8>,
}

impl Reply {
    fn json<T: Serialize>(status: u16, value: &T) -> Reply {
        let mut body = serde_json::to_vec(value).expect("documents always serialize");
        body.push(b'\n');
        Reply {
            status,
            content_type: JSON,
            body,
        }
    }

    fn error(status: u16, code: &str, message: impl Into<String>) -> Reply {
        Reply::json(
            status,
            &ErrorDoc {
                code,
                message: message.into(),
            },
        )
    }
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    code: &'a str,
    message: String,
}

#[derive(Serialize)]
pub struct SpanDoc {
    pub from: String,
    pub to: String,
}

#[derive(Serialize)]
pub struct StatsDoc {
    pub commit_sets: usize,
    pub bad_commits: usize,
    pub files: usize,
    pub bad_files: usize,
    pub committers: usize,
    pub time_span: Option<SpanDoc>,
}

#[derive(Serialize)]
struct HighlightDoc<'a> {
    path: &'a str,
    commits: u64,
    bad_commits: u64,
    badness: f64,
    color: String,
}

impl<'a> From<&'a HighlightResult> for HighlightDoc<'a> {
    fn from(r: &'a HighlightResult) -> Self {
        HighlightDoc {
            path: &r.path,
            commits: r.metrics.commit_count,
            bad_commits: r.metrics.bad_commit_count,
            badness: r.metrics.badness().map_or(0.0, |b| b.to_f64()),
            color: r.beam_color.to_string(),
        }
    }
}

#[derive(Serialize)]
struct DetailEntryDoc<'a> {
    id: &'a str,
    ts: String,
    author: &'a str,
    message: &'a str,
    bad: bool,
}

#[derive(Serialize)]
struct FileDetailDoc<'a> {
    path: &'a str,
    commit_count: usize,
    bad_commit_count: usize,
    commits: Vec<DetailEntryDoc<'a>>,
}

pub fn stats_doc(snapshot: &Snapshot) -> StatsDoc {
    let s = snapshot.stats();
    StatsDoc {
        commit_sets: s.commit_set_count,
        bad_commits: s.bad_commit_count,
        files: s.distinct_file_count,
        bad_files: s.bad_file_count,
        committers: s.committer_count,
        time_span: s.time_span.map(|(from, to)| SpanDoc {
            from: format_timestamp(from),
            to: format_timestamp(to),
        }),
    }
}

struct Params(Vec<(String, String)>);

impl Params {
    fn parse(query: Option<&str>) -> Params {
        Params(
            form_urlencoded::parse(query.unwrap_or("").as_bytes())
                .into_owned()
                .collect(),
        )
    }

    /// Last value given for `key`.
    fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.0
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn filter(&self) -> Result<FilterState, Reply> {
        let ts = |key: &str| {
            self.get(key)
                .map(|v| {
                    parse_timestamp(v).ok_or_else(|| {
                        Reply::error(
                            400,
                            "invalid_parameter",
                            format!("{key}: unparseable timestamp {v:?}"),
                        )
                    })
                })
                .transpose()
        };
        let excluded = self
            .all("exclude")
            .filter(|s| !s.is_empty())
            .map(String::from);
        FilterState::new(ts("from")?, ts("to")?, excluded)
            .map_err(|e| Reply::error(400, "invalid_time_window", describe_filter_error(&e)))
    }
}

pub struct Api {
    snapshot: Snapshot,
    assets: Option<PathBuf>,
}

impl Api {
    pub fn new(snapshot: Snapshot, assets: Option<PathBuf>) -> Self {
        Api { snapshot, assets }
    }

    pub fn snapshot(&self) -> &Snapshot {
        &self.snapshot
    }

    pub fn respond(&self, path: &str, query: Option<&str>) -> Reply {
        let params = Params::parse(query);
        let result = match path {
            "/api/stats" => Ok(Reply::json(200, &stats_doc(&self.snapshot))),
            "/api/scene" => params.filter().map(|f| Reply {
                status: 200,
                content_type: JSON,
                body: self.snapshot.scene_document(&f).into_bytes(),
            }),
            "/api/highlights" => self.highlights(&params),
            "/api/file" => self.file(&params),
            "/api/export.tsv" => params.filter().map(|f| Reply {
                status: 200,
                content_type: TSV,
                body: self.snapshot.export_tsv(&f).into_bytes(),
            }),
            other => Ok(self.asset(other)),
        };
        result.unwrap_or_else(|e| e)
    }

    fn highlights(&self, params: &Params) -> Result<Reply, Reply> {
        let filter = params.filter()?;
        let bad = |msg: String| Reply::error(400, "invalid_parameter", msg);
        let kind = params
            .get("kind")
            .ok_or_else(|| bad("kind is required".into()))?;
        let kind = HighlightKind::parse(kind).ok_or_else(|| {
            bad(format!(
                "kind must be error_prone or coverage_hole, got {kind:?}"
            ))
        })?;
        let min_commits = params
            .get("min_commits")
            .ok_or_else(|| bad("min_commits is required".into()))?;
        let min_commits: u64 = min_commits
            .parse()
            .map_err(|_| bad(format!("min_commits: not an integer: {min_commits:?}")))?;
        let threshold = params
            .get("threshold")
            .ok_or_else(|| bad("threshold is required".into()))?;
        let threshold: f64 = threshold
            .parse()
            .map_err(|_| bad(format!("threshold: not a number: {threshold:?}")))?;
        let query =
            HighlightQuery::new(kind, min_commits, threshold).map_err(|e| bad(e.to_string()))?;
        let found = self.snapshot.highlights(&filter, &query);
        let docs: Vec<HighlightDoc> = found.iter().map(HighlightDoc::from).collect();
        Ok(Reply::json(200, &docs))
    }

    fn file(&self, params: &Params) -> Result<Reply, Reply> {
        let filter = params.filter()?;
        let path = params
            .get("path")
            .ok_or_else(|| Reply::error(400, "invalid_parameter", "path is required"))?;
        let detail = file_detail(self.snapshot.dataset(), &filter, path).map_err(|e| match e {
            DetailError::UnknownPath(_) => Reply::error(404, "unknown_path", e.to_string()),
        })?;
        let doc = FileDetailDoc {
            path: &detail.path,
            commit_count: detail.commits.len(),
            bad_commit_count: detail.bad_commits().count(),
            commits: detail
                .commits
                .iter()
                .map(|e| DetailEntryDoc {
                    id: &e.id,
                    ts: format_timestamp(e.timestamp),
                    author: &e.author,
                    message: &e.message,
                    bad: e.bad,
                })
                .collect(),
        };
        Ok(Reply::json(200, &doc))
    }

    fn asset(&self, path: &str) -> Reply {
        let not_found = || Reply::error(404, "not_found", format!("no route for {path}"));
        let Some(root) = &self.assets else {
            return not_found();
        };
        let rel = match path {
            "/" => "index.html",
            p => match p.strip_prefix("/assets/") {
                Some(rel) if !rel.is_empty() => rel,
                _ => return not_found(),
            },
        };
        let rel = Path::new(rel);
        if !rel.components().all(|c| matches!(c, Component::Normal(_))) {
            return not_found();
        }
        match std::fs::read(root.join(rel)) {
            Ok(body) => Reply {
                status: 200,
                content_type: content_type_for(rel),
                body,
            },
            Err(_) => not_found(),
        }
    }
}

fn content_type_for(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("html") => "text/html; charset=utf-8",
        Some("js" | "mjs") => "text/javascript; charset=utf-8",
        Some("css") => "text/css; charset=utf-8",
        Some("json") => JSON,
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("wasm") => "application/wasm",
        _ => "application/octet-stream",
    }
}

async fn handle(State(api): State<Arc<Api>>, uri: Uri) -> Response {
    let reply = api.respond(uri.path(), uri.query());
    Response::builder()
        .status(StatusCode::from_u16(reply.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR))
        .header(header::CONTENT_TYPE, reply.content_type)
        .body(Body::from(reply.body))
        .expect("static headers are valid")
}

pub fn router(api: Arc<Api>) -> Router {
    Router::new().fallback(handle).with_state(api)
}

/// Serves until the listener fails.
pub async fn serve(api: Arc<Api>, listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router(api)).await
}

/// Binds `addr` and serves on a multi-threaded runtime.
pub fn run(api: Api, addr: &str) -> Result<(), AppError> {
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|source| AppError::Bind {
                addr: addr.into(),
                source,
            })?;
        let local: SocketAddr = listener.local_addr()?;
        eprintln!("dvcity listening on http://{local}/");
        serve(Arc::new(api), listener).await.map_err(AppError::from)
    })
}

//! The scene document exchanged with the viewer.
//!
//! The writer emits keys in a fixed order and every coordinate with three
//! decimals (badness with four), so equal scenes give byte-equal documents.
//! The reader is an independent serde-based parser used by tests and tools.

use std::fmt::Write;

use dvcity_core::{Block, Building, FileMetrics, FilterState, Rect, Rgb, Scene};
use serde::Deserialize;

use crate::export::fixed4;
use crate::timefmt::{format_timestamp, parse_timestamp};

pub const SCENE_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum SceneDocError {
    #[error("invalid scene document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported scene version {0}")]
    Version(u32),
    #[error("invalid scene document: {0}")]
    Invalid(String),
}

fn num3(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn rect(out: &mut String, r: &Rect) {
    let _ = write!(
        out,
        "{{\"x\":{},\"y\":{},\"w\":{},\"h\":{}}}",
        num3(r.x),
        num3(r.y),
        num3(r.w),
        num3(r.h)
    );
}

fn opt_ts(ts: Option<dvcity_core::Timestamp>) -> String {
    ts.map_or_else(|| "null".into(), |t| json_str(&format_timestamp(t)))
}

pub fn serialize_scene(scene: &Scene) -> String {
    let mut out = String::with_capacity(256 + 200 * scene.buildings.len());
    let _ = write!(out, "{{\"version\":{SCENE_VERSION},\n\"bounds\":");
    rect(&mut out, &scene.bounds);
    let excluded: Vec<String> = scene
        .filter
        .excluded()
        .iter()
        .map(|s| json_str(s))
        .collect();
    let _ = write!(
        out,
        ",\n\"filter\":{{\"from\":{},\"to\":{},\"excluded\":[{}]}},\n\"blocks\":[",
        opt_ts(scene.filter.from()),
        opt_ts(scene.filter.to()),
        excluded.join(",")
    );
    for (i, b) in scene.blocks.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(out, "{{\"path\":{},\"rect\":", json_str(&b.path));
        rect(&mut out, &b.rect);
        let _ = write!(
            out,
            ",\"depth\":{},\"elevation\":{}}}",
            b.depth,
            num3(b.elevation)
        );
    }
    out.push_str("\n],\n\"buildings\":[");
    for (i, b) in scene.buildings.iter().enumerate() {
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        let _ = write!(out, "{{\"path\":{},\"rect\":", json_str(&b.path));
        rect(&mut out, &b.rect);
        let badness = match b.metrics.badness() {
            None => "null".into(),
            some => fixed4(some),
        };
        let _ = write!(
            out,
            ",\"base\":{},\"height\":{},\"color\":\"{}\",\"commits\":{},\"bad_commits\":{},\"badness\":{}}}",
            num3(b.base),
            num3(b.height),
            b.color,
            b.metrics.commit_count,
            b.metrics.bad_commit_count,
            badness
        );
    }
    out.push_str("\n]}\n");
    out
}

#[derive(Deserialize)]
struct RectDoc {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
}

impl From<RectDoc> for Rect {
    fn from(r: RectDoc) -> Rect {
        Rect::new(r.x, r.y, r.w, r.h)
    }
}

#[derive(Deserialize)]
struct FilterDoc {
    from: Option<String>,
    to: Option<String>,
    excluded: Vec<String>,
}

#[derive(Deserialize)]
struct BlockDoc {
    path: String,
    rect: RectDoc,
    depth: usize,
    elevation: f64,
}

#[derive(Deserialize)]
struct BuildingDoc {
    path: String,
    rect: RectDoc,
    base: f64,
    height: f64,
    color: String,
    commits: u64,
    bad_commits: u64,
    badness: Option<f64>,
}

#[derive(Deserialize)]
struct SceneDoc {
    version: u32,
    bounds: RectDoc,
    filter: FilterDoc,
    blocks: Vec<BlockDoc>,
    buildings: Vec<BuildingDoc>,
}

/// Reads a scene document back into a [`Scene`], checking that colors,
/// timestamps and badness values are consistent.
pub fn parse_scene(doc: &str) -> Result<Scene, SceneDocError> {
    let doc: SceneDoc = serde_json::from_str(doc)?;
    if doc.version != SCENE_VERSION {
        return Err(SceneDocError::Version(doc.version));
    }
    let invalid = |s: String| SceneDocError::Invalid(s);
    let ts = |t: Option<String>| -> Result<_, SceneDocError> {
        t.map(|t| parse_timestamp(&t).ok_or_else(|| invalid(format!("timestamp {t:?}"))))
            .transpose()
    };
    let filter = FilterState::new(
        ts(doc.filter.from)?,
        ts(doc.filter.to)?,
        doc.filter.excluded,
    )
    .map_err(|e| invalid(e.to_string()))?;
    let blocks = doc
        .blocks
        .into_iter()
        .map(|b| Block {
            path: b.path,
            rect: b.rect.into(),
            depth: b.depth,
            elevation: b.elevation,
        })
        .collect();
    let buildings = doc
        .buildings
        .into_iter()
        .map(|b| {
            let color =
                Rgb::from_hex(&b.color).ok_or_else(|| invalid(format!("color {:?}", b.color)))?;
            if b.bad_commits > b.commits {
                return Err(invalid(format!("{}: bad_commits exceeds commits", b.path)));
            }
            let metrics = FileMetrics {
                path: b.path.clone(),
                commit_count: b.commits,
                bad_commit_count: b.bad_commits,
            };
            let expected = metrics.badness().map(|r| r.to_f64());
            let consistent = match (expected, b.badness) {
                (None, None) => true,
                (Some(e), Some(got)) => (e - got).abs() <= 5e-5,
                _ => false,
            };
            if !consistent {
                return Err(invalid(format!(
                    "{}: badness disagrees with counts",
                    b.path
                )));
            }
            Ok(Building {
                path: b.path,
                rect: b.rect.into(),
                base: b.base,
                height: b.height,
                color,
                metrics,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Scene {
        bounds: doc.bounds.into(),
        blocks,
        buildings,
        filter,
    })
}

//! File formats, command line and HTTP service around `dvcity-core`.
//!
//! Inputs are a JSON Lines commit log (or a plain-text SCM log) plus a list
//! of bad commit ids. Outputs are a tab-separated metrics table, the scene
//! document consumed by the browser viewer, and a small JSON API.

pub mod cli;
pub mod engine;
pub mod export;
pub mod formats;
pub mod scene_doc;
pub mod service;
pub mod timefmt;

pub use engine::{load_dataset, AppError, InputConfig, Snapshot};
pub use export::export_table;
pub use scene_doc::{parse_scene, serialize_scene};

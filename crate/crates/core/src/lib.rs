//! Analytics engine behind the design-verification cityscape.
//!
//! Commit sets and the set of commit ids that broke regression testing are
//! folded into per-file and per-folder badness metrics. The folder hierarchy
//! is planned once into an immutable city (folders become stacked blocks,
//! files become buildings) and every filter only changes building heights
//! and colors. Two threshold queries locate error-prone folders and
//! potential coverage holes.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, file formats, the
//! CLI and the HTTP service live in the `dvcity` crate.
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod detail;
pub mod highlights;
pub mod ingest;
pub mod layout;
pub mod metrics;
mod time;

pub use detail::{file_detail, DetailEntry, DetailError, FileDetail};
pub use highlights::{
    find_highlights, HighlightError, HighlightKind, HighlightQuery, HighlightResult,
};
pub use ingest::{
    build_dataset, generate_synthetic, normalize_path, summarize, CommitSet, Dataset, DatasetStats,
    IngestError, SyntheticShape, Validation,
};
pub use layout::{
    badness_color, building_height, plan_city, render_scene, Block, Building, BuildingSite,
    CityPlan, LayoutError, Rect, Rgb, Scene,
};
pub use metrics::{
    apply_filter, build_tree, compute_file_metrics, compute_folder_metrics, ActiveCommits, Badness,
    FileMetrics, FilterError, FilterState, FolderMetrics, FolderNode, FolderTree,
};
pub use time::Timestamp;

//! Loading inputs and the immutable snapshot every command works from.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use dvcity_core::{
    apply_filter, build_dataset, build_tree, compute_file_metrics, compute_folder_metrics,
    find_highlights, plan_city, render_scene, summarize, CityPlan, Dataset, DatasetStats,
    FilterState, FolderTree, HighlightQuery, HighlightResult, IngestError, Scene, Validation,
};

use crate::export::export_table;
use crate::formats::{parse_bad_commits, parse_commit_log, parse_scm_log, ParseError};
use crate::scene_doc::serialize_scene;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("cannot open {}: {source}", path.display())]
    Open {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Dataset { path: PathBuf, source: IngestError },
    #[error("{0}")]
    Usage(String),
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl AppError {
    /// 2 for files that cannot be opened or bad command lines, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Open { .. } | AppError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Where the history comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputConfig {
    pub commit_log: PathBuf,
    pub bad_commits: PathBuf,
    /// Read the commit history as a plain-text SCM log instead of JSON Lines.
    pub scm_log: bool,
    pub validation: Validation,
}

fn open(path: &Path) -> Result<BufReader<File>, AppError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| AppError::Open {
            path: path.to_path_buf(),
            source,
        })
}

/// Loads and validates the dataset. The second value lists bad ids dropped
/// in lenient mode.
pub fn load_dataset(input: &InputConfig) -> Result<(Dataset, Vec<String>), AppError> {
    let log = open(&input.commit_log)?;
    let bad = open(&input.bad_commits)?;
    let parsed = if input.scm_log {
        parse_scm_log(log)
    } else {
        parse_commit_log(log)
    };
    let commits = parsed.map_err(|source| AppError::Parse {
        path: input.commit_log.clone(),
        source,
    })?;
    let bad_ids = parse_bad_commits(bad).map_err(|source| AppError::Read {
        path: input.bad_commits.clone(),
        source,
    })?;
    build_dataset(commits, bad_ids, input.validation).map_err(|source| {
        let path = match source {
            IngestError::UnknownBadIds(_) => input.bad_commits.clone(),
            _ => input.commit_log.clone(),
        };
        AppError::Dataset { path, source }
    })
}

/// Dataset plus everything derived from the full history: the folder tree,
/// the city plan and summary counts. Filters never modify it.
#[derive(Debug, Clone)]
pub struct Snapshot {
    dataset: Dataset,
    tree: FolderTree,
    plan: CityPlan,
    stats: DatasetStats,
}

impl Snapshot {
    pub fn new(dataset: Dataset) -> Self {
        let tree = build_tree(&dataset);
        let plan = plan_city(&tree);
        let stats = summarize(&dataset);
        Snapshot {
            dataset,
            tree,
            plan,
            stats,
        }
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn tree(&self) -> &FolderTree {
        &self.tree
    }

    pub fn plan(&self) -> &CityPlan {
        &self.plan
    }

    pub fn stats(&self) -> &DatasetStats {
        &self.stats
    }

    pub fn scene(&self, filter: &FilterState) -> Scene {
        let metrics = compute_file_metrics(&apply_filter(&self.dataset, filter));
        render_scene(&self.plan, &metrics, filter).expect("plan and metrics come from one dataset")
    }

    pub fn scene_document(&self, filter: &FilterState) -> String {
        serialize_scene(&self.scene(filter))
    }

    pub fn export_tsv(&self, filter: &FilterState) -> String {
        let active = apply_filter(&self.dataset, filter);
        export_table(
            &compute_file_metrics(&active),
            &compute_folder_metrics(&active, &self.tree),
        )
    }

    pub fn highlights(&self, filter: &FilterState, query: &HighlightQuery) -> Vec<HighlightResult> {
        let active = apply_filter(&self.dataset, filter);
        find_highlights(
            &compute_folder_metrics(&active, &self.tree),
            &self.tree,
            query,
        )
    }
}

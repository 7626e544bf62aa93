//! Drill-down into the commits that touched one file.

use alloc::string::String;
use alloc::vec::Vec;

use crate::metrics::{apply_filter, FilterState};
use crate::{Dataset, Timestamp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DetailError {
    #[error("unknown path {0}")]
    UnknownPath(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetailEntry {
    pub id: String,
    pub timestamp: Timestamp,
    pub author: String,
    pub message: String,
    pub bad: bool,
}

/// Active commits touching one path, ordered by `(timestamp, id)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileDetail {
    pub path: String,
    pub commits: Vec<DetailEntry>,
}

impl FileDetail {
    pub fn bad_commits(&self) -> impl Iterator<Item = &DetailEntry> {
        self.commits.iter().filter(|e| e.bad)
    }
}

pub fn file_detail(
    dataset: &Dataset,
    filter: &FilterState,
    path: &str,
) -> Result<FileDetail, DetailError> {
    if !dataset.contains_path(path) {
        return Err(DetailError::UnknownPath(path.into()));
    }
    let commits = apply_filter(dataset, filter)
        .iter()
        .filter(|c| c.files().iter().any(|f| f == path))
        .map(|c| DetailEntry {
            id: c.id().into(),
            timestamp: c.timestamp(),
            author: c.author().into(),
            message: c.message().into(),
            bad: dataset.is_bad(c.id()),
        })
        .collect();
    Ok(FileDetail {
        path: path.into(),
        commits,
    })
}

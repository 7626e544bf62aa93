use alloc::collections::BTreeSet;

use super::Dataset;
use crate::Timestamp;

/// Descriptive counts over a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DatasetStats {
    pub commit_set_count: usize,
    pub bad_commit_count: usize,
    pub distinct_file_count: usize,
    /// Paths that appear in at least one bad commit set.
    pub bad_file_count: usize,
    /// Distinct non-empty author names.
    pub committer_count: usize,
    /// Earliest and latest commit timestamps, `None` for an empty dataset.
    pub time_span: Option<(Timestamp, Timestamp)>,
}

pub fn summarize(dataset: &Dataset) -> DatasetStats {
    let commits = dataset.commits();
    let mut bad_files = BTreeSet::new();
    let mut authors = BTreeSet::new();
    for c in commits {
        if dataset.is_bad(c.id()) {
            bad_files.extend(c.files().iter().map(|f| f.as_str()));
        }
        if !c.author().is_empty() {
            authors.insert(c.author());
        }
    }
    DatasetStats {
        commit_set_count: commits.len(),
        bad_commit_count: dataset.bad_ids().len(),
        distinct_file_count: dataset.paths().len(),
        bad_file_count: bad_files.len(),
        committer_count: authors.len(),
        time_span: match (commits.first(), commits.last()) {
            (Some(a), Some(b)) => Some((a.timestamp(), b.timestamp())),
            _ => None,
        },
    }
}

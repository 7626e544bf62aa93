//! Commit sets, the validated [`Dataset`], its summary statistics and a
//! seeded generator for synthetic projects.

mod path;
mod stats;
mod synthetic;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::Timestamp;

pub use path::normalize_path;
pub use stats::{summarize, DatasetStats};
pub use synthetic::{generate_synthetic, SyntheticShape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("empty commit id")]
    EmptyId,
    #[error("empty file list in commit {commit}")]
    EmptyFileList { commit: String },
    #[error("invalid path {path:?}: {reason}")]
    InvalidPath { path: String, reason: &'static str },
    #[error("duplicate path {path:?} in commit {commit}")]
    DuplicatePath { commit: String, path: String },
    #[error("duplicate commit id {0}")]
    DuplicateCommitId(String),
    #[error("unknown bad commit ids: {}", .0.join(", "))]
    UnknownBadIds(Vec<String>),
    #[error("infeasible synthetic shape: {0}")]
    InfeasibleShape(&'static str),
}

/// One version-control commit set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommitSet {
    id: String,
    timestamp: Timestamp,
    author: String,
    message: String,
    files: Vec<String>,
}

impl CommitSet {
    /// Validates the id and normalizes every touched path. File order is
    /// kept; a path that repeats after normalization is an error.
    pub fn new<I, S>(
        id: impl Into<String>,
        timestamp: Timestamp,
        author: impl Into<String>,
        message: impl Into<String>,
        files: I,
    ) -> Result<Self, IngestError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let id = id.into();
        if id.is_empty() {
            return Err(IngestError::EmptyId);
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::new();
        for raw in files {
            let p = normalize_path(raw.as_ref())?;
            if !seen.insert(p.clone()) {
                return Err(IngestError::DuplicatePath {
                    commit: id,
                    path: p,
                });
            }
            normalized.push(p);
        }
        if normalized.is_empty() {
            return Err(IngestError::EmptyFileList { commit: id });
        }
        Ok(CommitSet {
            id,
            timestamp,
            author: author.into(),
            message: message.into(),
            files: normalized,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn timestamp(&self) -> Timestamp {
        self.timestamp
    }

    pub fn author(&self) -> &str {
        &self.author
    }

    pub fn message(&self) -> &str {
        &self.message
    }

    pub fn files(&self) -> &[String] {
        &self.files
    }
}

/// Strictness of [`build_dataset`] towards bad ids that match no commit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    #[default]
    Strict,
    /// Unknown bad ids are dropped and reported as warnings.
    Lenient,
}

/// Commit history joined with the bad-commit verdicts. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    commits: Vec<CommitSet>,
    bad_ids: BTreeSet<String>,
    index: BTreeMap<String, usize>,
    paths: Vec<String>,
}

impl Dataset {
    /// Commits ordered by `(timestamp, id)`.
    pub fn commits(&self) -> &[CommitSet] {
        &self.commits
    }

    pub fn bad_ids(&self) -> &BTreeSet<String> {
        &self.bad_ids
    }

    pub fn is_bad(&self, id: &str) -> bool {
        self.bad_ids.contains(id)
    }

    pub fn commit(&self, id: &str) -> Option<&CommitSet> {
        self.index.get(id).map(|&i| &self.commits[i])
    }

    /// Every path touched by at least one commit, sorted.
    pub fn paths(&self) -> &[String] {
        &self.paths
    }

    pub fn contains_path(&self, path: &str) -> bool {
        self.paths
            .binary_search_by(|p| p.as_str().cmp(path))
            .is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.commits.is_empty()
    }
}

/// Joins parsed commits with bad ids.
///
/// Returns the dataset plus the bad ids that were dropped in lenient mode
/// (always empty in strict mode).
pub fn build_dataset(
    mut commits: Vec<CommitSet>,
    bad_ids: BTreeSet<String>,
    validation: Validation,
) -> Result<(Dataset, Vec<String>), IngestError> {
    commits.sort_by(|a, b| (a.timestamp, &a.id).cmp(&(b.timestamp, &b.id)));
    let mut index = BTreeMap::new();
    for (i, c) in commits.iter().enumerate() {
        if index.insert(c.id.clone(), i).is_some() {
            return Err(IngestError::DuplicateCommitId(c.id.clone()));
        }
    }
    let (known, unknown): (BTreeSet<String>, Vec<String>) = {
        let mut known = BTreeSet::new();
        let mut unknown = Vec::new();
        for id in bad_ids {
            if index.contains_key(&id) {
                known.insert(id);
            } else {
                unknown.push(id);
            }
        }
        (known, unknown)
    };
    if validation == Validation::Strict && !unknown.is_empty() {
        return Err(IngestError::UnknownBadIds(unknown));
    }
    let paths: BTreeSet<&String> = commits.iter().flat_map(|c| c.files.iter()).collect();
    let paths = paths.into_iter().cloned().collect();
    Ok((
        Dataset {
            commits,
            bad_ids: known,
            index,
            paths,
        },
        unknown,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cs(id: &str, ts: i64, files: &[&str]) -> CommitSet {
        CommitSet::new(id, Timestamp::from_unix(ts), "", "", files.iter().copied()).unwrap()
    }

    fn ids(list: &[&str]) -> BTreeSet<String> {
        list.iter().map(|s| String::from(*s)).collect()
    }

    #[test]
    fn commit_set_validation() {
        assert_eq!(
            CommitSet::new("", Timestamp::from_unix(0), "", "", ["a"]),
            Err(IngestError::EmptyId)
        );
        assert!(matches!(
            CommitSet::new("c", Timestamp::from_unix(0), "", "", Vec::<&str>::new()),
            Err(IngestError::EmptyFileList { .. })
        ));
        assert!(matches!(
            CommitSet::new("c", Timestamp::from_unix(0), "", "", ["a/b", "a//b"]),
            Err(IngestError::DuplicatePath { .. })
        ));
        assert_eq!(cs("c", 0, &["a//b.v"]).files(), ["a/b.v"]);
    }

    #[test]
    fn one_bad_commit() {
        let (ds, warn) = build_dataset(
            vec![cs("c1", 1, &["a"]), cs("c2", 2, &["b"])],
            ids(&["c2"]),
            Validation::Strict,
        )
        .unwrap();
        assert!(warn.is_empty());
        assert_eq!(ds.bad_ids().len(), 1);
        assert!(ds.is_bad("c2"));
        assert!(!ds.is_bad("c1"));
    }

    #[test]
    fn unknown_bad_id_strict_and_lenient() {
        let commits = vec![cs("c1", 1, &["a"])];
        let err = build_dataset(commits.clone(), ids(&["ghost"]), Validation::Strict).unwrap_err();
        assert_eq!(err, IngestError::UnknownBadIds(vec![String::from("ghost")]));
        assert!(err.to_string().contains("ghost"));
        let (ds, warn) = build_dataset(commits, ids(&["ghost"]), Validation::Lenient).unwrap();
        assert!(ds.bad_ids().is_empty());
        assert_eq!(warn, ["ghost"]);
    }

    #[test]
    fn duplicate_ids_rejected() {
        let err = build_dataset(
            vec![cs("c1", 1, &["a"]), cs("c1", 5, &["b"])],
            ids(&[]),
            Validation::Strict,
        )
        .unwrap_err();
        assert_eq!(err, IngestError::DuplicateCommitId("c1".into()));
    }

    #[test]
    fn sorted_by_time_then_id() {
        let (ds, _) = build_dataset(
            vec![cs("z", 5, &["a"]), cs("b", 3, &["a"]), cs("a", 5, &["a"])],
            ids(&[]),
            Validation::Strict,
        )
        .unwrap();
        let order: Vec<&str> = ds.commits().iter().map(|c| c.id()).collect();
        assert_eq!(order, ["b", "a", "z"]);
        assert_eq!(ds.commit("z").unwrap().timestamp(), Timestamp::from_unix(5));
        assert_eq!(ds.paths(), ["a"]);
    }

    proptest::proptest! {
        #[test]
        fn order_independent_of_input(perm in proptest::collection::vec((0i64..4, 0u32..1000), 1..30)) {
            let mut commits = Vec::new();
            for (i, (ts, _)) in perm.iter().enumerate() {
                commits.push(cs(&alloc::format!("c{i:02}"), *ts, &["f"]));
            }
            let (sorted, _) = build_dataset(commits.clone(), ids(&[]), Validation::Strict).unwrap();
            let mut keyed: Vec<(u32, CommitSet)> = perm.iter().map(|p| p.1).zip(commits).collect();
            keyed.sort_by_key(|k| k.0);
            let shuffled = keyed.into_iter().map(|k| k.1).collect();
            let (again, _) = build_dataset(shuffled, ids(&[]), Validation::Strict).unwrap();
            proptest::prop_assert_eq!(&sorted, &again);
            for w in sorted.commits().windows(2) {
                proptest::prop_assert!((w[0].timestamp(), w[0].id()) < (w[1].timestamp(), w[1].id()));
            }
        }
    }
}

//! Filtering, the folder hierarchy, and per-file / per-folder badness.
//!
//! Counts are exact integers; a badness ratio is kept as the integer pair
//! and only converted to a float at presentation boundaries.

mod filter;
mod tree;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use core::cmp::Ordering;

pub use filter::{apply_filter, ActiveCommits, FilterError, FilterState};
pub use tree::{build_tree, FolderNode, FolderTree};

/// Fraction of commit sets that were bad. Only exists for a non-zero total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Badness {
    bad: u64,
    total: u64,
}

impl Badness {
    /// `None` when `total` is zero; panics if `bad > total`.
    pub fn new(bad: u64, total: u64) -> Option<Self> {
        assert!(bad <= total, "bad count {bad} exceeds total {total}");
        (total > 0).then_some(Badness { bad, total })
    }

    pub fn bad(self) -> u64 {
        self.bad
    }

    pub fn total(self) -> u64 {
        self.total
    }

    pub fn to_f64(self) -> f64 {
        self.bad as f64 / self.total as f64
    }
}

impl Ord for Badness {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.bad as u128 * other.total as u128;
        let rhs = other.bad as u128 * self.total as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Badness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileMetrics {
    pub path: String,
    pub commit_count: u64,
    pub bad_commit_count: u64,
}

impl FileMetrics {
    pub fn badness(&self) -> Option<Badness> {
        Badness::new(self.bad_commit_count, self.commit_count)
    }
}

/// Counts of distinct active commit sets touching any file in a folder's
/// subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FolderMetrics {
    pub path: String,
    pub commit_count: u64,
    pub bad_commit_count: u64,
}

impl FolderMetrics {
    pub fn badness(&self) -> Option<Badness> {
        Badness::new(self.bad_commit_count, self.commit_count)
    }
}

/// Per-file commit and bad-commit counts over the active commits.
///
/// Every path of the underlying dataset is present, including those with no
/// active commit.
pub fn compute_file_metrics(active: &ActiveCommits<'_>) -> BTreeMap<String, FileMetrics> {
    let mut out: BTreeMap<String, FileMetrics> = active
        .dataset()
        .paths()
        .iter()
        .map(|p| {
            (
                p.clone(),
                FileMetrics {
                    path: p.clone(),
                    commit_count: 0,
                    bad_commit_count: 0,
                },
            )
        })
        .collect();
    for c in active.iter() {
        let bad = active.is_bad(c);
        for f in c.files() {
            if let Some(m) = out.get_mut(f) {
                m.commit_count += 1;
                m.bad_commit_count += u64::from(bad);
            }
        }
    }
    out
}

/// Per-folder counts for every folder of `tree`, root included. A commit set
/// touching several files below one folder counts once for that folder.
pub fn compute_folder_metrics(
    active: &ActiveCommits<'_>,
    tree: &FolderTree,
) -> BTreeMap<String, FolderMetrics> {
    let n = tree.folder_count();
    let mut commits = vec![0u64; n];
    let mut bad = vec![0u64; n];
    // Last commit ordinal that reached each folder; usize::MAX = never.
    let mut stamp = vec![usize::MAX; n];
    for (ordinal, c) in active.iter().enumerate() {
        let is_bad = active.is_bad(c);
        for f in c.files() {
            let Some(folder) = tree.folder_of(f) else {
                continue;
            };
            for i in tree.ancestors(folder) {
                if stamp[i] == ordinal {
                    break;
                }
                stamp[i] = ordinal;
                commits[i] += 1;
                bad[i] += u64::from(is_bad);
            }
        }
    }
    tree.nodes()
        .iter()
        .enumerate()
        .map(|(i, node)| {
            (
                node.path.clone(),
                FolderMetrics {
                    path: node.path.clone(),
                    commit_count: commits[i],
                    bad_commit_count: bad[i],
                },
            )
        })
        .collect()
}

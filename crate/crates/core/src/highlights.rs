//! Searchlight queries: error-prone folders and potential coverage holes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::layout::Rgb;
use crate::metrics::{FolderMetrics, FolderTree};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HighlightError {
    #[error("min_commits must be at least 1")]
    MinCommits,
    #[error("threshold {0} outside [0, 1]")]
    Threshold(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HighlightKind {
    /// Many commits and a badness ratio at or above the threshold.
    ErrorProne,
    /// Many commits and a badness ratio at or below the threshold.
    CoverageHole,
}

impl HighlightKind {
    pub fn beam_color(self) -> Rgb {
        match self {
            HighlightKind::ErrorProne => Rgb::RED,
            HighlightKind::CoverageHole => Rgb::YELLOW,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HighlightKind::ErrorProne => "error_prone",
            HighlightKind::CoverageHole => "coverage_hole",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "error_prone" => Some(HighlightKind::ErrorProne),
            "coverage_hole" => Some(HighlightKind::CoverageHole),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HighlightQuery {
    kind: HighlightKind,
    min_commits: u64,
    threshold: f64,
}

impl HighlightQuery {
    pub fn new(
        kind: HighlightKind,
        min_commits: u64,
        threshold: f64,
    ) -> Result<Self, HighlightError> {
        if min_commits < 1 {
            return Err(HighlightError::MinCommits);
        }
        if !(0.0..=1.0).contains(&threshold) {
            return Err(HighlightError::Threshold(threshold));
        }
        Ok(HighlightQuery {
            kind,
            min_commits,
            threshold,
        })
    }

    pub fn kind(&self) -> HighlightKind {
        self.kind
    }

    pub fn min_commits(&self) -> u64 {
        self.min_commits
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Inclusive threshold test; an undefined ratio never matches.
    pub fn matches(&self, m: &FolderMetrics) -> bool {
        if m.commit_count < self.min_commits {
            return false;
        }
        let Some(b) = m.badness() else { return false };
        let ratio = b.to_f64();
        match self.kind {
            HighlightKind::ErrorProne => ratio >= self.threshold,
            HighlightKind::CoverageHole => ratio <= self.threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HighlightResult {
    pub path: String,
    pub metrics: FolderMetrics,
    pub beam_color: Rgb,
}

/// Matching folders that have no matching folder below them.
///
/// Error-prone results are ordered by descending badness, coverage holes by
/// ascending badness; ties go by path. Folders missing from
/// `folder_metrics` never match.
pub fn find_highlights(
    folder_metrics: &BTreeMap<String, FolderMetrics>,
    tree: &FolderTree,
    query: &HighlightQuery,
) -> Vec<HighlightResult> {
    let n = tree.folder_count();
    let matching: Vec<bool> = tree
        .nodes()
        .iter()
        .map(|node| {
            folder_metrics
                .get(&node.path)
                .is_some_and(|m| query.matches(m))
        })
        .collect();
    // Whether any proper descendant matches, filled bottom-up.
    let mut below = vec![false; n];
    let order = tree.preorder();
    for &i in order.iter().rev() {
        if let Some(p) = tree.node(i).parent {
            below[p] |= below[i] || matching[i];
        }
    }
    let mut out: Vec<HighlightResult> = order
        .into_iter()
        .filter(|&i| matching[i] && !below[i])
        .map(|i| {
            let path = &tree.node(i).path;
            HighlightResult {
                path: path.clone(),
                metrics: folder_metrics[path].clone(),
                beam_color: query.kind.beam_color(),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        let (ra, rb) = (a.metrics.badness(), b.metrics.badness());
        let by_ratio = match query.kind {
            HighlightKind::ErrorProne => rb.cmp(&ra),
            HighlightKind::CoverageHole => ra.cmp(&rb),
        };
        match by_ratio {
            Ordering::Equal => a.path.cmp(&b.path),
            o => o,
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(path: &str, commits: u64, bad: u64) -> (String, FolderMetrics) {
        (
            path.into(),
            FolderMetrics {
                path: path.into(),
                commit_count: commits,
                bad_commit_count: bad,
            },
        )
    }

    fn fixture() -> (FolderTree, BTreeMap<String, FolderMetrics>) {
        let tree = FolderTree::from_paths(["a/x.v", "b/y.v"]);
        let metrics = [fm("", 20, 7), fm("a", 10, 6), fm("b", 10, 1)]
            .into_iter()
            .collect();
        (tree, metrics)
    }

    fn paths(r: &[HighlightResult]) -> Vec<&str> {
        r.iter().map(|h| h.path.as_str()).collect()
    }

    #[test]
    fn error_prone_fixture() {
        let (tree, m) = fixture();
        let q = HighlightQuery::new(HighlightKind::ErrorProne, 5, 0.5).unwrap();
        let r = find_highlights(&m, &tree, &q);
        assert_eq!(paths(&r), ["a"]);
        assert_eq!(r[0].beam_color, Rgb::RED);
    }

    #[test]
    fn coverage_hole_fixture() {
        let (tree, m) = fixture();
        let q = HighlightQuery::new(HighlightKind::CoverageHole, 5, 0.2).unwrap();
        let r = find_highlights(&m, &tree, &q);
        assert_eq!(paths(&r), ["b"]);
        assert_eq!(r[0].beam_color, Rgb::YELLOW);
    }

    #[test]
    fn deepest_match_wins() {
        let tree = FolderTree::from_paths(["a/x.v"]);
        let m = [fm("", 10, 6), fm("a", 10, 7)].into_iter().collect();
        let q = HighlightQuery::new(HighlightKind::ErrorProne, 1, 0.5).unwrap();
        assert_eq!(paths(&find_highlights(&m, &tree, &q)), ["a"]);
    }

    #[test]
    fn min_commits_unmet() {
        let (tree, m) = fixture();
        let q = HighlightQuery::new(HighlightKind::ErrorProne, 21, 0.0).unwrap();
        assert!(find_highlights(&m, &tree, &q).is_empty());
    }

    #[test]
    fn thresholds_inclusive_and_undefined_never_matches() {
        let q = HighlightQuery::new(HighlightKind::ErrorProne, 1, 0.5).unwrap();
        assert!(q.matches(&fm("", 10, 5).1));
        let q = HighlightQuery::new(HighlightKind::CoverageHole, 1, 0.3).unwrap();
        assert!(q.matches(&fm("", 10, 3).1));
        let untouched = fm("", 0, 0).1;
        for kind in [HighlightKind::ErrorProne, HighlightKind::CoverageHole] {
            for thr in [0.0, 1.0] {
                assert!(!HighlightQuery::new(kind, 1, thr)
                    .unwrap()
                    .matches(&untouched));
            }
        }
    }

    #[test]
    fn invalid_queries() {
        assert_eq!(
            HighlightQuery::new(HighlightKind::ErrorProne, 0, 0.5),
            Err(HighlightError::MinCommits)
        );
        assert!(HighlightQuery::new(HighlightKind::ErrorProne, 1, 1.5).is_err());
        assert!(HighlightQuery::new(HighlightKind::CoverageHole, 1, f64::NAN).is_err());
    }

    #[test]
    fn ordering_by_ratio_then_path() {
        let tree = FolderTree::from_paths(["a/x", "b/x", "c/x"]);
        let m = [fm("", 30, 0), fm("a", 10, 6), fm("b", 10, 9), fm("c", 5, 3)]
            .into_iter()
            .collect();
        let q = HighlightQuery::new(HighlightKind::ErrorProne, 1, 0.5).unwrap();
        assert_eq!(paths(&find_highlights(&m, &tree, &q)), ["b", "a", "c"]);
        let q = HighlightQuery::new(HighlightKind::CoverageHole, 1, 1.0).unwrap();
        assert_eq!(paths(&find_highlights(&m, &tree, &q)), ["a", "c", "b"]);
    }

    #[test]
    fn kind_names() {
        for k in [HighlightKind::ErrorProne, HighlightKind::CoverageHole] {
            assert_eq!(HighlightKind::parse(k.as_str()), Some(k));
        }
        assert_eq!(HighlightKind::parse("both"), None);
    }
}

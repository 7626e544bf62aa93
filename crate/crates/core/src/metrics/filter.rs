use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{CommitSet, Dataset, Timestamp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FilterError {
    #[error("time window start {from} is not before its end {to}")]
    EmptyWindow { from: Timestamp, to: Timestamp },
}

/// Active filter: an optional half-open time window `[from, to)` (either
/// bound may be open) and commit ids to hide. Unknown ids are inert.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FilterState {
    from: Option<Timestamp>,
    to: Option<Timestamp>,
    excluded: BTreeSet<String>,
}

impl FilterState {
    pub fn new(
        from: Option<Timestamp>,
        to: Option<Timestamp>,
        excluded: impl IntoIterator<Item = String>,
    ) -> Result<Self, FilterError> {
        if let (Some(from), Some(to)) = (from, to) {
            if from >= to {
                return Err(FilterError::EmptyWindow { from, to });
            }
        }
        Ok(FilterState {
            from,
            to,
            excluded: excluded.into_iter().collect(),
        })
    }

    pub fn from(&self) -> Option<Timestamp> {
        self.from
    }

    pub fn to(&self) -> Option<Timestamp> {
        self.to
    }

    pub fn excluded(&self) -> &BTreeSet<String> {
        &self.excluded
    }

    pub fn is_empty(&self) -> bool {
        self.from.is_none() && self.to.is_none() && self.excluded.is_empty()
    }

    /// Same filter with `ids` hidden as well.
    pub fn excluding(mut self, ids: impl IntoIterator<Item = String>) -> Self {
        self.excluded.extend(ids);
        self
    }

    pub fn admits(&self, commit: &CommitSet) -> bool {
        let ts = commit.timestamp();
        self.from.is_none_or(|from| from <= ts)
            && self.to.is_none_or(|to| ts < to)
            && !self.excluded.contains(commit.id())
    }
}

/// Commit sets that pass a filter, in dataset order.
#[derive(Debug, Clone)]
pub struct ActiveCommits<'a> {
    dataset: &'a Dataset,
    commits: Vec<&'a CommitSet>,
}

impl<'a> ActiveCommits<'a> {
    pub fn dataset(&self) -> &'a Dataset {
        self.dataset
    }

    pub fn iter(&self) -> impl Iterator<Item = &'a CommitSet> + '_ {
        self.commits.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.commits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.commits.is_empty()
    }

    pub fn is_bad(&self, commit: &CommitSet) -> bool {
        self.dataset.is_bad(commit.id())
    }
}

/// Filter validity is enforced by [`FilterState::new`], so this cannot fail.
pub fn apply_filter<'a>(dataset: &'a Dataset, filter: &FilterState) -> ActiveCommits<'a> {
    ActiveCommits {
        dataset,
        commits: dataset
            .commits()
            .iter()
            .filter(|c| filter.admits(c))
            .collect(),
    }
}

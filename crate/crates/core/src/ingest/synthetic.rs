use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_dataset, CommitSet, Dataset, IngestError, Validation};
use crate::Timestamp;

/// 2016-04-01T00:00:00Z.
const HISTORY_START: i64 = 1_459_468_800;
const HISTORY_SECS: i64 = 183 * 86_400;

const FOLDER_NAMES: [&str; 12] = [
    "rtl", "verif", "ip", "top", "lib", "tb", "core", "dma", "mem", "bus", "dbg", "phy",
];
const FILE_STEMS: [&str; 10] = [
    "alu", "fifo", "ctrl", "arb", "decode", "regs", "if", "sync", "cache", "pkg",
];

/// Requested size of a synthetic project.
///
/// `bad_files` and `committers` are optional; when absent they are derived
/// from the other counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntheticShape {
    pub commits: usize,
    pub files: usize,
    pub bad: usize,
    pub depth: usize,
    pub fanout: usize,
    pub bad_files: Option<usize>,
    pub committers: Option<usize>,
}

impl SyntheticShape {
    pub fn new(commits: usize, files: usize, bad: usize, depth: usize, fanout: usize) -> Self {
        SyntheticShape {
            commits,
            files,
            bad,
            depth,
            fanout,
            bad_files: None,
            committers: None,
        }
    }

    /// The six-month ASIC project: 1,544 commit sets, 68 bad, 7,099 files of
    /// which 2,537 are bad, 95 committers.
    pub fn reference_project() -> Self {
        SyntheticShape {
            bad_files: Some(2537),
            committers: Some(95),
            ..SyntheticShape::new(1544, 7099, 68, 5, 6)
        }
    }

    fn resolved_bad_files(&self) -> usize {
        self.bad_files.unwrap_or(if self.bad == 0 {
            0
        } else {
            (self.files * 2537 / 7099).clamp(1, self.files.max(1))
        })
    }

    fn resolved_committers(&self) -> usize {
        self.committers.unwrap_or(self.commits.min(95))
    }

    fn check(&self) -> Result<(), IngestError> {
        let bad_files = self.resolved_bad_files();
        let good_commits = self.commits.saturating_sub(self.bad);
        if self.bad > self.commits {
            return Err(IngestError::InfeasibleShape(
                "more bad commits than commits",
            ));
        }
        if self.commits > 0 && self.files == 0 {
            return Err(IngestError::InfeasibleShape(
                "commits need at least one file",
            ));
        }
        if self.files > 0 && self.commits == 0 {
            return Err(IngestError::InfeasibleShape(
                "files need at least one commit",
            ));
        }
        if self.depth > 0 && self.fanout == 0 {
            return Err(IngestError::InfeasibleShape(
                "fanout must be positive when depth > 0",
            ));
        }
        if bad_files > self.files {
            return Err(IngestError::InfeasibleShape("more bad files than files"));
        }
        if (self.bad == 0) != (bad_files == 0) {
            return Err(IngestError::InfeasibleShape(
                "bad files exist exactly when bad commits exist",
            ));
        }
        if self.files > bad_files && good_commits == 0 {
            return Err(IngestError::InfeasibleShape(
                "files outside bad commits need at least one good commit",
            ));
        }
        if self.resolved_committers() > self.commits {
            return Err(IngestError::InfeasibleShape("more committers than commits"));
        }
        Ok(())
    }
}

/// Seeded synthetic project whose summary reproduces the requested counts
/// exactly.
///
/// Files sit in leaf folders exactly `depth` levels deep, each folder level
/// having at most `fanout` children. Bad commits only touch bad files, and
/// every file is touched at least once, so commit, bad-commit, file and
/// bad-file counts are all met by construction.
pub fn generate_synthetic(shape: SyntheticShape, seed: u64) -> Result<Dataset, IngestError> {
    shape.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let files = synth_paths(&shape, &mut rng);
    let n_bad_files = shape.resolved_bad_files();

    let mut order: Vec<usize> = (0..files.len()).collect();
    order.shuffle(&mut rng);
    let (bad_files, good_files) = order.split_at(n_bad_files);

    let bad_slots: BTreeSet<usize> = index::sample(&mut rng, shape.commits, shape.bad)
        .into_iter()
        .collect();
    let n_good = shape.commits - shape.bad;

    let mut bad_commits: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); shape.bad];
    for (i, &f) in bad_files.iter().enumerate() {
        bad_commits[i % shape.bad].insert(f);
    }
    for touched in bad_commits.iter_mut() {
        if touched.is_empty() {
            touched.insert(bad_files[rng.gen_range(0..bad_files.len())]);
        }
    }

    let mut good_commits: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n_good];
    for (i, &f) in good_files.iter().enumerate() {
        good_commits[i % n_good].insert(f);
    }
    let merge_size = files.len().min(200);
    for touched in good_commits.iter_mut() {
        let extra = if n_good >= 50 && rng.gen_ratio(1, 100) {
            rng.gen_range(merge_size / 4..=merge_size)
        } else {
            let u: f64 = rng.gen();
            (u * u * u * 6.0) as usize
        };
        // Extras may hit bad files; that never changes bad-file membership.
        for _ in 0..extra {
            touched.insert(rng.gen_range(0..files.len()));
        }
        if touched.is_empty() {
            touched.insert(rng.gen_range(0..files.len()));
        }
    }

    let mut times: Vec<i64> = (0..shape.commits)
        .map(|_| HISTORY_START + rng.gen_range(0..HISTORY_SECS))
        .collect();
    times.sort_unstable();

    let committers = shape.resolved_committers();
    let mut author_of: Vec<usize> = (0..shape.commits)
        .map(|i| {
            if i < committers {
                i
            } else {
                rng.gen_range(0..committers.max(1))
            }
        })
        .collect();
    author_of.shuffle(&mut rng);

    let mut bad_iter = bad_commits.into_iter();
    let mut good_iter = good_commits.into_iter();
    let mut commits = Vec::with_capacity(shape.commits);
    let mut bad_ids = BTreeSet::new();
    for (slot, &ts) in times.iter().enumerate() {
        let id = format!("CL{}", 100_000 + slot);
        let is_bad = bad_slots.contains(&slot);
        let touched = if is_bad {
            bad_iter.next()
        } else {
            good_iter.next()
        }
        .expect("slot counts match commit kinds");
        let mut paths: Vec<&str> = touched.iter().map(|&f| files[f].as_str()).collect();
        paths.sort_unstable();
        let author = if committers == 0 {
            String::new()
        } else {
            format!("eng{:03}", author_of[slot])
        };
        let message = format!("{} {}", if is_bad { "rework" } else { "update" }, paths[0]);
        if is_bad {
            bad_ids.insert(id.clone());
        }
        commits.push(CommitSet::new(
            id,
            Timestamp::from_unix(ts),
            author,
            message,
            paths,
        )?);
    }
    build_dataset(commits, bad_ids, Validation::Strict).map(|(ds, _)| ds)
}

fn folder_name(index: usize) -> String {
    match FOLDER_NAMES.get(index) {
        Some(n) => String::from(*n),
        None => format!("blk{index}"),
    }
}

/// Distinct file paths, files assigned to a random subset of leaf folders
/// with a skew towards a few crowded folders.
fn synth_paths(shape: &SyntheticShape, rng: &mut ChaCha8Rng) -> Vec<String> {
    if shape.files == 0 {
        return Vec::new();
    }
    let leaves = (0..shape.depth).fold(1usize, |acc, _| acc.saturating_mul(shape.fanout));
    let used = leaves.min(shape.files.div_ceil(8)).max(1);
    let mut chosen: Vec<usize> = if leaves <= 1 << 20 {
        index::sample(rng, leaves, used).into_vec()
    } else {
        let mut set = BTreeSet::new();
        while set.len() < used {
            set.insert(rng.gen_range(0..leaves));
        }
        set.into_iter().collect()
    };
    chosen.sort_unstable();
    let leaf_paths: Vec<String> = chosen
        .iter()
        .map(|&leaf| {
            let mut rem = leaf;
            let mut segs = Vec::with_capacity(shape.depth);
            for _ in 0..shape.depth {
                segs.push(folder_name(rem % shape.fanout));
                rem /= shape.fanout;
            }
            segs.reverse();
            segs.join("/")
        })
        .collect();
    (0..shape.files)
        .map(|i| {
            let u: f64 = rng.gen();
            let leaf = &leaf_paths[((u * u) * used as f64) as usize % used];
            let stem = FILE_STEMS[rng.gen_range(0..FILE_STEMS.len())];
            let ext = if rng.gen_bool(0.7) { "sv" } else { "v" };
            if leaf.is_empty() {
                format!("{stem}_{i:05}.{ext}")
            } else {
                format!("{leaf}/{stem}_{i:05}.{ext}")
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summarize;

    #[test]
    fn reference_shape_counts_exact() {
        let ds = generate_synthetic(SyntheticShape::reference_project(), 42).unwrap();
        let s = summarize(&ds);
        assert_eq!(s.commit_set_count, 1544);
        assert_eq!(s.bad_commit_count, 68);
        assert_eq!(s.distinct_file_count, 7099);
        assert_eq!(s.bad_file_count, 2537);
        assert_eq!(s.committer_count, 95);
        for p in ds.paths() {
            assert_eq!(p.matches('/').count(), 5, "{p}");
        }
    }

    #[test]
    fn plain_shape_counts_exact() {
        let ds = generate_synthetic(SyntheticShape::new(1544, 7099, 68, 5, 6), 42).unwrap();
        let s = summarize(&ds);
        assert_eq!(
            (
                s.commit_set_count,
                s.bad_commit_count,
                s.distinct_file_count
            ),
            (1544, 68, 7099)
        );
    }

    #[test]
    fn minimal_shape() {
        let ds = generate_synthetic(SyntheticShape::new(1, 1, 0, 1, 1), 0).unwrap();
        assert_eq!(ds.commits().len(), 1);
        assert_eq!(ds.commits()[0].files().len(), 1);
        assert_eq!(ds.paths().len(), 1);
        assert!(ds.bad_ids().is_empty());
    }

    #[test]
    fn deterministic_per_seed() {
        let shape = SyntheticShape::new(200, 300, 9, 3, 4);
        assert_eq!(
            generate_synthetic(shape, 7).unwrap(),
            generate_synthetic(shape, 7).unwrap()
        );
        assert_ne!(
            generate_synthetic(shape, 7).unwrap(),
            generate_synthetic(shape, 8).unwrap()
        );
    }

    #[test]
    fn infeasible_shapes() {
        for shape in [
            SyntheticShape::new(3, 0, 0, 1, 1),
            SyntheticShape::new(0, 3, 0, 1, 1),
            SyntheticShape::new(2, 3, 3, 1, 1),
            SyntheticShape::new(2, 3, 0, 2, 0),
            SyntheticShape::new(2, 5, 2, 1, 2),
            SyntheticShape {
                bad_files: Some(9),
                ..SyntheticShape::new(4, 5, 1, 1, 2)
            },
            SyntheticShape {
                committers: Some(9),
                ..SyntheticShape::new(4, 5, 1, 1, 2)
            },
        ] {
            assert!(
                matches!(
                    generate_synthetic(shape, 1),
                    Err(IngestError::InfeasibleShape(_))
                ),
                "{shape:?}"
            );
        }
        assert!(generate_synthetic(SyntheticShape::new(0, 0, 0, 0, 0), 1)
            .unwrap()
            .is_empty());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn counts_hold_for_feasible_shapes(
            commits in 1usize..60, files in 1usize..80, bad_frac in 0usize..=100,
            depth in 0usize..5, fanout in 1usize..5, seed: u64,
        ) {
            let bad = commits * bad_frac / 100;
            let mut shape = SyntheticShape::new(commits, files, bad, depth, fanout);
            if bad == commits {
                shape.bad_files = Some(files);
            }
            if shape.check().is_err() {
                return Ok(());
            }
            let ds = generate_synthetic(shape, seed).unwrap();
            let s = summarize(&ds);
            proptest::prop_assert_eq!(s.commit_set_count, commits);
            proptest::prop_assert_eq!(s.bad_commit_count, bad);
            proptest::prop_assert_eq!(s.distinct_file_count, files);
            proptest::prop_assert_eq!(s.bad_file_count, shape.resolved_bad_files());
            for p in ds.paths() {
                proptest::prop_assert_eq!(p.matches('/').count(), depth);
            }
        }
    }
}

//! Fixtures, random inputs and brute-force oracles shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use dvcity::{load_dataset, InputConfig, Snapshot};
use dvcity_core::layout::{BLOCK_PADDING, PLINTH_HEIGHT};
use dvcity_core::{
    build_dataset, Block, CityPlan, CommitSet, Dataset, FilterState, FolderMetrics, HighlightKind,
    HighlightQuery, Rect, Timestamp, Validation,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn fixture_snapshot(name: &str) -> Snapshot {
    let dir = fixture(name);
    let (dataset, _) = load_dataset(&InputConfig {
        commit_log: dir.join("commits.jsonl"),
        bad_commits: dir.join("bad.txt"),
        scm_log: false,
        validation: Validation::Strict,
    })
    .expect("fixture loads");
    Snapshot::new(dataset)
}

// ---- random inputs ----

pub const BASE_TS: i64 = 1_475_280_000;

/// Up to `max_commits` commit sets over up to `max_files` files at most
/// `max_depth` folders deep.
pub fn random_dataset(
    rng: &mut ChaCha8Rng,
    max_commits: usize,
    max_files: usize,
    max_depth: usize,
) -> Dataset {
    let file_count = rng.gen_range(1..=max_files);
    let files: Vec<String> = (0..file_count)
        .map(|i| {
            let depth = rng.gen_range(0..=max_depth);
            let mut segs: Vec<String> = (0..depth)
                .map(|_| format!("d{}", rng.gen_range(0..3)))
                .collect();
            segs.push(format!("f{i}.sv"));
            segs.join("/")
        })
        .collect();
    let commit_count = rng.gen_range(1..=max_commits);
    let mut commits = Vec::with_capacity(commit_count);
    let mut bad = BTreeSet::new();
    for i in 0..commit_count {
        let k = rng.gen_range(1..=file_count.min(8));
        let touched: Vec<&String> = files.choose_multiple(rng, k).collect();
        let id = format!("c{i}");
        // Few distinct timestamps so windows land on ties.
        let ts = Timestamp::from_unix(BASE_TS + 3600 * rng.gen_range(0..20));
        if rng.gen_bool(0.3) {
            bad.insert(id.clone());
        }
        commits.push(
            CommitSet::new(id, ts, format!("u{}", rng.gen_range(0..4)), "m", touched).unwrap(),
        );
    }
    build_dataset(commits, bad, Validation::Strict).unwrap().0
}

pub fn random_filter(rng: &mut ChaCha8Rng, dataset: &Dataset) -> FilterState {
    let pick = |rng: &mut ChaCha8Rng| {
        rng.gen_bool(0.6)
            .then(|| Timestamp::from_unix(BASE_TS + 3600 * rng.gen_range(-1..22)))
    };
    let (mut from, mut to) = (pick(rng), pick(rng));
    if let (Some(a), Some(b)) = (from, to) {
        if a >= b {
            (from, to) = (Some(b), Some(Timestamp::from_unix(a.unix() + 1)));
        }
    }
    let mut excluded: Vec<String> = dataset
        .commits()
        .iter()
        .filter(|_| rng.gen_bool(0.2))
        .map(|c| c.id().to_string())
        .collect();
    if rng.gen_bool(0.2) {
        excluded.push("no-such-commit".into());
    }
    FilterState::new(from, to, excluded).unwrap()
}

pub fn random_paths(rng: &mut ChaCha8Rng, max_depth: usize, max_files: usize) -> Vec<String> {
    let n = rng.gen_range(1..=max_files);
    (0..n)
        .map(|i| {
            let depth = rng.gen_range(0..=max_depth);
            let mut segs: Vec<String> = (0..depth)
                .map(|_| format!("d{}", rng.gen_range(0..3)))
                .collect();
            segs.push(format!("f{i}.v"));
            segs.join("/")
        })
        .collect()
}

// ---- metric oracle ----

fn oracle_active(c: &CommitSet, filter: &FilterState) -> bool {
    let t = c.timestamp();
    filter.from().is_none_or(|f| t >= f)
        && filter.to().is_none_or(|e| t < e)
        && !filter.excluded().contains(c.id())
}

/// `(commits, bad_commits)` per file by scanning every (file, commit) pair.
pub fn oracle_file_counts(dataset: &Dataset, filter: &FilterState) -> BTreeMap<String, (u64, u64)> {
    let mut out = BTreeMap::new();
    for c in dataset.commits() {
        for f in c.files() {
            out.insert(f.clone(), (0, 0));
        }
    }
    for (path, counts) in out.iter_mut() {
        for c in dataset.commits() {
            if oracle_active(c, filter) && c.files().iter().any(|f| f == path) {
                counts.0 += 1;
                if dataset.bad_ids().contains(c.id()) {
                    counts.1 += 1;
                }
            }
        }
    }
    out
}

pub fn folder_prefixes(paths: impl IntoIterator<Item = impl AsRef<str>>) -> BTreeSet<String> {
    let mut out = BTreeSet::from([String::new()]);
    for p in paths {
        let p = p.as_ref();
        for (i, ch) in p.char_indices() {
            if ch == '/' {
                out.insert(p[..i].to_string());
            }
        }
    }
    out
}

fn under(folder: &str, file: &str) -> bool {
    folder.is_empty()
        || (file.len() > folder.len()
            && file.starts_with(folder)
            && file.as_bytes()[folder.len()] == b'/')
}

/// `(commits, bad_commits)` per folder: a commit counts once if any of its
/// files lies under the folder.
pub fn oracle_folder_counts(
    dataset: &Dataset,
    filter: &FilterState,
) -> BTreeMap<String, (u64, u64)> {
    let paths: Vec<&String> = dataset.commits().iter().flat_map(|c| c.files()).collect();
    let mut out = BTreeMap::new();
    for folder in folder_prefixes(&paths) {
        let mut counts = (0, 0);
        for c in dataset.commits() {
            if oracle_active(c, filter) && c.files().iter().any(|f| under(&folder, f)) {
                counts.0 += 1;
                if dataset.bad_ids().contains(c.id()) {
                    counts.1 += 1;
                }
            }
        }
        out.insert(folder, counts);
    }
    out
}

// ---- highlight oracle ----

pub fn random_query(rng: &mut ChaCha8Rng) -> HighlightQuery {
    let kind = if rng.gen_bool(0.5) {
        HighlightKind::ErrorProne
    } else {
        HighlightKind::CoverageHole
    };
    let threshold = match rng.gen_range(0..4) {
        0 => 0.0,
        1 => 1.0,
        2 => rng.gen_range(1..10) as f64 / 10.0,
        _ => rng.gen_range(0.0..1.0),
    };
    HighlightQuery::new(kind, rng.gen_range(1..8), threshold).unwrap()
}

/// Random counts for a random subset of `folders`, including zero totals.
pub fn random_folder_metrics(
    rng: &mut ChaCha8Rng,
    folders: &BTreeSet<String>,
) -> BTreeMap<String, FolderMetrics> {
    let mut out = BTreeMap::new();
    for path in folders {
        if rng.gen_bool(0.05) {
            continue;
        }
        let total = if rng.gen_bool(0.1) {
            0
        } else {
            rng.gen_range(0..12)
        };
        let bad = rng.gen_range(0..=total);
        let m = FolderMetrics {
            path: path.clone(),
            commit_count: total,
            bad_commit_count: bad,
        };
        out.insert(path.clone(), m);
    }
    out
}

fn oracle_matches(q: &HighlightQuery, m: &FolderMetrics) -> bool {
    if m.commit_count == 0 || m.commit_count < q.min_commits() {
        return false;
    }
    let ratio = m.bad_commit_count as f64 / m.commit_count as f64;
    match q.kind() {
        HighlightKind::ErrorProne => ratio >= q.threshold(),
        HighlightKind::CoverageHole => ratio <= q.threshold(),
    }
}

/// Matching folders minus those with a matching proper descendant.
pub fn oracle_highlights(
    metrics: &BTreeMap<String, FolderMetrics>,
    q: &HighlightQuery,
) -> BTreeSet<String> {
    let matching: Vec<&String> = metrics
        .values()
        .filter(|m| oracle_matches(q, m))
        .map(|m| &m.path)
        .collect();
    matching
        .iter()
        .filter(|a| !matching.iter().any(|b| is_proper_ancestor(a, b)))
        .map(|s| s.to_string())
        .collect()
}

pub fn is_proper_ancestor(a: &str, b: &str) -> bool {
    a != b && under(a, b)
}

// ---- geometry checker ----

const EPS: f64 = 1e-9;

fn interiors_overlap(a: &Rect, b: &Rect) -> bool {
    a.x < b.right() - EPS && b.x < a.right() - EPS && a.y < b.top() - EPS && b.y < a.top() - EPS
}

fn contains(outer: &Rect, inner: &Rect) -> bool {
    inner.x >= outer.x - EPS
        && inner.y >= outer.y - EPS
        && inner.right() <= outer.right() + EPS
        && inner.top() <= outer.top() + EPS
}

fn parent_of(path: &str) -> &str {
    path.rfind('/').map_or("", |i| &path[..i])
}

/// Every violated layout invariant, described.
pub fn layout_violations(plan: &CityPlan) -> Vec<String> {
    let mut out = Vec::new();
    let blocks: BTreeMap<&str, &Block> = plan.blocks.iter().map(|b| (b.path.as_str(), b)).collect();
    for b in &plan.blocks {
        if b.elevation != b.depth as f64 * PLINTH_HEIGHT {
            out.push(format!("elevation of {}", b.path));
        }
        if !(b.rect.w > 0.0 && b.rect.h > 0.0) {
            out.push(format!("degenerate block {}", b.path));
        }
        if !b.path.is_empty()
            && !contains(
                &blocks[parent_of(&b.path)].rect.inset(BLOCK_PADDING),
                &b.rect,
            )
        {
            out.push(format!("block {} escapes parent padding", b.path));
        }
    }
    for (i, a) in plan.blocks.iter().enumerate() {
        for b in &plan.blocks[i + 1..] {
            if !a.path.is_empty()
                && !b.path.is_empty()
                && parent_of(&a.path) == parent_of(&b.path)
                && interiors_overlap(&a.rect, &b.rect)
            {
                out.push(format!("sibling blocks {} / {} overlap", a.path, b.path));
            }
        }
    }
    for s in &plan.sites {
        let folder = blocks[parent_of(&s.path)];
        if !contains(&folder.rect.inset(BLOCK_PADDING), &s.rect) {
            out.push(format!("building {} escapes block padding", s.path));
        }
        if s.base != folder.elevation {
            out.push(format!("base of {}", s.path));
        }
        for b in &plan.blocks {
            if !b.path.is_empty()
                && parent_of(&b.path) == folder.path
                && interiors_overlap(&b.rect, &s.rect)
            {
                out.push(format!("building {} overlaps block {}", s.path, b.path));
            }
        }
    }
    for (i, a) in plan.sites.iter().enumerate() {
        for b in &plan.sites[i + 1..] {
            if interiors_overlap(&a.rect, &b.rect) {
                out.push(format!("buildings {} / {} overlap", a.path, b.path));
            }
        }
    }
    out
}

// ---- scene documents ----

/// The geometry-only prefix of every block and building line.
pub fn geometry_lines(doc: &str) -> Vec<&str> {
    doc.lines()
        .filter(|l| l.starts_with("{\"path\""))
        .map(|l| l.find(",\"height\"").map_or(l, |i| &l[..i]))
        .collect()
}

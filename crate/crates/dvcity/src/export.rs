//! Tab-separated text export of the metrics behind a scene.

use std::collections::BTreeMap;
use std::fmt::Write;

use dvcity_core::{Badness, FileMetrics, FolderMetrics};

pub use dvcity_core::{file_detail, FileDetail};

/// Badness rounded half-up to four decimals, from the exact ratio.
pub fn fixed4(badness: Option<Badness>) -> String {
    match badness {
        None => "NA".into(),
        Some(b) => {
            let (bad, total) = (b.bad() as u128, b.total() as u128);
            let scaled = (bad * 20_000 + total) / (2 * total);
            format!("{}.{:04}", scaled / 10_000, scaled % 10_000)
        }
    }
}

/// Root folder label in text exports.
pub const ROOT_LABEL: &str = "/";

/// One header line, then every folder and every file (each group sorted by
/// path), tab-separated and newline-terminated.
pub fn export_table(
    file_metrics: &BTreeMap<String, FileMetrics>,
    folder_metrics: &BTreeMap<String, FolderMetrics>,
) -> String {
    let mut out = String::from("path\tkind\tcommits\tbad_commits\tbadness\n");
    for m in folder_metrics.values() {
        let path = if m.path.is_empty() {
            ROOT_LABEL
        } else {
            m.path.as_str()
        };
        let _ = writeln!(
            out,
            "{path}\tfolder\t{}\t{}\t{}",
            m.commit_count,
            m.bad_commit_count,
            fixed4(m.badness())
        );
    }
    for m in file_metrics.values() {
        let _ = writeln!(
            out,
            "{}\tfile\t{}\t{}\t{}",
            m.path,
            m.commit_count,
            m.bad_commit_count,
            fixed4(m.badness())
        );
    }
    out
}

use std::collections::BTreeSet;
use std::io::{self, BufRead};

/// One commit id per line; blank lines and `#` comments are skipped and
/// duplicates merge.
pub fn parse_bad_commits<R: BufRead>(reader: R) -> io::Result<BTreeSet<String>> {
    let mut ids = BTreeSet::new();
    for line in reader.lines() {
        let line = line?;
        let id = line.trim();
        if id.is_empty() || id.starts_with('#') {
            continue;
        }
        ids.insert(id.to_string());
    }
    Ok(ids)
}

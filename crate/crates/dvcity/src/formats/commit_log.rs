use std::io::{self, BufRead, Write};

use dvcity_core::CommitSet;
use serde::{Deserialize, Serialize};

use super::{ParseError, ParseErrorKind};
use crate::timefmt::{format_timestamp, parse_timestamp};

#[derive(Deserialize)]
struct Record {
    id: String,
    ts: String,
    #[serde(default)]
    author: String,
    #[serde(default)]
    msg: String,
    files: Vec<String>,
}

#[derive(Serialize)]
struct RecordOut<'a> {
    id: &'a str,
    ts: String,
    author: &'a str,
    msg: &'a str,
    files: &'a [String],
}

/// Reads the JSON Lines commit log. Blank lines are skipped; unknown keys
/// are ignored.
pub fn parse_commit_log<R: BufRead>(reader: R) -> Result<Vec<CommitSet>, ParseError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| ParseError::new(line_no, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(&line)
            .map_err(|e| ParseError::new(line_no, ParseErrorKind::Malformed(e.to_string())))?;
        let ts = parse_timestamp(&rec.ts)
            .ok_or_else(|| ParseError::new(line_no, ParseErrorKind::Timestamp(rec.ts.clone())))?;
        let commit = CommitSet::new(rec.id, ts, rec.author, rec.msg, rec.files)
            .map_err(|e| ParseError::new(line_no, e))?;
        out.push(commit);
    }
    Ok(out)
}

/// Writes commits in the format [`parse_commit_log`] reads, one per line.
pub fn write_commit_log<'a, W: Write>(
    mut writer: W,
    commits: impl IntoIterator<Item = &'a CommitSet>,
) -> io::Result<()> {
    for c in commits {
        let rec = RecordOut {
            id: c.id(),
            ts: format_timestamp(c.timestamp()),
            author: c.author(),
            msg: c.message(),
            files: c.files(),
        };
        serde_json::to_writer(&mut writer, &rec)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}
